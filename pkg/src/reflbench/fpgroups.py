"""Words, finitely presented groups, coset enumeration and the presentation catalog.

Words are freely reduced tuples of (generator name, nonzero exponent).  The
parser accepts juxtaposed generator names (longest match, so "stus" works
over {s,t,u} and "s1p" wins over "s1"), explicit exponents "s1^-2",
parenthesized subwords "(s1 s2 s3)^4", commutator sugar "[u,v]" for
u v u^-1 v^-1, and uppercase names as inverses ("T" = t^-1).

Coset enumeration is HLT-style (scan and fill, relators in catalog order,
generators in declaration order) with standard coincidence processing, so
coset numbering is deterministic.  Hitting the coset budget is a first-class
outcome recorded in the table's status, not an exception.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .errors import BudgetExceededError, InputError

DEFAULT_COSET_BUDGET = 2_000_000

# ---------------------------------------------------------------------------
# words


Word = tuple[tuple[str, int], ...]


def free_reduce(letters) -> Word:
    out: list[list] = []
    for sym, exp in letters:
        if exp == 0:
            continue
        if out and out[-1][0] == sym:
            out[-1][1] += exp
            if out[-1][1] == 0:
                out.pop()
        else:
            out.append([sym, exp])
    return tuple((s, e) for s, e in out)


def word_inverse(w: Word) -> Word:
    return tuple((s, -e) for s, e in reversed(w))


def word_mul(*ws: Word) -> Word:
    letters: list[tuple[str, int]] = []
    for w in ws:
        letters.extend(w)
    return free_reduce(letters)


def word_pow(w: Word, k: int) -> Word:
    if k < 0:
        return word_pow(word_inverse(w), -k)
    return word_mul(*([w] * k)) if k else ()


def single(sym: str, exp: int = 1) -> Word:
    return ((sym, exp),) if exp else ()


def word_letters(w: Word):
    """Yield (symbol, +-1) letter by letter."""
    for sym, exp in w:
        step = 1 if exp > 0 else -1
        for _ in range(abs(exp)):
            yield sym, step


def word_length(w: Word) -> int:
    return sum(abs(e) for _, e in w)


def exponent_sum(w: Word, per_generator: bool = False):
    """Abelianization image: total exponent sum, or a dict per generator."""
    if not per_generator:
        return sum(e for _, e in w)
    out: dict[str, int] = {}
    for s, e in w:
        out[s] = out.get(s, 0) + e
    return out


def is_in_derived_f2(w: Word) -> bool:
    """Exact derived-subgroup test for a word over a two-letter alphabet.

    In a free group, a word lies in the derived subgroup iff its image in the
    (free abelian) abelianization vanishes, i.e. both exponent sums are zero.
    """
    sums = exponent_sum(w, per_generator=True)
    if not set(sums) <= {"x", "y"}:
        raise InputError(f"expected a word over x,y, got letters {sorted(sums)}")
    return all(v == 0 for v in sums.values())


def substitute(w: Word, images: dict[str, Word]) -> Word:
    parts = []
    for sym, exp in w:
        if sym not in images:
            raise InputError(f"no image given for generator {sym!r}")
        parts.append(word_pow(images[sym], exp))
    return word_mul(*parts)


def word_str(w: Word) -> str:
    if not w:
        return "1"
    bits = []
    for s, e in w:
        bits.append(s if e == 1 else f"{s}^{e}")
    return " ".join(bits)


# ---------------------------------------------------------------------------
# parsing


def parse_word(text: str, generators) -> Word:
    """Parse a word over the given generator alphabet (longest-match)."""
    gens = list(generators)
    names = sorted(gens, key=len, reverse=True)
    upper = {g.upper(): g for g in gens if g.upper() != g and g.upper() not in gens}

    pos = 0
    n = len(text)

    def skip_ws():
        nonlocal pos
        while pos < n and text[pos] in " \t":
            pos += 1

    def parse_int() -> int:
        nonlocal pos
        start = pos
        if pos < n and text[pos] in "+-":
            pos += 1
        while pos < n and text[pos].isdigit():
            pos += 1
        if pos == start or (pos == start + 1 and not text[start].isdigit()):
            raise InputError(f"malformed exponent at position {start} in {text!r}")
        return int(text[start:pos])

    def parse_sequence(stop: str) -> Word:
        nonlocal pos
        items: list[Word] = []
        while True:
            skip_ws()
            if pos >= n or text[pos] in stop:
                return word_mul(*items)
            items.append(parse_item())

    def parse_item() -> Word:
        nonlocal pos
        skip_ws()
        if pos >= n:
            raise InputError(f"unexpected end of word in {text!r}")
        ch = text[pos]
        if ch == "(":
            pos += 1
            inner = parse_sequence(")")
            if pos >= n or text[pos] != ")":
                raise InputError(f"unbalanced parenthesis in {text!r}")
            pos += 1
            atom = inner
        elif ch == "[":
            pos += 1
            u = parse_sequence(",")
            if pos >= n or text[pos] != ",":
                raise InputError(f"commutator needs a comma in {text!r}")
            pos += 1
            v = parse_sequence("]")
            if pos >= n or text[pos] != "]":
                raise InputError(f"unbalanced bracket in {text!r}")
            pos += 1
            atom = word_mul(u, v, word_inverse(u), word_inverse(v))
        else:
            atom = None
            for name in names:
                if text.startswith(name, pos):
                    pos += len(name)
                    atom = single(name)
                    break
            if atom is None:
                for uname in sorted(upper, key=len, reverse=True):
                    if text.startswith(uname, pos):
                        pos += len(uname)
                        atom = single(upper[uname], -1)
                        break
            if atom is None:
                raise InputError(f"unknown symbol at position {pos} in {text!r}")
        skip_ws()
        if pos < n and text[pos] == "^":
            pos += 1
            skip_ws()
            k = parse_int()
            atom = word_pow(atom, k)
        return atom

    result = parse_sequence("")
    skip_ws()
    if pos != n:
        raise InputError(f"trailing input at position {pos} in {text!r}")
    return result


# ---------------------------------------------------------------------------
# presentations


@dataclass(frozen=True)
class Presentation:
    label: str
    generators: tuple[str, ...]
    relators: tuple[Word, ...]

    def __post_init__(self):
        declared = set(self.generators)
        for r in self.relators:
            for sym, _ in r:
                if sym not in declared:
                    raise InputError(f"relator uses undeclared generator {sym!r}")

    def parse(self, text: str) -> Word:
        return parse_word(text, self.generators)


def relation(u: Word, v: Word) -> Word:
    """The relator u v^-1 encoding the relation u = v."""
    return word_mul(u, word_inverse(v))


def _braid_relators(names: list[str]) -> list[Word]:
    rel = []
    for i in range(len(names) - 1):
        a, b = single(names[i]), single(names[i + 1])
        rel.append(relation(word_mul(a, b, a), word_mul(b, a, b)))
    for i in range(len(names)):
        for j in range(i + 2, len(names)):
            a, b = single(names[i]), single(names[j])
            rel.append(relation(word_mul(a, b), word_mul(b, a)))
    return rel


def braid_presentation(n: int) -> Presentation:
    """Br_n with generators s1..s(n-1)."""
    if n < 2:
        raise InputError("braid group needs n >= 2 strands")
    names = [f"s{i}" for i in range(1, n)]
    return Presentation(f"Br{n}", tuple(names), tuple(_braid_relators(names)))


def artin_b_presentation(n: int) -> Presentation:
    """Art(B_n) with generators t, s2..sn: tst s2-chain plus far commutations."""
    if n < 2:
        raise InputError("type B needs rank >= 2")
    names = ["t"] + [f"s{i}" for i in range(2, n + 1)]
    t = single("t")
    s2 = single("s2")
    rel = [relation(word_mul(t, s2, t, s2), word_mul(s2, t, s2, t))]
    rel += _braid_relators(names[1:])
    for i in range(3, n + 1):
        si = single(f"s{i}")
        rel.append(relation(word_mul(t, si), word_mul(si, t)))
    return Presentation(f"ArtB{n}", tuple(names), tuple(rel))


def artin_d_presentation(n: int) -> Presentation:
    """Art(D_n) with generators s1, s1p, s2..s(n-1): two braid chains + s1 s1p = s1p s1."""
    if n < 2:
        raise InputError("type D needs rank >= 2")
    names = ["s1", "s1p"] + [f"s{i}" for i in range(2, n)]
    rel = [relation(word_mul(single("s1"), single("s1p")), word_mul(single("s1p"), single("s1")))]
    chain1 = ["s1"] + [f"s{i}" for i in range(2, n)]
    chain2 = ["s1p"] + [f"s{i}" for i in range(2, n)]
    rel += _braid_relators(chain1)
    for r in _braid_relators(chain2):
        if r not in rel:
            rel.append(r)
    # s1 and s1p both commute with s_j for j >= 3; included via the two chains
    return Presentation(f"ArtD{n}", tuple(names), tuple(rel))


def artin_i2_presentation(m: int) -> Presentation:
    """Art(I2(m)) = <a,b | abab... = baba...> with m factors each."""
    if m < 3:
        raise InputError("dihedral Artin type needs m >= 3")
    u = alternating_word("a", "b", m)
    v = alternating_word("b", "a", m)
    return Presentation(f"ArtI2({m})", ("a", "b"), (relation(u, v),))


def alternating_word(first: str, second: str, length: int) -> Word:
    letters = []
    for i in range(length):
        letters.append((first if i % 2 == 0 else second, 1))
    return free_reduce(letters)


def g12_braid_presentation() -> Presentation:
    """<s,t,u | stus = tust = ustu>."""
    s, t, u = single("s"), single("t"), single("u")
    stus = word_mul(s, t, u, s)
    tust = word_mul(t, u, s, t)
    ustu = word_mul(u, s, t, u)
    return Presentation(
        "B(G12)", ("s", "t", "u"), (relation(stus, tust), relation(tust, ustu))
    )


def g13_braid_presentation() -> Presentation:
    """<g1,g2,g3 | g1g2g3g1 = g3g1g2g3, g3g1g2g3g2 = g2g3g1g2g3>."""
    g1, g2, g3 = single("g1"), single("g2"), single("g3")
    r1 = relation(word_mul(g1, g2, g3, g1), word_mul(g3, g1, g2, g3))
    r2 = relation(word_mul(g3, g1, g2, g3, g2), word_mul(g2, g3, g1, g2, g3))
    return Presentation("B(G13)", ("g1", "g2", "g3"), (r1, r2))


def corran_picantin_presentation(
    e: int, n: int, include_far_commutations: bool = True
) -> Presentation:
    """The G(e,e,n) braid presentation: generators t0..t(e-1), s3..sn.

    Relations: t_(i+1) t_i all equal, s3 t_i s3 = t_i s3 t_i, braid relations
    among s3..sn, and (flagged: `include_far_commutations`) t_i s_j = s_j t_i
    for j >= 4.  The flag exists because the source presentation requires the
    far commutations while terse statements of it omit them; both variants are
    exercised by the verification suite.
    """
    if e < 2 or n < 2:
        raise InputError("Corran-Picantin needs e >= 2, n >= 2")
    tnames = [f"t{i}" for i in range(e)]
    snames = [f"s{i}" for i in range(3, n + 1)]
    rel: list[Word] = []
    base = word_mul(single("t1"), single("t0"))
    for i in range(1, e):
        u = word_mul(single(tnames[(i + 1) % e]), single(tnames[i]))
        rel.append(relation(u, base))
    if snames:
        s3 = single("s3")
        for tn in tnames:
            ti = single(tn)
            rel.append(relation(word_mul(s3, ti, s3), word_mul(ti, s3, ti)))
    rel += _braid_relators(snames)
    if include_far_commutations:
        for j in range(4, n + 1):
            sj = single(f"s{j}")
            for tn in tnames:
                ti = single(tn)
                rel.append(relation(word_mul(ti, sj), word_mul(sj, ti)))
    flag = "" if include_far_commutations else ",nofar"
    return Presentation(
        f"CP({e},{e},{n}){flag}", tuple(tnames + snames), tuple(rel)
    )


# ---------------------------------------------------------------------------
# catalogued maps


@dataclass(frozen=True)
class GroupHom:
    label: str
    source: Presentation
    images: dict[str, Word]

    def apply(self, w: Word) -> Word:
        return substitute(w, self.images)

    def compose_after(self, other: "GroupHom") -> dict[str, Word]:
        """Images of self o other (apply other first) on other's source generators."""
        return {g: self.apply(w) for g, w in other.images.items()}


def g12_conjugation() -> GroupHom:
    """s -> t^-1, t -> s^-1, u -> u^-1 on <s,t,u | stus = tust = ustu>."""
    p = g12_braid_presentation()
    return GroupHom(
        "G12-conjugation",
        p,
        {"s": single("t", -1), "t": single("s", -1), "u": single("u", -1)},
    )


def cp_conjugation(e: int, n: int, include_far_commutations: bool = True) -> GroupHom:
    """s_k -> s_k^-1, t_i -> t_(-i)^-1 on the G(e,e,n) presentation."""
    p = corran_picantin_presentation(e, n, include_far_commutations)
    images: dict[str, Word] = {}
    for i in range(e):
        images[f"t{i}"] = single(f"t{(-i) % e}", -1)
    for j in range(3, n + 1):
        images[f"s{j}"] = single(f"s{j}", -1)
    return GroupHom(f"CP({e},{e},{n})-conjugation", p, images)


def g13_conjugation() -> GroupHom:
    """g1 -> g1^-1, g2 -> g1 g2^-1 g1^-1, g3 -> g1 g2 g3 g2^-1 g1^-1."""
    p = g13_braid_presentation()
    g1, g2, g3 = single("g1"), single("g2"), single("g3")
    return GroupHom(
        "G13-conjugation",
        p,
        {
            "g1": single("g1", -1),
            "g2": word_mul(g1, single("g2", -1), word_inverse(g1)),
            "g3": word_mul(g1, g2, g3, word_inverse(g2), word_inverse(g1)),
        },
    )


def i26_to_g13_iso() -> GroupHom:
    """a -> g3 g1 g2 g3, b -> g3^-1 from Art(I2(6)) to the G13 braid group."""
    p = artin_i2_presentation(6)
    return GroupHom(
        "I2(6)->B(G13)",
        p,
        {
            "a": word_mul(single("g3"), single("g1"), single("g2"), single("g3")),
            "b": single("g3", -1),
        },
    )


def i26_transported_conjugation() -> GroupHom:
    """a -> (bab) a^-1 (bab)^-1, b -> (ba) b^-1 (ba)^-1 on Art(I2(6))."""
    p = artin_i2_presentation(6)
    a, b = single("a"), single("b")
    bab = word_mul(b, a, b)
    ba = word_mul(b, a)
    return GroupHom(
        "I2(6)-transported-conjugation",
        p,
        {
            "a": word_mul(bab, single("a", -1), word_inverse(bab)),
            "b": word_mul(ba, single("b", -1), word_inverse(ba)),
        },
    )


def i26_mirror_conjugated_by_bab() -> GroupHom:
    """Ad(bab) o mirror: a -> (bab) a^-1 (bab)^-1, b -> (bab) b^-1 (bab)^-1."""
    p = artin_i2_presentation(6)
    a, b = single("a"), single("b")
    bab = word_mul(b, a, b)
    return GroupHom(
        "I2(6)-Ad(bab)-mirror",
        p,
        {
            "a": word_mul(bab, single("a", -1), word_inverse(bab)),
            "b": word_mul(bab, single("b", -1), word_inverse(bab)),
        },
    )


def artin_b_embedding(n: int) -> GroupHom:
    """Art(B_n) -> Br_(n+1): t -> s1^2, s_i -> s_i."""
    p = artin_b_presentation(n)
    images: dict[str, Word] = {"t": single("s1", 2)}
    for i in range(2, n + 1):
        images[f"s{i}"] = single(f"s{i}")
    return GroupHom(f"ArtB{n}->Br{n+1}", p, images)


def artin_b_cyclic_exponent(w: Word, e: int) -> int:
    """Image of an Art(B_n) word under t -> 1, s_i -> 0 into Z/e."""
    return exponent_sum(w, per_generator=True).get("t", 0) % e


# ---------------------------------------------------------------------------
# Todd-Coxeter (HLT with standard coincidence processing)


@dataclass
class CosetTable:
    presentation: Presentation
    subgroup: tuple[Word, ...]
    table: list[list[int | None]]  # live cosets only after completion
    status: str  # "complete" | "budget_exceeded"
    ncols: int

    def index(self) -> int:
        return len(self.table)

    def column(self, sym: str, step: int) -> int:
        g = self.presentation.generators.index(sym)
        return 2 * g + (0 if step > 0 else 1)

    def trace(self, coset: int, w: Word) -> int:
        for sym, step in word_letters(w):
            nxt = self.table[coset][self.column(sym, step)]
            if nxt is None:
                raise RuntimeError("tracing through an incomplete table")
            coset = nxt
        return coset

    def generator_permutations(self) -> dict[str, tuple[int, ...]]:
        out = {}
        for g, name in enumerate(self.presentation.generators):
            out[name] = tuple(self.table[c][2 * g] for c in range(len(self.table)))
        return out


def todd_coxeter(
    pres: Presentation,
    subgroup_words: list[Word],
    limit: int = DEFAULT_COSET_BUDGET,
) -> CosetTable:
    """HLT coset enumeration of the subgroup generated by subgroup_words.

    Deterministic: subgroup generators then relators are scanned in catalog
    order, rows are filled in generator order, cosets are numbered by
    definition order and compacted at the end.  On budget exhaustion the
    status flag is "budget_exceeded" and the table contents are unspecified.
    """
    ngens = len(pres.generators)
    ncols = 2 * ngens
    col_of = {name: 2 * g for g, name in enumerate(pres.generators)}

    def letters_to_cols(w: Word) -> list[int]:
        return [
            col_of[sym] + (0 if step > 0 else 1) for sym, step in word_letters(w)
        ]

    rel_cols = [letters_to_cols(r) for r in pres.relators]
    sub_cols = [letters_to_cols(w) for w in subgroup_words]

    table: list[list[int | None]] = [[None] * ncols]
    p = [0]  # union-find over cosets

    def rep(k: int) -> int:
        root = k
        while p[root] != root:
            root = p[root]
        while p[k] != root:
            p[k], k = root, p[k]
        return root

    exceeded = False

    def define(alpha: int, col: int) -> int:
        nonlocal exceeded
        if len(table) >= limit:
            exceeded = True
            raise _Budget()
        beta = len(table)
        table.append([None] * ncols)
        p.append(beta)
        table[alpha][col] = beta
        table[beta][col ^ 1] = alpha
        return beta

    class _Budget(Exception):
        pass

    queue: list[int] = []

    def merge(k: int, lam: int):
        k, lam = rep(k), rep(lam)
        if k != lam:
            mu, nu = min(k, lam), max(k, lam)
            p[nu] = mu
            queue.append(nu)

    def coincidence(alpha: int, beta: int):
        merge(alpha, beta)
        while queue:
            gamma = queue.pop(0)
            row = table[gamma]
            for col in range(ncols):
                delta = row[col]
                if delta is None:
                    continue
                table[delta][col ^ 1] = None
                mu, nu = rep(gamma), rep(delta)
                ent = table[mu][col]
                if ent is not None:
                    merge(nu, ent)
                else:
                    ent2 = table[nu][col ^ 1]
                    if ent2 is not None:
                        merge(mu, ent2)
                    else:
                        table[mu][col] = nu
                        table[nu][col ^ 1] = mu

    def scan_and_fill(alpha: int, cols: list[int]):
        f, i = alpha, 0
        b, j = alpha, len(cols) - 1
        while True:
            while i <= j and table[f][cols[i]] is not None:
                f = table[f][cols[i]]
                i += 1
            if i > j:
                if f != b:
                    coincidence(f, b)
                return
            while j >= i and table[b][cols[j] ^ 1] is not None:
                b = table[b][cols[j] ^ 1]
                j -= 1
            if j < i:
                coincidence(f, b)
                return
            if j == i:
                table[f][cols[i]] = b
                table[b][cols[i] ^ 1] = f
                return
            define(f, cols[i])

    try:
        for cols in sub_cols:
            if cols:
                scan_and_fill(0, cols)
        alpha = 0
        while alpha < len(table):
            if rep(alpha) != alpha:
                alpha += 1
                continue
            for cols in rel_cols:
                if not cols:
                    continue
                scan_and_fill(alpha, cols)
                if rep(alpha) != alpha:
                    break
            if rep(alpha) == alpha:
                for col in range(ncols):
                    if table[alpha][col] is None:
                        define(alpha, col)
            alpha += 1
    except _Budget:
        return CosetTable(pres, tuple(subgroup_words), [], "budget_exceeded", ncols)

    # compact: renumber live cosets in definition order
    live = [k for k in range(len(table)) if rep(k) == k]
    renum = {k: i for i, k in enumerate(live)}
    compacted = []
    for k in live:
        row = []
        for col in range(ncols):
            entry = table[k][col]
            if entry is None:
                raise RuntimeError("enumeration finished with an undefined entry")
            row.append(renum[rep(entry)])
        compacted.append(row)
    result = CosetTable(pres, tuple(subgroup_words), compacted, "complete", ncols)
    _validate_table(result, rel_cols, sub_cols)
    return result


def _validate_table(t: CosetTable, rel_cols, sub_cols) -> None:
    """Closure check: inverse consistency, every relator fixes every coset,
    every subgroup generator fixes coset 0."""
    n = len(t.table)
    for alpha in range(n):
        for col in range(t.ncols):
            beta = t.table[alpha][col]
            if not (0 <= beta < n) or t.table[beta][col ^ 1] != alpha:
                raise RuntimeError("coset table is not inverse-consistent")
    for cols in rel_cols:
        for alpha in range(n):
            gamma = alpha
            for col in cols:
                gamma = t.table[gamma][col]
            if gamma != alpha:
                raise RuntimeError("a relator does not act trivially on the cosets")
    for cols in sub_cols:
        gamma = 0
        for col in cols:
            gamma = t.table[gamma][col]
        if gamma != 0:
            raise RuntimeError("a subgroup generator moves the subgroup coset")


# ---------------------------------------------------------------------------
# finite permutation quotients


@dataclass
class PermQuotient:
    label: str
    presentation: Presentation
    gen_perms: dict[str, tuple[int, ...]]
    degree: int
    _elements: list[tuple[int, ...]] | None = field(default=None, repr=False)

    def eval_word(self, w: Word) -> tuple[int, ...]:
        perm = tuple(range(self.degree))
        for sym, step in word_letters(w):
            g = self.gen_perms.get(sym)
            if g is None:
                raise InputError(f"word uses {sym!r}, unknown in quotient {self.label}")
            if step < 0:
                inv = [0] * self.degree
                for i, v in enumerate(g):
                    inv[v] = i
                g = tuple(inv)
            perm = tuple(g[x] for x in perm)
        return perm

    def identity(self) -> tuple[int, ...]:
        return tuple(range(self.degree))

    def order(self) -> int:
        return len(self.elements())

    def elements(self) -> list[tuple[int, ...]]:
        if self._elements is None:
            self._elements = _perm_closure(list(self.gen_perms.values()), self.degree)
        return self._elements

    def subgroup_order(self, perms: list[tuple[int, ...]]) -> int:
        return len(_perm_closure(perms, self.degree))


def _perm_closure(gens: list[tuple[int, ...]], degree: int) -> list[tuple[int, ...]]:
    ident = tuple(range(degree))
    elements = [ident]
    seen = {ident}
    i = 0
    while i < len(elements):
        cur = elements[i]
        i += 1
        for g in gens:
            nxt = tuple(g[x] for x in cur)
            if nxt not in seen:
                seen.add(nxt)
                elements.append(nxt)
    return elements


def quotient_from_table(label: str, table: CosetTable) -> PermQuotient:
    if table.status != "complete":
        raise BudgetExceededError(f"cannot build quotient {label}: enumeration incomplete")
    return PermQuotient(
        label=label,
        presentation=table.presentation,
        gen_perms=table.generator_permutations(),
        degree=table.index(),
    )


def coxeter_quotient(n: int, k: int, limit: int = DEFAULT_COSET_BUDGET) -> PermQuotient:
    """Br_n/(s_i^k) as a permutation group on the cosets of the trivial subgroup."""
    pres = braid_presentation(n)
    rel = list(pres.relators)
    for name in pres.generators:
        rel.append(word_pow(single(name), k))
    quot = Presentation(f"Br{n}/s^{k}", pres.generators, tuple(rel))
    return quotient_from_table(quot.label, todd_coxeter(quot, [], limit))


def torsion_quotient(
    pres: Presentation, orders, limit: int = DEFAULT_COSET_BUDGET
) -> PermQuotient:
    """Quotient by gen^order relators (orders: int for all, or per-name dict)."""
    rel = list(pres.relators)
    for name in pres.generators:
        k = orders if isinstance(orders, int) else orders[name]
        rel.append(word_pow(single(name), k))
    quot = Presentation(f"{pres.label}+torsion", pres.generators, tuple(rel))
    return quotient_from_table(quot.label, todd_coxeter(quot, [], limit))


# ---------------------------------------------------------------------------
# homomorphism verification


@dataclass(frozen=True)
class HomVerdict:
    consistent: bool
    exact_proof: bool
    backends: tuple[str, ...]
    falsifier: tuple[str, str] | None  # (backend label, relator) when falsified
    note: str


def verify_hom(hom: GroupHom, backends: list) -> HomVerdict:
    """Check every source relator's image on each backend.

    A backend must provide eval_word(Word) -> element, identity(), a label,
    and an `exact` attribute; finite quotients are evidence, the Garside
    backend is exact (its consistency is a proof of homomorphy).
    """
    labels = []
    exact = False
    for backend in backends:
        labels.append(backend.label)
        for r in hom.source.relators:
            image = hom.apply(r)
            if backend.eval_word(image) != backend.identity():
                return HomVerdict(
                    consistent=False,
                    exact_proof=True,
                    backends=tuple(labels),
                    falsifier=(backend.label, word_str(r)),
                    note="falsified: a relator image is nontrivial (definitive)",
                )
        exact = exact or getattr(backend, "exact", False)
    note = (
        "consistent; exact backend included, so this proves homomorphy"
        if exact
        else "consistent: necessary-condition evidence on finite quotients only"
    )
    return HomVerdict(True, exact, tuple(labels), None, note)


class PermBackend:
    """Adapter giving a PermQuotient the backend interface."""

    exact = False

    def __init__(self, quotient: PermQuotient):
        self.quotient = quotient
        self.label = quotient.label

    def eval_word(self, w: Word):
        return self.quotient.eval_word(w)

    def identity(self):
        return self.quotient.identity()


def hom_bijective_on(hom: GroupHom, quotient: PermQuotient) -> bool:
    """Whether the induced endomorphism of the finite quotient is bijective."""
    images = [quotient.eval_word(w) for w in hom.images.values()]
    return quotient.subgroup_order(images) == quotient.order()


# ---------------------------------------------------------------------------
# Reidemeister-Schreier rewriting


@dataclass
class SchreierData:
    table: CosetTable
    tree_edge: dict[int, tuple[int, int]]  # coset -> (parent coset, column)
    schreier_index: dict[tuple[int, int], int]  # (coset, gen column) -> gen number
    names: list[str]


def schreier_data(table: CosetTable) -> SchreierData:
    """Spanning tree (BFS from coset 0 in column order) + numbered Schreier generators."""
    if table.status != "complete":
        raise BudgetExceededError("Schreier rewriting needs a complete table")
    n = table.index()
    tree_edge: dict[int, tuple[int, int]] = {}
    seen = {0}
    order = [0]
    qi = 0
    while qi < len(order):
        alpha = order[qi]
        qi += 1
        for col in range(table.ncols):
            beta = table.table[alpha][col]
            if beta is not None and beta not in seen:
                seen.add(beta)
                tree_edge[beta] = (alpha, col)
                order.append(beta)
    index: dict[tuple[int, int], int] = {}
    names: list[str] = []
    ngens = table.ncols // 2
    for alpha in range(n):
        for g in range(ngens):
            col = 2 * g
            beta = table.table[alpha][col]
            if beta is None:
                continue
            if tree_edge.get(beta) == (alpha, col):
                continue  # tree edge: trivial Schreier generator
            if alpha in tree_edge and tree_edge[alpha] == (beta, col ^ 1):
                continue  # the reverse of a tree edge
            index[(alpha, col)] = len(names)
            names.append(f"h{len(names) + 1}")
    return SchreierData(table, tree_edge, index, names)


def schreier_rewrite(data: SchreierData, w: Word, start: int = 0):
    """Rewrite w over the Schreier generators; None when w moves coset `start`.

    With start = 0 this is subgroup membership plus the standard rewriting.
    """
    table = data.table
    letters: list[tuple[str, int]] = []
    alpha = start
    for sym, step in word_letters(w):
        col = table.column(sym, step)
        if step > 0:
            key = (alpha, col)
            beta = table.table[alpha][col]
            if key in data.schreier_index:
                letters.append((data.names[data.schreier_index[key]], 1))
            alpha = beta
        else:
            beta = table.table[alpha][col]
            key = (beta, col ^ 1)
            if key in data.schreier_index:
                letters.append((data.names[data.schreier_index[key]], -1))
            alpha = beta
    if alpha != start:
        return None
    return free_reduce(letters)


def schreier_abelianized(data: SchreierData, w: Word, start: int = 0):
    """Exponent vector of the rewritten word over the Schreier generators."""
    rewritten = schreier_rewrite(data, w, start)
    if rewritten is None:
        return None
    vec = [0] * len(data.names)
    for sym, exp in rewritten:
        vec[data.names.index(sym)] += exp
    return vec


def subgroup_relator_matrix(data: SchreierData) -> list[list[int]]:
    """Abelianized Reidemeister relators of the subgroup: one row per
    (coset, relator of the ambient presentation)."""
    rows = []
    for alpha in range(data.table.index()):
        for r in data.table.presentation.relators:
            vec = schreier_abelianized(data, r, start=alpha)
            if vec is None:
                raise RuntimeError("relator does not fix a coset; table inconsistent")
            rows.append(vec)
    return rows


def in_integer_row_span(rows: list[list[int]], vec: list[int]) -> bool:
    """Exact membership of vec in the Z-span of rows (Hermite reduction)."""
    mat = [list(r) for r in rows if any(r)]
    work = list(vec)
    ncols = len(vec)
    col = 0
    while col < ncols and mat:
        nonzero = [r for r in mat if r[col]]
        if not nonzero:
            if work[col] != 0:
                pass  # cannot clear this column from rows
            mat = [r for r in mat if not r[col]]
            col += 1
            continue
        # reduce to a single pivot via gcd steps
        while True:
            nonzero = sorted((r for r in mat if r[col]), key=lambda r: abs(r[col]))
            if len(nonzero) <= 1:
                break
            a, b = nonzero[0], nonzero[1]
            q = b[col] // a[col]
            for i in range(ncols):
                b[i] -= q * a[i]
            mat = [r for r in mat if any(r)]
        pivot_rows = [r for r in mat if r[col]]
        if pivot_rows:
            piv = pivot_rows[0]
            if work[col] % piv[col] == 0:
                q = work[col] // piv[col]
                for i in range(ncols):
                    work[i] -= q * piv[i]
            mat = [r for r in mat if r is not piv and any(r)]
        col += 1
    return all(v == 0 for v in work)


# ---------------------------------------------------------------------------
# JSON


def presentation_to_json(p: Presentation) -> dict:
    return {
        "label": p.label,
        "generators": list(p.generators),
        "relators": [word_str(r) for r in p.relators],
    }


def presentation_from_json(data: dict) -> Presentation:
    try:
        gens = tuple(str(g) for g in data["generators"])
        relators = tuple(parse_word(r, gens) for r in data["relators"])
    except (KeyError, TypeError) as exc:
        raise InputError(f"malformed presentation encoding: {exc}") from exc
    return Presentation(str(data.get("label", "anonymous")), gens, relators)
