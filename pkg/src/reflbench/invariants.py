"""Invariant theory of the matrix groups: Molien series, Reynolds averaging,
graded invariant spaces, fundamental invariants, and the catalogued printed
polynomials (the 2x2 models' basic invariants and the rank-2 order-48 group's
alpha/beta pair used by the model-free discriminant checks).

Molien degrees are extracted by expanding (1/|G|) * sum 1/det(1 - t g) far
enough to peel off factors 1/(1 - t^d), smallest d first; the truncation
order #reflections + dim + 2 always suffices since sum(d_i) = #reflections + dim.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from . import cyclo, linalg, matgroup
from .cyclo import CycNum
from .errors import BudgetExceededError
from .matgroup import RGroup, RMatrix
from .mpoly import MPoly, jacobian, proportional

MAX_MOLIEN_DIM = 4
DEFAULT_MONOMIAL_BUDGET = 5000


class MolienError(RuntimeError):
    """The Molien series did not factor as a product of 1/(1 - t^d_i)."""


# ---------------------------------------------------------------------------
# group action on polynomials


def act_matrix(p: MPoly, m: RMatrix) -> MPoly:
    """(p o m)(z) = p(m z): substitute z_i -> sum_j m[i][j] z_j."""
    subs = [MPoly.linear_form(row) for row in m.rows]
    return p.compose(subs)


def reynolds(group: RGroup, p: MPoly) -> MPoly:
    """(1/|G|) sum over g of p o g; the exact projector onto invariants."""
    total = MPoly.zero(p.nvars)
    for g in group.elements:
        total = total + act_matrix(p, g)
    return total.scale(Fraction(1, group.order()))


def is_invariant(group: RGroup, p: MPoly) -> bool:
    return all(act_matrix(p, g) == p for g in group.generators)


# ---------------------------------------------------------------------------
# Molien series


def _det_one_minus_tg(m: RMatrix) -> list[CycNum]:
    """Coefficients of det(1 - t*g), degree <= dim, via Leibniz expansion."""
    from itertools import permutations

    dim = m.dim
    coeffs = [cyclo.ZERO] * (dim + 1)

    def sign(perm):
        s = 1
        seen = [False] * dim
        for i in range(dim):
            if seen[i]:
                continue
            ln = 0
            j = i
            while not seen[j]:
                seen[j] = True
                j = perm[j]
                ln += 1
            if ln % 2 == 0:
                s = -s
        return s

    for perm in permutations(range(dim)):
        sgn = sign(perm)
        # product over i of (delta - t*g)[i][perm[i]], each a linear poly in t
        prod = [cyclo.ONE if sgn > 0 else -cyclo.ONE]
        for i in range(dim):
            const = cyclo.ONE if perm[i] == i else cyclo.ZERO
            lin = -m.rows[i][perm[i]]
            if not const and not lin:
                prod = None
                break
            nxt = [cyclo.ZERO] * (len(prod) + 1)
            for k, c in enumerate(prod):
                if c:
                    if const:
                        nxt[k] = nxt[k] + c * const
                    if lin:
                        nxt[k + 1] = nxt[k + 1] + c * lin
            prod = nxt
        if prod:
            for k, c in enumerate(prod):
                coeffs[k] = coeffs[k] + c
    return coeffs


def molien_series(group: RGroup, nterms: int) -> list[Fraction]:
    """Power-series coefficients of the Molien series, as exact rationals."""
    total = [cyclo.ZERO] * nterms
    for g in group.elements:
        den = _det_one_minus_tg(g)
        inv = [cyclo.ZERO] * nterms
        inv[0] = cyclo.ONE
        for k in range(1, nterms):
            acc = cyclo.ZERO
            for j in range(1, min(k, len(den) - 1) + 1):
                if den[j]:
                    acc = acc + den[j] * inv[k - j]
            inv[k] = -acc
        for k in range(nterms):
            total[k] = total[k] + inv[k]
    out = []
    scale = Fraction(1, group.order())
    for c in total:
        if not c.is_rational():
            raise MolienError(f"non-rational Molien coefficient {c!r}")
        out.append(c.as_fraction() * scale)
    return out


def molien_degrees(group: RGroup) -> list[int]:
    """Degrees {d_i} of basic invariants, from factoring the Molien series.

    Cross-checks product(d_i) == |G| and raises MolienError on any failure.
    """
    dim = group.dim
    if dim > MAX_MOLIEN_DIM:
        raise BudgetExceededError(f"Molien extraction limited to dim <= {MAX_MOLIEN_DIM}")
    nrefl = sum(1 for m in group.elements if matgroup._hyperplane_form(m) is not None and not m.is_identity())
    nterms = nrefl + dim + 2
    series = molien_series(group, nterms)
    degrees: list[int] = []
    for _ in range(dim):
        d = next((k for k in range(1, nterms) if series[k] > 0), None)
        if d is None:
            raise MolienError("ran out of positive coefficients while factoring")
        degrees.append(d)
        # multiply by (1 - t^d)
        nxt = list(series)
        for k in range(d, nterms):
            nxt[k] = series[k] - series[k - d]
        series = nxt
        if series[0] != 1 or any(c < 0 for c in series):
            raise MolienError("series is not a product of 1/(1 - t^d_i)")
    if any(series[k] != 0 for k in range(1, nterms)):
        raise MolienError("leftover terms after removing dim factors")
    prod = 1
    for d in degrees:
        prod *= d
    if prod != group.order():
        raise MolienError(f"degree product {prod} != group order {group.order()}")
    return sorted(degrees)


# ---------------------------------------------------------------------------
# graded invariant spaces and fundamental invariants


def _monomials(nvars: int, degree: int) -> list[tuple[int, ...]]:
    if nvars == 1:
        return [(degree,)]
    out = []
    for e in range(degree, -1, -1):
        for rest in _monomials(nvars - 1, degree - e):
            out.append((e,) + rest)
    return out


def invariant_space(
    group: RGroup, degree: int, budget: int = DEFAULT_MONOMIAL_BUDGET
) -> list[MPoly]:
    """Basis of the degree-d invariants: Reynolds images + exact rank reduction."""
    nvars = group.dim
    monos = _monomials(nvars, degree)
    if len(monos) > budget:
        raise BudgetExceededError(f"{len(monos)} monomials exceed budget {budget}")
    images = []
    for exps in monos:
        r = reynolds(group, MPoly(nvars, {exps: 1}))
        if not r.is_zero():
            images.append(r)
    if not images:
        return []
    rows = [[p.terms.get(e, cyclo.ZERO) for e in monos] for p in images]
    reduced, _ = linalg.rref(rows)
    basis = []
    for row in reduced:
        p = MPoly(nvars, {e: c for e, c in zip(monos, row) if c})
        basis.append(p.monic())
    return basis


@dataclass(frozen=True)
class InvariantBasis:
    label: str
    degrees: tuple[int, ...]
    generators: tuple[MPoly, ...]


def fundamental_invariants(group: RGroup) -> InvariantBasis:
    """A system of basic invariants matching the Molien degrees.

    Candidates at each Molien degree are chosen outside the span of products
    of lower-degree picks; the Jacobian is verified nonzero at the end.
    Leading coefficients are normalized to 1 (graded-lex), so comparisons with
    any printed normalization go through `proportional`.
    """
    degrees = molien_degrees(group)
    nvars = group.dim
    chosen: list[MPoly] = []
    for d in sorted(set(degrees)):
        count = degrees.count(d)
        space = invariant_space(group, d)
        # span of degree-d products of already chosen invariants
        products = _algebra_slice(chosen, d, nvars)
        monos = _monomials(nvars, d)
        oldrows = [[p.terms.get(e, cyclo.ZERO) for e in monos] for p in products]
        picked = 0
        for cand in space:
            if picked == count:
                break
            row = [cand.terms.get(e, cyclo.ZERO) for e in monos]
            if linalg.rank(oldrows + [row]) > linalg.rank(oldrows):
                chosen.append(cand)
                oldrows.append(row)
                picked += 1
        if picked != count:
            raise MolienError(f"could not find {count} new invariants in degree {d}")
    jac = jacobian(chosen)
    if jac.is_zero():
        raise MolienError("chosen invariants have vanishing Jacobian")
    return InvariantBasis(
        label=group.label, degrees=tuple(degrees), generators=tuple(chosen)
    )


def _algebra_slice(gens: list[MPoly], degree: int, nvars: int) -> list[MPoly]:
    """All products of gens of total degree exactly `degree`."""
    out: list[MPoly] = []

    def walk(i: int, current: MPoly, deg: int):
        if deg == degree:
            out.append(current)
            return
        if i == len(gens) or deg > degree:
            return
        gd = gens[i].total_degree()
        k = 0
        power = current
        while deg + k * gd <= degree:
            if k > 0:
                power = power * gens[i]
            walk(i + 1, power, deg + k * gd)
            k += 1

    walk(0, MPoly.constant(nvars, 1), 0)
    return [p for p in out if p.total_degree() == degree]


# ---------------------------------------------------------------------------
# catalogued printed polynomials


def catalog_invariant_pair(name: str) -> tuple[MPoly, MPoly]:
    """The printed basic-invariant pairs for the catalogued 2x2 models."""
    x1 = MPoly.variable(2, 0)
    x2 = MPoly.variable(2, 1)
    half = Fraction(1, 2)
    if name == "G4":
        g1 = x1**4 - x1 * x2**3
        g2 = x1**6 + (x1**3 * x2**3).scale(Fraction(5, 2)) - (x2**6).scale(Fraction(1, 8))
        return g1, g2
    if name == "S3_paper":
        f1 = x1**2 - x1 * x2 + x2**2
        f2 = (
            x1**3
            - (x1**2 * x2).scale(Fraction(3, 2))
            - (x1 * x2**2).scale(Fraction(3, 2))
            + x2**3
        )
        return f1, f2
    if name == "G12":
        return g12_alpha_beta()
    raise KeyError(f"no catalogued invariant pair for {name!r}")


def g12_alpha_beta() -> tuple[MPoly, MPoly]:
    """Exact degree-6/degree-8 basic invariants of the rank-2 order-48 group
    with 12 order-2 reflections, in the coordinates where two orthogonal
    mirrors are the axes:

        alpha = (x1^2 - 2 x2^2) (x1^4 + 12 x1^2 x2^2 + 4 x2^4)
        beta  = (x1^2 - 4 x1 x2 - 2 x2^2)(x1^2 + 4 x1 x2 - 2 x2^2)
                (3 x1^4 + 4 x1^2 x2^2 + 12 x2^4)

    With this normalization the discriminantal relation holds on the nose:
    beta^3 - 27 alpha^4 = -32 * (product of the 12 mirror forms)^2, so the
    difference has an exact cyclotomic square root of degree 12.
    """
    x1 = MPoly.variable(2, 0)
    x2 = MPoly.variable(2, 1)
    alpha = (x1**2 - (x2**2).scale(2)) * (
        x1**4 + (x1**2 * x2**2).scale(12) + (x2**4).scale(4)
    )
    beta = (
        (x1**2 - (x1 * x2).scale(4) - (x2**2).scale(2))
        * (x1**2 + (x1 * x2).scale(4) - (x2**2).scale(2))
        * ((x1**4).scale(3) + (x1**2 * x2**2).scale(4) + (x2**4).scale(12))
    )
    return alpha, beta
