"""Reflection arrangements: intersection lattices, supersolvability, discriminants.

Flats of the (central) intersection lattice are identified with the full set
of hyperplane indices containing the flat's subspace; rank = codimension of
the subspace.  The lattice order is reverse inclusion of subspaces, i.e.
inclusion of hyperplane index sets.  Supersolvability is decided by
exhaustive search for a maximal chain of modular flats, with modularity
tested through the rank identity rk(x ^ y) + rk(x v y) = rk(x) + rk(y).

A slower oracle that enumerates *all* maximal chains is provided for
cross-checking on small instances.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from . import cyclo, linalg, matgroup
from .cyclo import CycNum
from .errors import BudgetExceededError, InputError
from .mpoly import MPoly

MAX_DIM = 6
MAX_HYPERPLANES = 60


@dataclass(frozen=True)
class Arrangement:
    dim: int
    hyperplanes: tuple[tuple[CycNum, ...], ...]  # normalized pairwise non-proportional forms
    multiplicities: tuple[int, ...]  # e_H per hyperplane, aligned

    def __post_init__(self):
        if len(self.hyperplanes) != len(self.multiplicities):
            raise InputError("hyperplane/multiplicity lists misaligned")
        if any(m < 2 for m in self.multiplicities):
            raise InputError("multiplicities e_H must be >= 2")


def normalize_form(form) -> tuple[CycNum, ...]:
    form = [c if isinstance(c, CycNum) else cyclo.rational(c) for c in form]
    lead = next((c for c in form if c), None)
    if lead is None:
        raise InputError("zero linear form is not a hyperplane")
    inv = lead.inverse()
    return tuple(inv * c for c in form)


def arrangement_of(group: matgroup.RGroup) -> Arrangement:
    """The reflection arrangement of a matrix group with its e_H multiplicities."""
    hyps = matgroup.hyperplanes(group)
    return Arrangement(
        dim=group.dim,
        hyperplanes=tuple(form for form, _ in hyps),
        multiplicities=tuple(e for _, e in hyps),
    )


# ---------------------------------------------------------------------------
# intersection lattice


@dataclass(frozen=True)
class Flat:
    index: int
    hyperplane_set: frozenset[int]
    rank: int


@dataclass
class FlatLattice:
    arrangement: Arrangement
    flats: list[Flat]  # deterministic order: by (rank, sorted hyperplane set)
    by_set: dict[frozenset[int], Flat] = field(default_factory=dict)
    _closure_cache: dict[frozenset[int], frozenset[int]] = field(default_factory=dict)

    def rank(self) -> int:
        return max(f.rank for f in self.flats)

    def top_flats(self) -> list[Flat]:
        r = self.rank()
        return [f for f in self.flats if f.rank == r]

    def closure(self, idx_set: frozenset[int]) -> Flat:
        """The flat cut out by the given hyperplanes."""
        key = frozenset(idx_set)
        cached = self._closure_cache.get(key)
        if cached is not None:
            return self.by_set[cached]
        if not key:
            result = self.flats[0]
        else:
            forms = self.arrangement.hyperplanes
            reduced, _ = linalg.rref([list(forms[i]) for i in sorted(key)])
            rk = len(reduced)
            members = frozenset(
                j
                for j in range(len(forms))
                if linalg.rank(reduced + [list(forms[j])]) == rk
            )
            result = self.by_set[members]
        self._closure_cache[key] = result.hyperplane_set
        return result

    def meet(self, a: Flat, b: Flat) -> Flat:
        return self.closure(a.hyperplane_set & b.hyperplane_set)

    def join(self, a: Flat, b: Flat) -> Flat:
        return self.closure(a.hyperplane_set | b.hyperplane_set)


def intersection_lattice(arr: Arrangement) -> FlatLattice:
    if arr.dim > MAX_DIM or len(arr.hyperplanes) > MAX_HYPERPLANES:
        raise BudgetExceededError(
            f"lattice budget is dim <= {MAX_DIM} and <= {MAX_HYPERPLANES} hyperplanes"
        )
    forms = arr.hyperplanes

    def close(idx_set: frozenset[int]) -> tuple[frozenset[int], int]:
        if not idx_set:
            return frozenset(), 0
        reduced, _ = linalg.rref([list(forms[i]) for i in sorted(idx_set)])
        rk = len(reduced)
        members = frozenset(
            j for j in range(len(forms)) if linalg.rank(reduced + [list(forms[j])]) == rk
        )
        return members, rk

    found: dict[frozenset[int], int] = {frozenset(): 0}
    frontier = [frozenset()]
    while frontier:
        nxt = []
        for base in frontier:
            for j in range(len(forms)):
                if j in base:
                    continue
                closed, rk = close(base | {j})
                if closed not in found:
                    found[closed] = rk
                    nxt.append(closed)
        frontier = nxt
    ordered = sorted(found, key=lambda s: (found[s], sorted(s)))
    flats = [
        Flat(index=i, hyperplane_set=s, rank=found[s]) for i, s in enumerate(ordered)
    ]
    lat = FlatLattice(arrangement=arr, flats=flats)
    lat.by_set = {f.hyperplane_set: f for f in flats}
    return lat


def is_modular(lat: FlatLattice, f: Flat) -> bool:
    for g in lat.flats:
        if lat.meet(f, g).rank + lat.join(f, g).rank != f.rank + g.rank:
            return False
    return True


def is_supersolvable(arr: Arrangement):
    """Exhaustive search for a maximal chain of modular flats.

    Returns (verdict, witness) where the witness is the chain of hyperplane
    index sets from the bottom flat to the top, or None.
    """
    lat = intersection_lattice(arr)
    top_rank = lat.rank()
    modular = {f.index for f in lat.flats if is_modular(lat, f)}

    def extend(chain: list[Flat]):
        last = chain[-1]
        if last.rank == top_rank:
            return chain
        for f in lat.flats:
            if (
                f.index in modular
                and f.rank == last.rank + 1
                and last.hyperplane_set < f.hyperplane_set
            ):
                got = extend(chain + [f])
                if got:
                    return got
        return None

    bottom = lat.flats[0]
    if bottom.index not in modular:
        return False, None
    chain = extend([bottom])
    if chain is None:
        return False, None
    return True, [sorted(f.hyperplane_set) for f in chain]


def is_supersolvable_bruteforce(arr: Arrangement, max_hyperplanes: int = 14):
    """Oracle: enumerate ALL maximal chains, test every flat of each for
    modularity.  Exponential; only for small instances."""
    if len(arr.hyperplanes) > max_hyperplanes:
        raise BudgetExceededError(
            f"brute-force oracle limited to {max_hyperplanes} hyperplanes"
        )
    lat = intersection_lattice(arr)
    top_rank = lat.rank()
    modular_cache: dict[int, bool] = {}

    def modular(f: Flat) -> bool:
        if f.index not in modular_cache:
            modular_cache[f.index] = is_modular(lat, f)
        return modular_cache[f.index]

    def chains(chain: list[Flat]):
        last = chain[-1]
        if last.rank == top_rank:
            yield chain
            return
        for f in lat.flats:
            if f.rank == last.rank + 1 and last.hyperplane_set < f.hyperplane_set:
                yield from chains(chain + [f])

    for chain in chains([lat.flats[0]]):
        if all(modular(f) for f in chain):
            return True, [sorted(f.hyperplane_set) for f in chain]
    return False, None


# ---------------------------------------------------------------------------
# discriminant


def discriminant_poly(arr: Arrangement) -> MPoly:
    """Delta = product over hyperplanes of alpha_H^(e_H), exact expansion."""
    result = MPoly.constant(arr.dim, 1)
    for form, mult in zip(arr.hyperplanes, arr.multiplicities):
        result = result * (MPoly.linear_form(form) ** mult)
    return result


# ---------------------------------------------------------------------------
# JSON: {"dim":n, "hyperplanes":[[CycNum,...],...], "mult":[e_H,...]}


def to_json(arr: Arrangement) -> dict:
    return {
        "dim": arr.dim,
        "hyperplanes": [[cyclo.to_json(c) for c in h] for h in arr.hyperplanes],
        "mult": list(arr.multiplicities),
    }


def from_json(data: dict) -> Arrangement:
    try:
        dim = int(data["dim"])
        hyps = tuple(
            normalize_form([cyclo.from_json(c) for c in h]) for h in data["hyperplanes"]
        )
        mult = tuple(int(m) for m in data["mult"])
    except (KeyError, TypeError, ValueError) as exc:
        raise InputError(f"malformed arrangement encoding: {exc}") from exc
    return Arrangement(dim=dim, hyperplanes=hyps, multiplicities=mult)
