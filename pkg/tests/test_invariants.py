import random
from fractions import Fraction

import pytest

from reflbench.arrangement import Arrangement, arrangement_of, discriminant_poly
from reflbench.invariants import (
    MolienError,
    act_matrix,
    catalog_invariant_pair,
    fundamental_invariants,
    g12_alpha_beta,
    invariant_space,
    is_invariant,
    molien_degrees,
    molien_series,
    reynolds,
)
from reflbench.matgroup import build_catalog_group, build_monomial_group, reflections
from reflbench.mpoly import (
    MPoly,
    jacobian,
    poly_square_root,
    proportional,
    squarefree_linear_factor_check,
)

Z1 = MPoly.variable(2, 0)
Z2 = MPoly.variable(2, 1)


def test_printed_invariants_are_invariant():
    g4 = build_catalog_group("G4")
    g1, g2 = catalog_invariant_pair("G4")
    assert is_invariant(g4, g1) and is_invariant(g4, g2)
    s3 = build_catalog_group("S3_paper")
    f1, f2 = catalog_invariant_pair("S3_paper")
    assert is_invariant(s3, f1) and is_invariant(s3, f2)
    # composing with a generator literally reproduces the polynomial
    assert act_matrix(g1, g4.generators[0]) == g1
    assert act_matrix(f2, s3.generators[0]) == f2


def test_molien_degrees():
    assert molien_degrees(build_catalog_group("G4")) == [4, 6]
    assert molien_degrees(build_catalog_group("S3_paper")) == [2, 3]
    assert molien_degrees(build_monomial_group(2, 1, 2)) == [2, 4]


def test_molien_series_matches_invariant_space_dims():
    # independent cross-check of two code paths
    g4 = build_catalog_group("G4")
    series = molien_series(g4, 9)
    for d in range(6):
        assert series[d] == len(invariant_space(g4, d)), d


def test_reynolds_idempotent_and_projects():
    g4 = build_catalog_group("G4")
    rng = random.Random(11)
    for _ in range(25):
        p = MPoly(
            2,
            {
                (rng.randint(0, 4), rng.randint(0, 4)): Fraction(rng.randint(-3, 3))
                for _ in range(3)
            },
        )
        r = reynolds(g4, p)
        assert reynolds(g4, r) == r
    g1, _ = catalog_invariant_pair("G4")
    assert reynolds(g4, g1) == g1
    r = reynolds(g4, Z1**4)
    ok, c = proportional(r, g1)
    assert ok and c

    s3 = build_catalog_group("S3_paper")
    f1, _ = catalog_invariant_pair("S3_paper")
    ok, _ = proportional(reynolds(s3, Z1**2), f1)
    assert ok


def test_invariant_space_dimensions():
    g4 = build_catalog_group("G4")
    assert len(invariant_space(g4, 4)) == 1
    assert len(invariant_space(g4, 5)) == 0
    assert len(invariant_space(g4, 0)) == 1
    g1, _ = catalog_invariant_pair("G4")
    ok, _ = proportional(invariant_space(g4, 4)[0], g1)
    assert ok


def test_fundamental_invariants():
    basis = fundamental_invariants(build_catalog_group("G4"))
    assert basis.degrees == (4, 6)
    assert not jacobian(list(basis.generators)).is_zero()
    g4 = build_catalog_group("G4")
    assert all(is_invariant(g4, p) for p in basis.generators)
    assert all(p.leading_term()[1] == 1 * p.leading_term()[1] and p == p.monic() for p in basis.generators)


def test_discriminant_relations_exact():
    from reflbench import cyclo

    g4 = build_catalog_group("G4")
    g1, g2 = catalog_invariant_pair("G4")
    ok, scalar = proportional(discriminant_poly(arrangement_of(g4)), g1**3 - g2**2)
    # frozen: with RREF-normalized hyperplane forms the exact scalar is -1/8
    assert ok and scalar == cyclo.rational(Fraction(-1, 8))
    s3 = build_catalog_group("S3_paper")
    f1, f2 = catalog_invariant_pair("S3_paper")
    ok, scalar = proportional(discriminant_poly(arrangement_of(s3)), f1**3 - f2**2)
    assert ok and scalar == cyclo.rational(Fraction(4, 27))


def test_jacobian_squared_vs_reduced_discriminant():
    # jac(basic invariants)^2 is proportional to prod alpha_H^(2(e_H - 1))
    for label in ("G4", "S3_paper"):
        g = build_catalog_group(label)
        arr = arrangement_of(g)
        pair = catalog_invariant_pair(label)
        jac = jacobian(list(pair))
        reduced = Arrangement(
            dim=arr.dim,
            hyperplanes=arr.hyperplanes,
            multiplicities=tuple(2 * (e - 1) for e in arr.multiplicities),
        )
        ok, _ = proportional(jac * jac, discriminant_poly(reduced))
        assert ok, label


def test_g12_model_free_checks():
    alpha, beta = g12_alpha_beta()
    assert alpha.total_degree() == 6 and beta.total_degree() == 8
    diff = beta**3 - (alpha**4).scale(27)
    root = poly_square_root(diff)
    assert root is not None and root.total_degree() == 12
    assert root * root == diff
    assert squarefree_linear_factor_check(root, tol=1e-8)
    jac = jacobian([alpha, beta])
    assert jac.total_degree() == 12 and not jac.is_zero()
    ok, scalar = proportional(jac, root)
    # frozen: jac = 16*sqrt(-2) * root, with sqrt(-2) = zeta8 + zeta8^3
    from reflbench import cyclo

    sqrt_m2 = cyclo.root_of_unity(8, 1) + cyclo.root_of_unity(8, 3)
    assert ok and scalar == cyclo.rational(16) * sqrt_m2


def test_jacobian_s3_degree_three_nonzero():
    f1, f2 = catalog_invariant_pair("S3_paper")
    j = jacobian([f1, f2])
    assert j.total_degree() == 3 and not j.is_zero()


def test_molien_consistency_identities():
    for g in (
        build_catalog_group("G4"),
        build_catalog_group("S3_paper"),
        build_monomial_group(2, 1, 2),
        build_monomial_group(3, 3, 2),
        build_monomial_group(2, 2, 3),
        build_monomial_group(2, 2, 4),
    ):
        degs = molien_degrees(g)
        assert sum(d - 1 for d in degs) == len(reflections(g))
        prod = 1
        for d in degs:
            prod *= d
        assert prod == g.order()
