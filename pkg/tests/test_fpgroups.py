import math
import random

import pytest

from reflbench.errors import BudgetExceededError, InputError
from reflbench.fpgroups import (
    GroupHom,
    PermBackend,
    Presentation,
    artin_b_embedding,
    artin_b_cyclic_exponent,
    artin_b_presentation,
    artin_i2_presentation,
    braid_presentation,
    corran_picantin_presentation,
    coxeter_quotient,
    exponent_sum,
    g12_braid_presentation,
    g12_conjugation,
    g13_braid_presentation,
    g13_conjugation,
    hom_bijective_on,
    i26_mirror_conjugated_by_bab,
    i26_to_g13_iso,
    i26_transported_conjugation,
    is_in_derived_f2,
    parse_word,
    schreier_data,
    schreier_rewrite,
    single,
    todd_coxeter,
    torsion_quotient,
    verify_hom,
    word_inverse,
    word_mul,
    word_pow,
    word_str,
)


def test_parse_free_reduction():
    assert parse_word("s1 s1^-1", ("s1",)) == ()
    assert parse_word("[x,y]", ("x", "y")) == (("x", 1), ("y", 1), ("x", -1), ("y", -1))


def test_parse_longest_match_and_juxtaposition():
    g12 = g12_braid_presentation()
    assert parse_word("stus", g12.generators) == (("s", 1), ("t", 1), ("u", 1), ("s", 1))
    assert parse_word("tust", g12.generators) == (("t", 1), ("u", 1), ("s", 1), ("t", 1))
    # s1p must win over s1
    assert parse_word("s1p s1", ("s1", "s1p")) == (("s1p", 1), ("s1", 1))
    # uppercase = inverse sugar
    assert parse_word("s t s T S T", ("s", "t")) == parse_word("s t s t^-1 s^-1 t^-1", ("s", "t"))


def test_parse_errors():
    with pytest.raises(InputError):
        parse_word("q", ("s",))
    with pytest.raises(InputError):
        parse_word("s^", ("s",))
    with pytest.raises(InputError):
        parse_word("(s", ("s",))


def test_exponent_sums():
    br4 = braid_presentation(4)
    omega4 = parse_word("(s1 s2 s3)^4", br4.generators)
    assert exponent_sum(omega4) == 12
    comm = parse_word("[s1, s2]", br4.generators)
    assert exponent_sum(comm) == 0
    assert exponent_sum(parse_word("s1^3", br4.generators)) == 3
    assert exponent_sum(omega4, per_generator=True) == {"s1": 4, "s2": 4, "s3": 4}


def test_is_in_derived_f2():
    assert is_in_derived_f2(parse_word("[x,y]", ("x", "y")))
    assert not is_in_derived_f2(parse_word("x y", ("x", "y")))
    w = word_mul(
        parse_word("[x^2,y]", ("x", "y")), word_pow(parse_word("[y,x]", ("x", "y")), 3)
    )
    assert is_in_derived_f2(w)


def test_todd_coxeter_indices():
    br4 = braid_presentation(4)
    sub = [parse_word(t, br4.generators) for t in ("s1^2", "s2", "s3")]
    assert todd_coxeter(br4, sub).index() == 4

    s3 = Presentation(
        "S3",
        ("a", "b"),
        (
            word_pow(single("a"), 2),
            word_pow(single("b"), 2),
            word_pow(parse_word("ab", ("a", "b")), 3),
        ),
    )
    assert todd_coxeter(s3, [single("a")]).index() == 3

    br3 = braid_presentation(3)
    assert todd_coxeter(br3, [single("s1"), single("s2")]).index() == 1


def test_todd_coxeter_relator_order_invariance():
    br4 = braid_presentation(4)
    sub = [parse_word(t, br4.generators) for t in ("s1^2", "s2", "s3")]
    rng = random.Random(3)
    base = todd_coxeter(br4, sub).index()
    for _ in range(5):
        rel = list(br4.relators)
        rng.shuffle(rel)
        shuffled = Presentation("Br4-shuffled", br4.generators, tuple(rel))
        assert todd_coxeter(shuffled, sub).index() == base


def test_todd_coxeter_budget_status():
    br3 = braid_presentation(3)
    table = todd_coxeter(br3, [], limit=50)  # Br3 is infinite
    assert table.status == "budget_exceeded"


def test_coxeter_quotients():
    assert coxeter_quotient(3, 3).degree == 24
    assert coxeter_quotient(3, 2).degree == 6
    assert coxeter_quotient(3, 4).degree == 96
    assert coxeter_quotient(4, 3).degree == 648


def test_torsion_quotients():
    assert torsion_quotient(g12_braid_presentation(), 2).degree == 48
    assert torsion_quotient(g13_braid_presentation(), 2).degree == 96
    assert torsion_quotient(artin_i2_presentation(6), 2).degree == 12


def test_braid_torsion_symmetric_groups():
    for n in range(2, 6):
        q = torsion_quotient(braid_presentation(n), 2)
        assert q.degree == math.factorial(n)


def test_cp_quotient_orders():
    for e in (3, 4):
        for n in (3, 4):
            q = torsion_quotient(corran_picantin_presentation(e, n), 2)
            assert q.degree == e ** (n - 1) * math.factorial(n)


def test_cp_without_far_commutations_does_not_close():
    pres = corran_picantin_presentation(3, 4, include_far_commutations=False)
    with pytest.raises(BudgetExceededError):
        torsion_quotient(pres, 2, limit=20_000)


def test_verify_g12_conjugation():
    q = torsion_quotient(g12_braid_presentation(), 2)
    hom = g12_conjugation()
    v = verify_hom(hom, [PermBackend(q)])
    assert v.consistent and not v.exact_proof
    assert "evidence" in v.note
    assert hom_bijective_on(hom, q)
    # the map squares to an inner-trivial map on the quotient: order-2 on generators
    sq = {g: hom.apply(w) for g, w in hom.images.items()}
    for g in hom.source.generators:
        assert q.eval_word(sq[g]) == q.eval_word(single(g))


def test_verify_i26_iso_and_conjugations():
    q13 = torsion_quotient(g13_braid_presentation(), 2)

    class Target:
        exact = False
        label = "G13-torsion"

        def eval_word(self, w):
            return q13.eval_word(w)

        def identity(self):
            return q13.identity()

    assert verify_hom(i26_to_g13_iso(), [Target()]).consistent
    assert verify_hom(g13_conjugation(), [PermBackend(q13)]).consistent
    assert hom_bijective_on(g13_conjugation(), q13)


def test_transported_conjugation_identities():
    trans = i26_transported_conjugation()
    mirror = i26_mirror_conjugated_by_bab()
    # (ba) b^-1 (ba)^-1 and (bab) b^-1 (bab)^-1 are the same free word
    assert trans.images["b"] == mirror.images["b"]
    assert trans.images["a"] == mirror.images["a"]
    q13 = torsion_quotient(g13_braid_presentation(), 2)
    iso = i26_to_g13_iso()
    conj = g13_conjugation()
    for g in ("a", "b"):
        lhs = q13.eval_word(iso.apply(trans.images[g]))
        rhs = q13.eval_word(conj.apply(iso.images[g]))
        assert lhs == rhs


def test_falsified_map_detected():
    br3 = braid_presentation(3)
    q = coxeter_quotient(3, 2)
    # s1 -> s1, s2 -> s1^2 kills the braid relator in the quotient
    bogus = GroupHom("bogus", br3, {"s1": single("s1"), "s2": word_pow(single("s1"), 2)})
    v = verify_hom(bogus, [PermBackend(q)])
    assert not v.consistent and v.falsifier is not None


def test_integer_row_span_membership():
    from reflbench.fpgroups import in_integer_row_span

    rows = [[2, 0, 4], [0, 3, 3]]
    assert in_integer_row_span(rows, [2, 3, 7])
    assert in_integer_row_span(rows, [0, 0, 0])
    assert not in_integer_row_span(rows, [1, 0, 2])  # needs half a row
    assert not in_integer_row_span(rows, [0, 0, 1])
    assert in_integer_row_span([], [0, 0])
    assert not in_integer_row_span([], [1, 0])


def test_schreier_rewriting():
    br4 = braid_presentation(4)
    sub = [parse_word(t, br4.generators) for t in ("s1^2", "s2", "s3")]
    table = todd_coxeter(br4, sub)
    data = schreier_data(table)
    w = schreier_rewrite(data, parse_word("s1^2", br4.generators))
    assert w is not None and len(w) == 1 and abs(w[0][1]) == 1
    assert schreier_rewrite(data, single("s1")) is None
    # membership is closed under products
    prod = word_mul(parse_word("s1^2", br4.generators), single("s2"))
    assert schreier_rewrite(data, prod) is not None


def test_artin_b_embedding_and_cyclic_quotient():
    hom = artin_b_embedding(3)
    # images satisfy the Art(B_3) relators inside Br_4 / s^3 (finite evidence)
    q = coxeter_quotient(4, 3)

    class Target:
        exact = False
        label = "Br4/s^3"

        def eval_word(self, w):
            return q.eval_word(w)

        def identity(self):
            return q.identity()

    assert verify_hom(hom, [Target()]).consistent
    # t -> 1, s_i -> 0 into Z/e
    pres = artin_b_presentation(3)
    for r in pres.relators:
        assert artin_b_cyclic_exponent(r, 4) == 0
    assert artin_b_cyclic_exponent(parse_word("t^5", pres.generators), 4) == 1


def test_word_str_roundtrip():
    br4 = braid_presentation(4)
    w = parse_word("s1^2 s3^-1 s2", br4.generators)
    assert parse_word(word_str(w), br4.generators) == w


def _dihedral(m):
    return Presentation(
        f"Dih{m}",
        ("a", "b"),
        (
            word_pow(single("a"), 2),
            word_pow(single("b"), 2),
            word_pow(word_mul(single("a"), single("b")), m),
        ),
    )


def test_todd_coxeter_against_known_orders():
    # independent oracle values: dihedral orders 2m and standard indices
    for m in range(3, 10):
        pres = _dihedral(m)
        assert todd_coxeter(pres, []).index() == 2 * m
        assert todd_coxeter(pres, [single("a")]).index() == m
        assert todd_coxeter(pres, [word_mul(single("a"), single("b"))]).index() == 2
    # symmetric groups via torsion-added braid presentations
    for n in range(2, 6):
        names = [f"s{i}" for i in range(1, n)]
        rel = list(braid_presentation(n).relators) + [word_pow(single(g), 2) for g in names]
        pres = Presentation(f"SymCox{n}", tuple(names), tuple(rel))
        assert todd_coxeter(pres, []).index() == math.factorial(n)
        if n >= 3:
            assert todd_coxeter(pres, [single(g) for g in names[:-1]]).index() == n


def test_todd_coxeter_quaternion_and_psl27():
    q8 = Presentation(
        "Q8",
        ("a", "b"),
        (
            word_pow(single("a"), 4),
            word_mul(word_pow(single("a"), 2), word_pow(single("b"), -2)),
            word_mul(single("a"), single("b"), single("a"), word_pow(single("b"), -1)),
        ),
    )
    assert todd_coxeter(q8, []).index() == 8
    assert todd_coxeter(q8, [single("a")]).index() == 2
    # the (2,3,7) presentation with [a,b]^4 added presents a simple group of order 168
    psl27 = Presentation(
        "PSL27",
        ("a", "b"),
        (
            word_pow(single("a"), 2),
            word_pow(single("b"), 3),
            word_pow(word_mul(single("a"), single("b")), 7),
            word_pow(
                word_mul(single("a"), single("b"), word_inverse(single("a")), word_inverse(single("b"))),
                4,
            ),
        ),
    )
    assert todd_coxeter(psl27, []).index() == 168
