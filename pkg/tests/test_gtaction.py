import pytest

from reflbench.errors import InputError
from reflbench.fpgroups import (
    coxeter_quotient,
    parse_word,
    single,
    word_mul,
    word_pow,
)
from reflbench.gtaction import (
    GTPair,
    act_on_quotient,
    check_gd_pair,
    composed_action_agrees,
    drinfeld_images,
    matsumoto_commutation_report,
    matsumoto_d_images,
    parse_pair,
    stabilizes_bn_subgroup,
    y_word,
)


def test_pair_validation():
    with pytest.raises(InputError):
        parse_pair(1, "x")  # nonzero exponent sum
    p = parse_pair(3, "[x,y]")
    assert p.lam == 3
    assert parse_pair(2, "").lambda_parity_note is not None
    assert parse_pair(3, "").lambda_parity_note is None


def test_y_convention():
    assert y_word(2) == word_pow(single("s1"), 2)
    assert y_word(3) == parse_word("s2 s1 s1 s2", ("s1", "s2"))


def test_drinfeld_images_match_printed_br3_formula():
    # frozen n=3 instance: s2 -> f(s2^2, s1^2) s2^lam f(s1^2, s2^2), f = [x,y]
    images = drinfeld_images(3, parse_pair(5, "[x,y]"))
    assert images["s1"] == word_pow(single("s1"), 5)
    assert images["s2"] == (
        ("s2", 2), ("s1", 2), ("s2", -2), ("s1", -2),
        ("s2", 5),
        ("s1", 2), ("s2", 2), ("s1", -2), ("s2", -2),
    )


def test_trivial_pairs():
    assert drinfeld_images(4, parse_pair(1, "")) == {
        "s1": single("s1"),
        "s2": single("s2"),
        "s3": single("s3"),
    }
    neg = drinfeld_images(4, parse_pair(-1, ""))
    assert all(w == word_pow(single(g), -1) for g, w in neg.items())


def test_act_on_quotient():
    q = coxeter_quotient(3, 3)  # order 24
    assert q.order() == 24
    rep = act_on_quotient(q, parse_pair(1, ""))
    assert rep.well_defined and rep.bijective
    repneg = act_on_quotient(q, parse_pair(-1, ""))
    assert repneg.well_defined and repneg.bijective is True
    rep3 = act_on_quotient(q, parse_pair(3, "[x,y]"))
    # verdicts are data: lambda = 3 kills the generators in Br3/s^3
    assert rep3.well_defined is True and rep3.bijective is False


def test_lambda_only_pairs_act_as_power_map():
    q = coxeter_quotient(3, 4)
    for lam in (1, -1, 5):
        rep = act_on_quotient(q, parse_pair(lam, ""))
        assert all(w == word_pow(single(g), lam) for g, w in rep.images.items())


def test_stabilizes_bn_subgroup():
    for n in (2, 3, 4):
        for pair in (parse_pair(1, ""), parse_pair(-1, ""), parse_pair(3, "[x,y]"), parse_pair(-1, "[x^2,y]")):
            out = stabilizes_bn_subgroup(n, pair)
            assert out["index"] == n + 1
            assert out["all_in"], (n, pair)


def test_matsumoto_identity_pair():
    rep = matsumoto_commutation_report(4, parse_pair(1, ""))
    assert rep["all_hold"]
    images = matsumoto_d_images(4, parse_pair(1, ""))
    assert images["s1"] == single("s1") and images["s2"] == single("s2")


def test_matsumoto_sample_pairs_exact():
    for pair in (parse_pair(3, "[x,y]"), parse_pair(-1, "[x^2,y]")):
        rep = matsumoto_commutation_report(5, pair)
        assert rep["all_hold"], pair


def test_gd_identity_pair():
    rep = check_gd_pair(6, 1, ())
    assert rep["all_exact_conditions"] and rep["cond1_bijective_on_W"]


def test_gd_minus_one():
    rep = check_gd_pair(6, -1, ())
    assert rep["cond3_delta_image"] is True
    assert rep["cond4_delta2_image"] is True
    assert rep["relator_preserved_exact"] is True


def test_gd_m5_with_commutator_g():
    g = parse_word("[a^2, b^2]", ("a", "b"))
    rep = check_gd_pair(5, 3, g)
    # full report computed; verdicts are data, not assumptions
    for key in ("cond3_delta_image", "cond4_delta2_image", "relator_preserved_exact"):
        assert isinstance(rep[key], bool)


def test_gd_rejects_g_outside_kernel():
    with pytest.raises(InputError):
        check_gd_pair(6, 1, single("a"))


def test_gd_rejects_g_outside_derived_subgroup():
    # a^2 lies in the kernel but has nonzero abelianized class
    with pytest.raises(InputError):
        check_gd_pair(6, 1, word_pow(single("a"), 2))


def test_composition_as_functions():
    q = coxeter_quotient(3, 3)
    assert composed_action_agrees(q, parse_pair(-1, ""), parse_pair(3, "[x,y]"))
    assert composed_action_agrees(q, parse_pair(3, "[x,y]"), parse_pair(-1, "[x,y]"))
