import pytest
from hypothesis import given, settings, strategies as st

from cangroth.alphabets import DiffAlphabet
from cangroth.fockspace import fock_matrix_element
from cangroth.grothendieck import (
    INTEGRAL_FORMULAS,
    JTRequest,
    TruncationError,
    det_formula_G,
    flagged_G,
    flagged_G_rowsum,
    integral_jt,
    jt_G,
    jt_G_raw,
    jt_g,
    schur_skew,
    single_row_G,
    stabilize,
)
from cangroth.partitions import Partition, contains, partitions_in_box
from cangroth.polynomial import Poly, Variable, a, b, x

from tableaux import rpp_sum, set_valued_sum, ssyt_sum

T = Poly.var(Variable("aux", 1))
BETA1 = Variable("beta", 1)
BOX22 = partitions_in_box(2, 2)
shapes22 = st.sampled_from(BOX22)


def one_parameter(p):
    """alpha -> 0 and every beta_i -> t."""
    return p.substitute({v: (T if v.family == "beta" else Poly()) for v in p.variables() if v.family in ("alpha", "beta")})


def no_parameters(p):
    return p.substitute({v: Poly() for v in p.variables() if v.family in ("alpha", "beta")})


def terms(p):
    for mono, c in p.terms():
        yield dict(mono), c


# g


def test_g_examples():
    assert jt_g((2, 1), (2, 1), 3) == 1
    assert jt_g((1,), (), 2) == x(1) + x(2)
    assert jt_g((1,), (2,), 2) == Poly()


@pytest.mark.parametrize("lam", [(1,), (2,), (1, 1), (2, 1), (2, 2), (3, 1)])
def test_g_one_parameter_is_reverse_plane_partition_sum(lam):
    assert one_parameter(jt_g(lam, (), 2)) == rpp_sum(lam, 2, T)


@pytest.mark.parametrize("lam", BOX22, ids=str)
@pytest.mark.parametrize("mu", BOX22, ids=str)
def test_g_matches_fock(lam, mu):
    assert fock_matrix_element(mu, lam, "g", 2, 0).body == jt_g(lam, mu, 2)


@given(shapes22, shapes22, st.sampled_from(["h", "e"]))
@settings(deadline=None, max_examples=30)
def test_g_padding_invariant(lam, mu, form):
    assert jt_g(lam, mu, 2, form, pad=1) == jt_g(lam, mu, 2, form)


@given(shapes22, shapes22)
@settings(deadline=None, max_examples=30)
def test_g_top_term_is_skew_schur(lam, mu):
    # y-degree plus parameter degree equals the skew size
    g = jt_g(lam, mu, 2)
    if not contains(lam, mu):
        assert g == Poly()
        return
    assert no_parameters(g) == ssyt_sum(lam, mu, 2)
    for mono, _ in terms(g):
        assert sum(mono.values()) == lam.size() - mu.size()


# Schur


@pytest.mark.parametrize(
    "outer,inner", [((2, 1), ()), ((2, 2), (1,)), ((3, 1), (1,)), ((2,), ()), ((2, 2), (2,)), ((3, 2, 1), (2, 1))]
)
def test_schur_skew_matches_tableaux(outer, inner):
    assert schur_skew(outer, inner, nvars=3) == ssyt_sum(outer, inner, 3)


def test_schur_21_in_two_variables():
    assert schur_skew((2, 1), nvars=2) == x(1) ** 2 * x(2) + x(1) * x(2) ** 2


def test_schur_over_pure_alphabet():
    u = Poly.var(Variable("aux", 1))
    S = DiffAlphabet(((Variable("aux", 1), 1),), ())
    assert schur_skew((2,), S=S) == u * u


# G and G-double-slash


def test_G_one_over_two():
    s = stabilize(lambda c: jt_G_raw((1,), (2,), 2, "G", "h", c), 2)
    assert s.exact and s.body == a(2) + b(1)


@pytest.mark.parametrize("lam", BOX22, ids=str)
@pytest.mark.parametrize("mu", BOX22, ids=str)
def test_Gds_vanishes_off_containment(lam, mu):
    if not contains(lam, mu):
        assert jt_G_raw(lam, mu, 2, "Gds", "h", 3).body == Poly()


@pytest.mark.parametrize("lam", BOX22, ids=str)
def test_single_slash_diagonal_is_one(lam):
    assert jt_G_raw(lam, lam, 2, "G", "h", 3).body == 1


def test_Gds_diagonal_has_constant_term_one():
    s = jt_G_raw((1,), (1,), 1, "Gds", "h", 2)
    assert s.body == 1 - x(1) * a(1) - x(1) * b(1) + x(1) ** 2 * a(1) ** 2 + x(1) ** 2 * a(1) * b(1)
    assert det_formula_G((1,), (1,), 1, "Gds", 2).agrees_with(s)


def test_G_of_one_box_is_a_series():
    s = jt_G_raw((1,), (), 1, "G", "h", 3)
    # x1 / (1 + a1 x1)
    assert s.body == x(1) - a(1) * x(1) ** 2 + a(1) ** 2 * x(1) ** 3 - a(1) ** 3 * x(1) ** 4
    with pytest.raises(TruncationError):
        jt_G(JTRequest((1,), (), 2), stable=True)


@pytest.mark.parametrize("lam", [(1,), (2,), (1, 1), (2, 1), (2, 2)])
def test_G_one_parameter_is_set_valued_sum(lam):
    assert one_parameter(jt_G_raw(lam, (), 2, "G", "h", 6).body) == set_valued_sum(lam, 2, -T)


@pytest.mark.parametrize("variant", ["G", "Gds"])
@pytest.mark.parametrize("lam", BOX22, ids=str)
@pytest.mark.parametrize("mu", BOX22, ids=str)
def test_G_matches_fock(variant, lam, mu):
    assert fock_matrix_element(mu, lam, variant, 2, 3).agrees_with(jt_G_raw(lam, mu, 2, variant, "h", 3))


@given(shapes22, shapes22, st.sampled_from(["G", "Gds"]))
@settings(deadline=None, max_examples=25)
def test_G_no_parameters_is_skew_schur(lam, mu, variant):
    G = jt_G_raw(lam, mu, 2, variant, "h", 2).body
    want = ssyt_sum(lam, mu, 2) if contains(lam, mu) else Poly()
    assert no_parameters(G) == want


@given(shapes22, shapes22, st.sampled_from(["G", "Gds"]), st.sampled_from(["h", "e"]))
@settings(deadline=None, max_examples=25)
def test_G_homogeneity(lam, mu, variant, form):
    for mono, _ in terms(jt_G_raw(lam, mu, 2, variant, form, 3).body):
        xdeg = sum(k for v, k in mono.items() if v.family == "x")
        pdeg = sum(k for v, k in mono.items() if v.family != "x")
        assert xdeg - pdeg == lam.size() - mu.size()


@given(shapes22, shapes22, st.sampled_from(["G", "Gds"]))
@settings(deadline=None, max_examples=20)
def test_G_padding_invariant(lam, mu, variant):
    assert jt_G_raw(lam, mu, 2, variant, "h", 2, pad=1).agrees_with(jt_G_raw(lam, mu, 2, variant, "h", 2))


@given(shapes22, shapes22, st.sampled_from(["G", "Gds"]))
@settings(deadline=None, max_examples=20)
def test_forms_agree(lam, mu, variant):
    assert jt_G_raw(lam, mu, 2, variant, "h", 2).agrees_with(jt_G_raw(lam, mu, 2, variant, "e", 2))


def test_truncation_is_consistent():
    lo, hi = jt_G_raw((2, 1), (1,), 2, "G", "h", 2), jt_G_raw((2, 1), (1,), 2, "G", "h", 4)
    assert hi.truncate(2).body == lo.body


def test_request_validation():
    with pytest.raises(ValueError):
        JTRequest((1,), (), -1)
    with pytest.raises(ValueError):
        JTRequest((1,), (), 1, variant="H")
    with pytest.raises(ValueError):
        jt_G_raw((1,), (), 1, "g")


# single-row and determinant formulas


@pytest.mark.parametrize(
    "k,want",
    [
        (-2, b(1) ** 2),
        (-1, b(1)),
        (0, Poly(1)),
        (1, x(1) + x(2) - x(1) * x(2) * b(1)),
    ],
)
def test_single_row_examples(k, want):
    assert single_row_G(k, 2, BETA1) == want


@pytest.mark.parametrize("k", [1, 2, 3])
@pytest.mark.parametrize("n", [1, 2, 3])
def test_single_row_is_alternating_hook_sum(k, n):
    total = sum(
        ((-b(1)) ** m * ssyt_sum((k,) + (1,) * m, (), n) for m in range(n)), Poly()
    )
    assert single_row_G(k, n, BETA1) == total


def test_single_row_flag_range():
    assert single_row_G(1, 3, BETA1, (2, 3)) == x(2) + x(3) - b(1) * x(2) * x(3)
    with pytest.raises(ValueError):
        single_row_G(1, 2, BETA1, (1, 3))


@pytest.mark.parametrize("variant", ["G", "Gds"])
@pytest.mark.parametrize("lam,mu", [((2, 1), ()), ((2, 2), (1,)), ((1,), (2,)), ((2,), (1, 1))])
def test_det_formula_matches_jacobi_trudi(variant, lam, mu):
    assert det_formula_G(lam, mu, 2, variant, 3).agrees_with(jt_G_raw(lam, mu, 2, variant, "h", 3))


def test_det_formula_needs_extra_row():
    with pytest.raises(ValueError):
        det_formula_G((1,), (), 2, ell=1)


@pytest.mark.parametrize("which", INTEGRAL_FORMULAS)
@pytest.mark.parametrize("lam,mu", [((2, 1), (1,)), ((2, 2), ()), ((1,), (1, 1))])
def test_integrals_match_jacobi_trudi(which, lam, mu):
    variant, form = which.split("_")
    got = integral_jt(lam, mu, 2, which, 3)
    if variant == "g":
        assert got == jt_g(lam, mu, 2, form)
    else:
        assert got.agrees_with(jt_G_raw(lam, mu, 2, variant, form, 3))


def test_unknown_integral():
    with pytest.raises(ValueError):
        integral_jt((1,), (), 1, "G_x")


# flagged


def test_flagged_full_flags_is_unflagged():
    assert flagged_G((2, 1), (), 2, [1, 1], [2, 2], 3).agrees_with(jt_G_raw((2, 1), (), 2, "G", "h", 3))
    assert flagged_G((1,), (1,), 2, [1], [1], 3).body == 1


def test_flagged_one_variable_row():
    # a single row flagged to x1 only
    assert flagged_G((1,), (), 2, [1], [1], 3).body == x(1) - a(1) * x(1) ** 2 + a(1) ** 2 * x(1) ** 3 - a(1) ** 3 * x(1) ** 4


@pytest.mark.parametrize("s", [[1, 2], [2, 2], [1, 1]])
def test_flagged_rowsum_agrees(s):
    assert flagged_G((2, 1), (), 2, [1, 1], s, 3).agrees_with(flagged_G_rowsum((2, 1), (), 2, s, 3))


@pytest.mark.parametrize(
    "r,s",
    [([1], [1, 2]), ([1, 1], [3, 3]), ([2, 1], [1, 2]), ([1, 1], [2, 1])],
)
def test_flags_rejected(r, s):
    with pytest.raises(ValueError):
        flagged_G((2, 1), (), 2, r, s, 2)
