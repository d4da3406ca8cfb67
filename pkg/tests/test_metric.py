from __future__ import annotations

import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from solitary import exact
from solitary.constructions import complexify, complexify_metric, realify, realify_metric
from solitary.lie import center, is_adinvariant_endo, parse_salamon
from solitary.metric import (
    NEITHER,
    SOLITARY,
    WEAKLY_SOLITARY,
    ComplexPair,
    Metric,
    MetricError,
    MetricSyntaxError,
    NotApplicable,
    ScalarPlusNilpotent,
    Unclassified,
    adinvariant_forms,
    adjoint,
    all_derivations_traceless,
    central_split,
    check_adinvariant,
    classify_selfadjoint,
    classify_solitary,
    find_adinvariant_metric,
    find_sigma_diagonal_metric,
    is_selfadjoint,
    metric_from_json,
    metric_from_triples,
    metric_to_json,
    metric_transport,
    parse_metric,
    render_metric,
    selfadjoint_adinvariant_space,
    sigma_of,
    symmetrized_derivation_space,
)

import oracles
from conftest import alg, met

TSU2 = "(23,-13,12,26-35,34-16,-24+15)"
G_CAN = "e1.e4+e2.e5+e3.e6"
H_TSU2 = "e1.e4+e2.e5+e3.e6+e1.e1+e2.e2+e3.e3"
F_ALG = "(0,0,12,13,23)"
G_F = "e1.e5-e2.e4+e3.e3"


# ---------------------------------------------------------------------------
# text and JSON


def test_parse_metric_terms():
    G = parse_metric("e1.e4 + 2*e2.e3 - 1/2*e5.e5 + e4.e1", 5)
    assert G.matrix[0][3] == G.matrix[3][0] == 2
    assert G.matrix[1][2] == G.matrix[2][1] == 2
    assert G.matrix[4][4] == Fraction(-1, 2)


@pytest.mark.parametrize("text", ["e1.e9", "e1e2", "e1.e2 e3.e3", "e1.e2+"])
def test_parse_metric_errors(text):
    with pytest.raises(MetricSyntaxError):
        parse_metric(text, 3)


def test_metric_text_json_roundtrip():
    G = met("-e1.e5+e2.e6-e3.e7-e4.e8-e9.e9+e10.e10+e11.e12", 12)
    assert parse_metric(render_metric(G), 12) == G
    assert metric_from_json(metric_to_json(G), 12) == G


def test_metric_from_triples_conflict():
    G = metric_from_triples(2, [(1, 2, 1), (2, 1, 1)])
    assert G.matrix == ((0, 1), (1, 0))
    with pytest.raises(MetricSyntaxError):
        metric_from_triples(2, [(1, 2, 1), (2, 1, 2)])


def test_asymmetric_matrix_rejected():
    with pytest.raises(MetricError):
        Metric.from_matrix([[Fraction(1), Fraction(1)], [Fraction(0), Fraction(1)]])


# ---------------------------------------------------------------------------
# ad-invariance and adjoints


def test_corpus_metrics_are_adinvariant():
    assert not check_adinvariant(alg(TSU2), met(G_CAN, 6))
    assert not check_adinvariant(alg(TSU2), met(H_TSU2, 6))
    assert not check_adinvariant(alg(F_ALG), met(G_F, 5))
    assert not check_adinvariant(alg("(0,-12,13,-23)"), met("e1.e4+e2.e3", 4))


def test_printed_f_metric_sign_is_not_invariant():
    bad = check_adinvariant(alg(F_ALG), met("e1.e5+e2.e4+e3.e3", 5))
    assert bad and all(len(t) == 3 for t in bad)


def test_adjoint_and_selfadjoint():
    G = met(G_CAN, 6)
    rng = random.Random(3)
    D = [[Fraction(rng.randint(-2, 2)) for _ in range(6)] for _ in range(6)]
    Ds = adjoint(D, G)
    # g(Dx, y) = g(x, D* y) entrywise
    assert exact.matmul(exact.transpose(D), G.G) == exact.matmul(G.G, Ds)
    assert is_selfadjoint(exact.mat_add(D, Ds), G)
    assert adjoint(Ds, G) == D


def test_sigma_of():
    assert sigma_of(met("e1.e4+e2.e3", 4).G) == [3, 2, 1, 0]
    assert sigma_of(met("e1.e1+e2.e3", 3).G) == [0, 2, 1]
    assert sigma_of(met(H_TSU2, 6).G) is None


def test_invariant_forms_match_oracle():
    for text in [TSU2, F_ALG, "(0,-12,13,-23)", "(23,-13,12)", "(0,0,12)"]:
        a = alg(text)
        mine = oracles.to_sympy_mats(adinvariant_forms(a))
        assert oracles.same_span(mine, oracles.invariant_forms(a))


# ---------------------------------------------------------------------------
# S_g, D_g and the verdicts


def test_tstar_su2_spaces():
    a, g = alg(TSU2), met(G_CAN, 6)
    S = selfadjoint_adinvariant_space(a, g)
    D = symmetrized_derivation_space(a, g)
    assert S.dim == 2 and D.dim == 1
    assert D.contains(exact.identity(6))
    v = classify_solitary(a, g)
    assert v.status == NEITHER and v.id_in_d
    assert v.witness is not None and not D.contains([list(r) for r in v.witness])


@pytest.mark.parametrize(
    "text,metric,n,status",
    [
        (TSU2, H_TSU2, 6, WEAKLY_SOLITARY),
        (F_ALG, G_F, 5, SOLITARY),
        ("(0,-12,13,-23)", "e1.e4+e2.e3", 4, SOLITARY),
        ("(0,13,-12,-23)", "e1.e4+e2.e2+e3.e3", 4, SOLITARY),
        ("(23,-13,12)", "e1.e1+e2.e2+e3.e3", 3, WEAKLY_SOLITARY),
        ("(0,0)", "e1.e1+e2.e2", 2, SOLITARY),
    ],
)
def test_verdicts(text, metric, n, status):
    assert classify_solitary(alg(text), met(metric, n)).status == status


def test_traceless_eleven_dim():
    a = alg(
        "(e^{3,10},e^{2,10},0,-e^{4,10},e^{39}+e^{9,10},e^{34}-e^{6,10},-e^{19}-e^{24}-e^{5,10},"
        "e^{23}+e^{8,10},e^{13}-e^{1,10},0,e^{19}-e^{26}-e^{35}+e^{48})"
    )
    G = met("e1.e5+e2.e6+e3.e7+e4.e8+e9.e9+e10.e11", 11)
    assert all_derivations_traceless(a)
    v = classify_solitary(a, G)
    assert v.status == WEAKLY_SOLITARY and v.dim_d == v.dim_s - 1


def test_metric_transport():
    a = alg(TSU2)
    tau = metric_transport(a, met(G_CAN, 6), met(H_TSU2, 6))
    assert is_adinvariant_endo(a, tau)
    with pytest.raises(MetricError):
        metric_transport(a, met(G_CAN, 6), met("e1.e1+e2.e2+e3.e3+e4.e4+e5.e5+e6.e6", 6))


# ---------------------------------------------------------------------------
# searching for metrics


def test_search_identity_for_abelian():
    G = find_adinvariant_metric(alg("(0,0,0)"))
    assert G.G == exact.identity(3)


def test_search_none_for_heisenberg():
    assert find_adinvariant_metric(alg("(0,0,12)")) is None
    assert find_sigma_diagonal_metric(alg("(0,0,12)")) is None


def test_search_finds_invariant_metrics_and_skip_moves_on():
    a = alg(TSU2)
    G0 = find_adinvariant_metric(a)
    G1 = find_adinvariant_metric(a, skip=1)
    for G in (G0, G1):
        assert G.nondegenerate and not check_adinvariant(a, G)
    assert G0 != G1


def test_sigma_search_table_row():
    a = alg(
        "(0,0,e^{12},0,e^{27}+e^{39}+e^{4,10},-e^{17}+e^{49}+e^{3,10},-e^{19}-e^{2,10},"
        "-e^{29}-e^{1,10},e^{13}+e^{24},e^{14}+e^{23})"
    )
    G, sigma = find_sigma_diagonal_metric(a)
    assert sigma_of(G.G) == sigma
    assert not check_adinvariant(a, G)
    assert classify_solitary(a, G).status == SOLITARY


def test_sigma_restricted_search():
    a = alg("(0,-12,13,-23)")
    G = find_adinvariant_metric(a, sigma=[3, 2, 1, 0])
    assert sigma_of(G.G) == [3, 2, 1, 0]
    assert find_adinvariant_metric(a, sigma=[0, 1, 2, 3]) is None


# ---------------------------------------------------------------------------
# central split and shapes of self-adjoint maps


def test_central_split():
    a = parse_salamon("(0,0,12,13,23,0)")
    G = met(G_F + "+e6.e6", 6)
    m, gt = central_split(a, G)
    assert m.dim == 1 and gt.dim == 5
    assert m.basis == ((0, 0, 0, 0, 0, 1),)
    with pytest.raises(NotApplicable):
        central_split(alg(F_ALG), met(G_F, 5))


def test_classify_selfadjoint_scalar_plus_nilpotent():
    a, G = alg(F_ALG), met(G_F, 5)
    for phi in selfadjoint_adinvariant_space(a, G).matrices():
        shape = classify_selfadjoint(a, G, phi)
        assert isinstance(shape, ScalarPlusNilpotent)


def test_classify_selfadjoint_complex_pair():
    R, J = realify(complexify(alg(F_ALG)))
    GR = realify_metric(complexify_metric(met(G_F, 5)))
    assert is_adinvariant_endo(R, J) and is_selfadjoint(J, GR)
    phi = exact.mat_add(exact.mat_scale(3, exact.identity(10)), exact.mat_scale(2, J))
    shape = classify_selfadjoint(R, GR, phi)
    assert isinstance(shape, ComplexPair)
    assert (shape.a, shape.b) == (3, 2)
    assert exact.matmul(shape.J, shape.J) == exact.mat_scale(-1, exact.identity(10))
    assert exact.is_zero_matrix([list(r) for r in shape.nilpotent])


def test_classify_selfadjoint_reducible():
    a = parse_salamon("(0,0)")
    G = met("e1.e1+e2.e2", 2)
    phi = exact.diag([Fraction(1), Fraction(2)])
    assert isinstance(classify_selfadjoint(a, G, phi), Unclassified)
    with pytest.raises(ValueError):
        classify_selfadjoint(a, G, [[Fraction(0), Fraction(1)], [Fraction(0), Fraction(0)]])


# ---------------------------------------------------------------------------
# randomized checks


@given(st.integers(0, 10**6), st.sampled_from([TSU2, F_ALG, "(0,-12,13,-23)", "(0,13,-12,-23)", "(0,0,0)"]))
@settings(max_examples=60)
def test_random_metrics_keep_dimensions(seed, text):
    from conftest import random_invariant_metric

    a = alg(text)
    G = random_invariant_metric(a, random.Random(seed))
    if G is None:
        return
    base = find_adinvariant_metric(a)
    v1, v2 = classify_solitary(a, G), classify_solitary(a, base)
    assert (v1.dim_s, v1.dim_d) == (v2.dim_s, v2.dim_d)
