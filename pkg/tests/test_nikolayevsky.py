from __future__ import annotations

import warnings
from fractions import Fraction

import pytest
import sympy

from solitary import exact
from solitary.constructions import cotangent
from solitary.lie import LieAlgebra, derivation_space, is_nice
from solitary.metric import sigma_of
from solitary.nikolayevsky import (
    COTANGENT_FORMULA,
    DIAGONAL_PROJECTION,
    INCONCLUSIVE,
    PROVED_SOLITARY,
    PROVED_TSTAR_SOLITARY,
    TRACELESS_ZERO,
    CertificateError,
    NikResult,
    Unsupported,
    certify,
    conformal_factor,
    cotangent_nikolayevsky,
    cotangent_scale,
    der_cap_co,
    metric_nikolayevsky,
    nik_from_json,
    nik_to_json,
    nikolayevsky_nice,
    pairing_rows,
    solitary_by_positivity,
    symmetric_diagram_matrix,
    tstar_by_grading,
)

import oracles
from conftest import alg, corpus_all, corpus_metric_pairs, met

FILIFORM4 = "(0,0,12,13)"
TSU2 = "(23,-13,12,26-35,34-16,-24+15)"
BOIDOL = "(0,-12,13,-23)"


def fr(*xs):
    return tuple(Fraction(x) for x in xs)


# ---------------------------------------------------------------------------
# Der & co


def test_conformal_factor():
    G = met("e1.e4+e2.e3", 4)
    N = exact.diag(list(fr(Fraction(1, 3), Fraction(2, 3), 1, Fraction(4, 3))))
    assert conformal_factor(N, G) == Fraction(5, 3)
    assert conformal_factor(exact.diag(list(fr(1, 2, 3, 5))), G) is None


def test_der_cap_co_dimensions():
    a, g, h = alg(TSU2), met("e1.e4+e2.e5+e3.e6", 6), met("e1.e4+e2.e5+e3.e6+e1.e1+e2.e2+e3.e3", 6)
    assert der_cap_co(a, g).dim == 7
    # with h the extra derivation is no longer conformal and everything left is traceless
    space = der_cap_co(a, h)
    assert all(exact.trace(psi) == 0 for psi in space.matrices())
    # abelian with the identity metric: so(3) + scalars
    assert der_cap_co(LieAlgebra.abelian(3), met("e1.e1+e2.e2+e3.e3", 3)).dim == 4


def test_der_cap_co_elements_are_conformal_derivations():
    a, G = alg(BOIDOL), met("e1.e4+e2.e3", 4)
    space = der_cap_co(a, G)
    der = derivation_space(a)
    for psi in space.matrices():
        assert der.contains(psi)
        assert conformal_factor(psi, G) is not None or exact.is_zero_matrix(
            exact.mat_add(exact.matmul(exact.transpose(psi), G.G), exact.matmul(G.G, psi))
        )


# ---------------------------------------------------------------------------
# diagram matrices


def test_pairing_rows():
    rows = pairing_rows([3, 2, 1, 0])
    assert rows == [list(fr(1, -1, -1, 1))]
    assert pairing_rows([0, 1, 2]) == [list(fr(2, -2, 0)), list(fr(0, 2, -2))]


def test_symmetric_diagram_matrix_rank():
    sdm = symmetric_diagram_matrix(alg(FILIFORM4), [2, 3, 0, 1])
    assert len(sdm.derivation_rows) == 2 and len(sdm.pairing_rows) == 1
    assert len(sdm.F) == 3
    with pytest.raises(Unsupported):
        symmetric_diagram_matrix(alg("(0,0,12,12)"))


def _sigma_nice_corpus():
    out = []
    for ident, a, G in corpus_metric_pairs(12):
        sigma = sigma_of(G.G)
        if sigma is not None and is_nice(a)[0]:
            out.append((ident, a, sigma))
    return out


def test_selected_rows_are_a_row_basis():
    cases = _sigma_nice_corpus()
    assert len(cases) >= 30
    for ident, a, sigma in cases:
        sdm = symmetric_diagram_matrix(a, sigma)
        full = sympy.Matrix(sdm.rows) if sdm.rows else sympy.zeros(0, a.dim)
        F = sympy.Matrix([list(r) for r in sdm.F]) if sdm.F else sympy.zeros(0, a.dim)
        assert F.rank() == len(sdm.F) == full.rank(), ident
        if sdm.F:
            assert sympy.Matrix.vstack(full, F).rank() == full.rank(), ident


def test_dropping_an_inactive_row_keeps_the_projection():
    # The projection only moves along rows with a nonzero multiplier, so an
    # independent row of F need not change lambda when removed.
    sdm = symmetric_diagram_matrix(alg(FILIFORM4), [2, 3, 0, 1])
    F = [list(r) for r in sdm.F]
    one = [Fraction(1)] * 4
    lam = exact.project_onto_kernel(one, F)
    assert exact.project_onto_kernel(one, F[1:]) == lam
    assert exact.project_onto_kernel(one, F[:2]) != lam


# ---------------------------------------------------------------------------
# goldens


@pytest.mark.parametrize(
    "text,metric,n,lam,path",
    [
        (FILIFORM4, "e1.e4+e2.e3", 4, fr(Fraction(1, 3), Fraction(2, 3), 1, Fraction(4, 3)), DIAGONAL_PROJECTION),
        (FILIFORM4, "e1.e3+e2.e4", 4, fr(Fraction(2, 3), 0, Fraction(2, 3), Fraction(4, 3)), DIAGONAL_PROJECTION),
        (BOIDOL, "e1.e4+e2.e3", 4, fr(0, Fraction(2, 3), Fraction(2, 3), Fraction(4, 3)), DIAGONAL_PROJECTION),
        (TSU2, "e1.e4+e2.e5+e3.e6", 6, fr(0, 0, 0, 1, 1, 1), DIAGONAL_PROJECTION),
        (TSU2, "e1.e4+e2.e5+e3.e6+e1.e1+e2.e2+e3.e3", 6, fr(0, 0, 0, 0, 0, 0), TRACELESS_ZERO),
    ],
)
def test_metric_nikolayevsky_goldens(text, metric, n, lam, path):
    res = metric_nikolayevsky(alg(text), met(metric, n))
    assert res.lam == lam and res.path == path and res.certified


def test_metric_results_satisfy_trace_law():
    for text, metric, n in [(FILIFORM4, "e1.e4+e2.e3", 4), (BOIDOL, "e1.e4+e2.e3", 4), (TSU2, "e1.e4+e2.e5+e3.e6", 6)]:
        res = metric_nikolayevsky(alg(text), met(metric, n))
        assert res.trace == n * res.l / 2
        assert conformal_factor(res.matrix, met(metric, n)) == res.l


def test_nice_goldens():
    assert nikolayevsky_nice(alg("(0,0,12)")).lam == fr(Fraction(2, 3), Fraction(2, 3), Fraction(4, 3))
    assert nikolayevsky_nice(LieAlgebra.abelian(3)).lam == fr(1, 1, 1)
    with pytest.raises(Unsupported):
        nikolayevsky_nice(alg("(0,0,12,12)"))


@pytest.mark.parametrize("entry", [e for e, a in corpus_all(max_dim=7) if is_nice(a)[0]])
def test_nice_nik_against_oracle(entry):
    """Tr(N D) = Tr(D) on a sympy basis of all derivations."""
    a = dict(corpus_all())[entry]
    res = nikolayevsky_nice(a)
    N = sympy.diag(*[sympy.Rational(x.numerator, x.denominator) for x in res.lam])
    for D in oracles.derivations(a):
        assert (N * D).trace() == D.trace()
    Dn = sympy.Matrix(N)
    assert oracles.span_rank(oracles.derivations(a) + [Dn]) == oracles.span_rank(oracles.derivations(a))


def test_unsupported_without_involution():
    a = LieAlgebra.abelian(2)
    G = met("2*e1.e1+e1.e2+e2.e2", 2)
    with pytest.raises(Unsupported):
        metric_nikolayevsky(a, G)


def test_certify_detects_wrong_candidate():
    a, G = alg(FILIFORM4), met("e1.e4+e2.e3", 4)
    space = der_cap_co(a, G)
    wrong = exact.diag(list(fr(1, 2, 3, 4)))
    assert any(certify(wrong, space))
    right = metric_nikolayevsky(a, G).matrix
    assert not any(certify(right, space))


def test_certificate_error_is_raised_for_bad_base():
    # feeding the cotangent formula a base vector that is not Nikolayevsky
    with pytest.raises(CertificateError):
        cotangent_nikolayevsky(alg("(0,0,12)"), [1, 1, 2])


# ---------------------------------------------------------------------------
# cotangent formula


@pytest.mark.parametrize("text", ["(0,0,12)", FILIFORM4, "(23,-13,12)"])
def test_cotangent_formula_agrees_with_projection(text):
    a = alg(text)
    pkg = cotangent(a)
    c = cotangent_nikolayevsky(a)
    m = metric_nikolayevsky(pkg.algebra, pkg.metric)
    assert c.path == COTANGENT_FORMULA
    assert c.lam == m.lam and c.l == m.l


def test_cotangent_heisenberg_values():
    res = cotangent_nikolayevsky(alg("(0,0,12)"))
    # a = 3 / (6 - 8/3) = 9/10
    assert cotangent_scale(fr(Fraction(2, 3), Fraction(2, 3), Fraction(4, 3))) == Fraction(9, 10)
    assert res.lam == fr(Fraction(3, 5), Fraction(3, 5), Fraction(6, 5), Fraction(6, 5), Fraction(6, 5), Fraction(3, 5))
    assert res.l == Fraction(9, 5)


def test_cotangent_of_abelian_warns():
    with pytest.warns(UserWarning, match="a = 1"):
        res = cotangent_nikolayevsky(LieAlgebra.abelian(2))
    assert res.warning and res.l == 2 and res.lam == fr(1, 1, 1, 1)


def test_cotangent_base_fallback():
    a = alg("(0,0,12)")
    pkg = cotangent(a)
    with warnings.catch_warnings():
        warnings.simplefilter("error")
        res = metric_nikolayevsky(pkg.algebra, pkg.metric, cotangent_base=a)
    assert res.certified


# ---------------------------------------------------------------------------
# sufficient conditions


def test_positivity():
    assert solitary_by_positivity(alg(FILIFORM4), met("e1.e4+e2.e3", 4)) == PROVED_SOLITARY
    assert solitary_by_positivity(alg(BOIDOL), met("e1.e4+e2.e3", 4)) == INCONCLUSIVE


def test_tstar_by_grading():
    assert tstar_by_grading(alg("(0,0,12)")) == PROVED_TSTAR_SOLITARY
    assert tstar_by_grading(LieAlgebra.abelian(2)) == PROVED_TSTAR_SOLITARY
    # weight-zero piece su(2): T*su(2) is not T*-solitary
    s = alg("(23,-13,12,0)")
    N = exact.diag(list(fr(0, 0, 0, 1)))
    assert tstar_by_grading(s, N) == INCONCLUSIVE
    assert tstar_by_grading(s, exact.diag(list(fr(0, 0, 0, -1)))) == INCONCLUSIVE


# ---------------------------------------------------------------------------
# JSON


def test_nik_json_roundtrip():
    res = metric_nikolayevsky(alg(FILIFORM4), met("e1.e4+e2.e3", 4))
    data = nik_to_json(res)
    assert data["lambda"] == ["1/3", "2/3", "1", "4/3"] and data["l"] == "5/3"
    back = nik_from_json(data)
    assert isinstance(back, NikResult)
    assert (back.path, back.lam, back.l, back.certified) == (res.path, res.lam, res.l, True)
    assert nik_to_json(back) == data
