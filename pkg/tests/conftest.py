from __future__ import annotations

import random
from fractions import Fraction

import pytest
from hypothesis import HealthCheck, settings

from solitary import exact
from solitary.corpus import corpus_algebras
from solitary.lie import LieAlgebra, parse_salamon
from solitary.metric import Metric, adinvariant_forms, parse_metric

settings.register_profile(
    "default",
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow, HealthCheck.data_too_large],
)
settings.load_profile("default")

# acceptance lines collected by tests/test_acceptance.py
ACCEPTANCE_LINES: dict[int, str] = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(ACCEPTANCE_LINES):
        terminalreporter.write_line(ACCEPTANCE_LINES[k])


def alg(text: str) -> LieAlgebra:
    return parse_salamon(text)


def met(text: str, n: int) -> Metric:
    return parse_metric(text, n)


def F(x) -> Fraction:
    return Fraction(x)


# ---------------------------------------------------------------------------
# random metric Lie algebras


def change_basis(a: LieAlgebra, A) -> LieAlgebra:
    """Structure constants of ``a`` in the basis given by the columns of ``A``."""
    n = a.dim
    Ainv = exact.inverse(A)
    cols = exact.transpose(A)
    triples = []
    for i in range(n):
        for j in range(i + 1, n):
            w = exact.matvec(Ainv, a.bracket(cols[i], cols[j]))
            triples.extend((i, j, k, c) for k, c in enumerate(w) if c)
    return LieAlgebra.from_triples(n, triples, a.field, check=False)


def pull_back_metric(G: Metric, A) -> Metric:
    return Metric.from_matrix(exact.matmul(exact.transpose(A), exact.matmul(G.G, A)), G.field)


def random_unimodular(n: int, rng: random.Random, steps: int = 6):
    """Product of elementary integer matrices, so always invertible."""
    A = exact.identity(n)
    for _ in range(steps):
        i, j = rng.sample(range(n), 2) if n > 1 else (0, 0)
        if i == j:
            continue
        c = rng.choice([-2, -1, 1, 2])
        for r in range(n):
            A[r][j] += c * A[r][i]
    for i in range(n):
        if rng.random() < 0.3:
            for r in range(n):
                A[r][i] = -A[r][i]
    return A


def random_invariant_metric(a: LieAlgebra, rng: random.Random, tries: int = 30) -> Metric | None:
    forms = adinvariant_forms(a)
    if not forms:
        return None
    n = a.dim
    for _ in range(tries):
        coeffs = [rng.randint(-3, 3) for _ in forms]
        B = exact.mat_lincomb(coeffs, forms, n, n)
        if exact.det(B) != 0:
            return Metric.from_matrix(B)
    return None


def random_skew(m: int, rng: random.Random):
    S = exact.zeros(m, m)
    for i in range(m):
        for j in range(i + 1, m):
            c = Fraction(rng.randint(-3, 3))
            S[i][j], S[j][i] = c, -c
    return S


def random_oscillator(rng: random.Random, m: int | None = None):
    """Double extension of an abelian ``(d, g_d)`` by a line acting by a skew map."""
    from solitary.constructions import DoubleExtensionData, double_extension

    m = m if m is not None else rng.randint(1, 4)
    signs = [rng.choice([-1, 1]) for _ in range(m)]
    g_d = Metric.from_matrix(exact.diag([Fraction(s) for s in signs]))
    S = random_skew(m, rng)
    pi = exact.matmul(g_d.inverse, S)
    data = DoubleExtensionData(LieAlgebra.abelian(m), g_d, LieAlgebra.abelian(1), (exact.freeze(pi),))
    return double_extension(data)


_CORPUS_METRIC = None


def corpus_metric_pairs(max_dim: int = 10):
    """Corpus algebras that come with a metric (cached)."""
    global _CORPUS_METRIC
    if _CORPUS_METRIC is None:
        _CORPUS_METRIC = [(i, a, G) for i, a, G in corpus_algebras(with_metric=True) if G is not None]
    return [(i, a, G) for i, a, G in _CORPUS_METRIC if a.dim <= max_dim]


_CORPUS_ALL = None


def corpus_all(max_dim: int = 12):
    global _CORPUS_ALL
    if _CORPUS_ALL is None:
        _CORPUS_ALL = list(corpus_algebras())
    return [(i, a) for i, a, _ in _CORPUS_ALL if a.dim <= max_dim]


@pytest.fixture
def rng():
    return random.Random(20261016)


_REPORT = None


def full_report():
    """One run of the whole corpus, shared between test modules."""
    global _REPORT
    if _REPORT is None:
        from solitary.corpus import run_corpus

        _REPORT = run_corpus()
    return _REPORT
