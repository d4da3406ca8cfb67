"""Builders: direct sums, cotangents, double extensions, complex and real forms.

Also holds the direct decision procedure for T*-solitary algebras and the
reconstruction of a metric algebra as a double extension from a
nonnegative grading.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from . import exact
from .exact import FIELD_Q, FIELD_QI, GaussianRational, Matrix
from .grading import grading_from_derivation
from .lie import (
    LieAlgebra,
    MapSpace,
    algebra_from_json,
    algebra_to_json,
    check_jacobi,
    derivation_space,
    direct_sum as _lie_direct_sum,
    is_derivation,
    subalgebra,
)
from .metric import (
    Metric,
    adinvariant_forms,
    adjoint,
    check_adinvariant,
    metric_from_json,
    metric_to_json,
)


class ConstructionError(ValueError):
    pass


# ---------------------------------------------------------------------------
# direct sums


def direct_sum(a: LieAlgebra, b: LieAlgebra, Ga: Metric | None = None, Gb: Metric | None = None):
    """Block sum of two algebras; with metrics, also the orthogonal sum metric."""
    alg = _lie_direct_sum(a, b)
    if Ga is None and Gb is None:
        return alg
    if Ga is None or Gb is None:
        raise ConstructionError("give metrics for both summands or neither")
    n = alg.dim
    G = exact.zeros(n, n)
    for i in range(a.dim):
        for j in range(a.dim):
            G[i][j] = Ga.matrix[i][j]
    for i in range(b.dim):
        for j in range(b.dim):
            G[a.dim + i][a.dim + j] = Gb.matrix[i][j]
    return alg, Metric.from_matrix(G, alg.field)


# ---------------------------------------------------------------------------
# cotangent


@dataclass(frozen=True)
class CotangentPackage:
    """``T*g = g + g*`` in the basis ``(e_1..e_n, e^1..e^n)``."""

    base: LieAlgebra
    algebra: LieAlgebra
    metric: Metric
    projection: tuple

    @property
    def n(self) -> int:
        return self.base.dim


def cotangent(alg: LieAlgebra, verify: bool = True) -> CotangentPackage:
    """Cotangent algebra with ``[X, a] = -a o ad_X`` and the pairing metric."""
    n = alg.dim
    triples = list(alg.constants)
    for i in range(n):
        for j in range(n):
            # [e_i, e^j] = -sum_k c^j_{ik} e^k
            for k in range(n):
                c = alg.bracket_basis(i, k).get(j)
                if c:
                    triples.append((i, n + j, n + k, -c))
    T = LieAlgebra.from_triples(2 * n, triples, alg.field, check=False)
    one = exact.coerce(1, alg.field)
    G = [[exact.coerce(0, alg.field)] * (2 * n) for _ in range(2 * n)]
    P = [[exact.coerce(0, alg.field)] * (2 * n) for _ in range(2 * n)]
    for i in range(n):
        G[i][n + i] = G[n + i][i] = one
        P[n + i][n + i] = one
    pkg = CotangentPackage(alg, T, Metric.from_matrix(G, alg.field), exact.freeze(P))
    if verify:
        verify_cotangent(pkg)
    object.__setattr__(T, "checked", True)
    return pkg


def verify_cotangent(pkg: CotangentPackage) -> None:
    T, G, P = pkg.algebra, pkg.metric, [list(r) for r in pkg.projection]
    if check_jacobi(T):
        raise ConstructionError("cotangent fails the Jacobi identity")
    if check_adinvariant(T, G):
        raise ConstructionError("canonical metric is not ad-invariant")
    if not is_derivation(T, P):
        raise ConstructionError("projection onto g* is not a derivation")
    n2 = T.dim
    if exact.mat_add(P, adjoint(P, G)) != exact.identity(n2, exact.coerce(1, T.field)):
        raise ConstructionError("P + P* is not the identity")


# ---------------------------------------------------------------------------
# double extension


@dataclass(frozen=True)
class DoubleExtensionData:
    """Input ``(d, g_d, h, pi, g_h)`` with ``pi(H)`` in ``Der(d) & so(d, g_d)``."""

    d: LieAlgebra
    g_d: Metric
    h: LieAlgebra
    pi: tuple
    g_h: Metric | None = None

    def pi_matrices(self) -> list[Matrix]:
        return [[list(r) for r in M] for M in self.pi]

    def beta(self, x: Sequence, y: Sequence) -> list:
        """``beta(X, X')`` as a vector in ``h*``: ``H_a -> g_d(pi(H_a) X, X')``."""
        return [self.g_d.pair(exact.matvec(P, x), y) for P in self.pi_matrices()]


def validate_double_extension(data: DoubleExtensionData) -> None:
    d, h = data.d, data.h
    m = d.dim
    if len(data.pi) != h.dim:
        raise ConstructionError(f"need one pi matrix per h basis vector ({h.dim}), got {len(data.pi)}")
    if data.g_d.dim != m:
        raise ConstructionError("g_d has the wrong size")
    if m and not data.g_d.nondegenerate:
        raise ConstructionError("g_d is degenerate")
    if check_adinvariant(d, data.g_d):
        raise ConstructionError("g_d is not ad-invariant on d")
    pis = data.pi_matrices()
    for a, P in enumerate(pis):
        if len(P) != m or any(len(r) != m for r in P):
            raise ConstructionError(f"pi(H_{a + 1}) has the wrong size")
        if not is_derivation(d, P):
            raise ConstructionError(f"pi(H_{a + 1}) is not a derivation of d")
        GP = exact.matmul(data.g_d.G, P)
        if any(GP[i][j] + GP[j][i] for i in range(m) for j in range(m)):
            raise ConstructionError(f"pi(H_{a + 1}) is not skew for g_d")
    for a in range(h.dim):
        for b in range(a + 1, h.dim):
            comm = exact.mat_sub(exact.matmul(pis[a], pis[b]), exact.matmul(pis[b], pis[a]))
            img = exact.mat_lincomb([h.bracket_basis(a, b).get(k, 0) for k in range(h.dim)], pis, m, m)
            if comm != img:
                raise ConstructionError(f"pi is not a representation on (H_{a + 1}, H_{b + 1})")
    if data.g_h is not None:
        if data.g_h.dim != h.dim:
            raise ConstructionError("g_h has the wrong size")
        if check_adinvariant(h, data.g_h):
            raise ConstructionError("g_h is not ad-invariant on h")


def double_extension(data: DoubleExtensionData, validate: bool = True) -> tuple[LieAlgebra, Metric]:
    """``q = h + d + h*`` with its bracket and metric; basis order ``(h, d, h*)``."""
    if validate:
        validate_double_extension(data)
    d, h = data.d, data.h
    p, m = h.dim, d.dim
    field = d.field if m else h.field
    hd, dd, hs = 0, p, p + m
    triples = []
    for i, j, k, c in h.constants:
        triples.append((hd + i, hd + j, hd + k, c))
    pis = data.pi_matrices()
    for a in range(p):
        for x in range(m):
            for y in range(m):
                c = pis[a][y][x]
                if c:
                    triples.append((hd + a, dd + x, dd + y, c))
        # [H_a, h*_b] = -h*_b o ad_{H_a} = -sum_c c^b_{ac} h*_c
        for b in range(p):
            for cidx in range(p):
                c = h.bracket_basis(a, cidx).get(b)
                if c:
                    triples.append((hd + a, hs + b, hs + cidx, -c))
    for x in range(m):
        for y in range(x + 1, m):
            for k, c in d.bracket_basis(x, y).items():
                triples.append((dd + x, dd + y, dd + k, c))
            ex = [Fraction(0)] * m
            ey = [Fraction(0)] * m
            ex[x] = ey[y] = Fraction(1)
            for a, c in enumerate(data.beta(ex, ey)):
                if c:
                    triples.append((dd + x, dd + y, hs + a, c))
    n = 2 * p + m
    q = LieAlgebra.from_triples(n, triples, field, check=False)
    G = [[exact.coerce(0, field)] * n for _ in range(n)]
    for i in range(p):
        for j in range(p):
            if data.g_h is not None:
                G[hd + i][hd + j] = data.g_h.matrix[i][j]
        G[hd + i][hs + i] = G[hs + i][hd + i] = exact.coerce(1, field)
    for i in range(m):
        for j in range(m):
            G[dd + i][dd + j] = data.g_d.matrix[i][j]
    metric = Metric.from_matrix(G, field)
    if validate:
        if check_jacobi(q):
            raise ConstructionError("double extension fails the Jacobi identity")
        if check_adinvariant(q, metric):
            raise ConstructionError("double extension metric is not ad-invariant")
        object.__setattr__(q, "checked", True)
    return q, metric


def double_extension_to_json(data: DoubleExtensionData) -> dict:
    return {
        "d": algebra_to_json(data.d),
        "g_d": metric_to_json(data.g_d),
        "h": algebra_to_json(data.h),
        "pi": [[[exact.format_scalar(x) for x in row] for row in P] for P in data.pi],
        "g_h": None if data.g_h is None else metric_to_json(data.g_h),
    }


def double_extension_from_json(obj: dict) -> DoubleExtensionData:
    d = algebra_from_json(obj["d"])
    h = algebra_from_json(obj["h"])
    g_d = metric_from_json(obj.get("g_d", {"entries": []}), d.dim, d.field)
    pis = tuple(
        exact.freeze([[exact.parse_scalar(str(x), d.field) for x in row] for row in P]) for P in obj.get("pi", [])
    )
    g_h = obj.get("g_h")
    g_h = None if g_h is None else metric_from_json(g_h, h.dim, h.field)
    return DoubleExtensionData(d, g_d, h, pis, g_h)


def double_extension_from_grading(alg: LieAlgebra, G: Metric, N: Matrix):
    """Rebuild ``(g, G)`` as ``h + d + h*`` from a nonnegative co-compatible grading.

    Returns ``(data, zeta)`` where the columns of ``zeta`` are the images in
    ``g`` of the basis ``(h, d, h*)`` of the double extension; ``zeta`` is
    checked to be an isometric Lie algebra isomorphism.
    """
    n = alg.dim
    grading = grading_from_derivation(alg, N, G)
    weights = grading.weights
    if all(not x for row in N for x in row):
        raise ConstructionError("N is zero")
    if min(weights) < 0:
        raise ConstructionError("N has a negative eigenvalue")
    if min(weights) != 0:
        raise ConstructionError("N is not singular")
    l = grading.l
    if l is None or l <= 0:
        raise ConstructionError("grading is not co-compatible with a positive co-constant")
    if max(weights) != l:
        raise ConstructionError("top weight differs from the co-constant")
    H = [list(v) for v in grading.piece(0).basis]
    X = [list(v) for w, sub in grading.pieces if 0 < w < l for v in sub.basis]
    Y = [list(v) for v in grading.piece(l).basis]
    p, m = len(H), len(X)
    if len(Y) != p:
        raise ConstructionError("b_0 and b_l have different dimensions")
    # dual basis y_a of b_l with g(y_a, H_c) = delta
    E = [[G.pair(Y[b], H[c]) for b in range(p)] for c in range(p)]
    Einv = exact.inverse(E)
    ys = [exact.matvec(exact.transpose(Y), [Einv[b][a] for b in range(p)]) for a in range(p)]
    basis = H + X + ys
    B = exact.transpose(basis)

    def coords(v):
        c = exact.solve(B, v)
        if c is None:
            raise ArithmeticError("weight spaces do not span the algebra")
        return c

    h_alg = subalgebra(alg, H)
    d_triples = []
    for x in range(m):
        for y in range(x + 1, m):
            c = coords(alg.bracket(X[x], X[y]))
            if any(c[:p]):
                raise ConstructionError("bracket of d lands in b_0")
            for k in range(m):
                if c[p + k]:
                    d_triples.append((x, y, k, c[p + k]))
    d_alg = LieAlgebra.from_triples(m, d_triples, alg.field, check=False)
    g_d = Metric.from_matrix([[G.pair(X[a], X[b]) for b in range(m)] for a in range(m)], alg.field)
    if m and not g_d.nondegenerate:
        raise ConstructionError("induced metric on d is degenerate")
    pis = []
    for a in range(p):
        P = exact.zeros(m, m)
        for x in range(m):
            c = coords(alg.bracket(H[a], X[x]))
            if any(c[:p]) or any(c[p + m:]):
                raise ConstructionError("ad_H does not preserve d")
            for k in range(m):
                P[k][x] = c[p + k]
        pis.append(exact.freeze(P))
    data = DoubleExtensionData(d_alg, g_d, h_alg, tuple(pis), None)
    q, Gq = double_extension(data)
    Z = exact.transpose(basis)
    verify_isometric_isomorphism(q, Gq, alg, G, Z)
    return data, Z


def verify_isometric_isomorphism(q: LieAlgebra, Gq: Metric, g: LieAlgebra, G: Metric, Z: Matrix) -> None:
    n = q.dim
    cols = exact.transpose(Z)
    if exact.matmul(exact.transpose(Z), exact.matmul(G.G, Z)) != Gq.G:
        raise ConstructionError("zeta is not an isometry")
    for a in range(n):
        for b in range(a + 1, n):
            lhs = exact.matvec(Z, q.bracket(_unit(n, a), _unit(n, b)))
            rhs = g.bracket(cols[a], cols[b])
            if lhs != rhs:
                raise ConstructionError(f"zeta fails to preserve [{a + 1},{b + 1}]")


def _unit(n, i):
    v = [Fraction(0)] * n
    v[i] = Fraction(1)
    return v


# ---------------------------------------------------------------------------
# complex and real forms


def complexify(alg: LieAlgebra) -> LieAlgebra:
    return alg.with_field(FIELD_QI)


def complexify_metric(G: Metric) -> Metric:
    return Metric.from_matrix(G.G, FIELD_QI)


def realify(alg: LieAlgebra) -> tuple[LieAlgebra, Matrix]:
    """Underlying rational algebra on ``(x_1..x_n, i x_1..i x_n)`` and its ``J``."""
    n = alg.dim
    triples = []
    for a, b, k, c in alg.constants:
        u, v = exact.real_part(c), exact.imag_part(c)
        for (i, j, sign) in ((a, b, 1), (n + a, n + b, -1)):
            if u:
                triples.append((i, j, k, sign * u))
            if v:
                triples.append((i, j, n + k, sign * v))
        # [x_a, i x_b] = [i x_a, x_b] = i [x_a, x_b]
        for (i, j) in ((a, n + b), (n + a, b)):
            if u:
                triples.append((i, j, n + k, u))
            if v:
                triples.append((i, j, k, -v))
    R = LieAlgebra.from_triples(2 * n, triples, FIELD_Q, check=alg.checked)
    J = exact.zeros(2 * n, 2 * n)
    for k in range(n):
        J[n + k][k] = Fraction(1)
        J[k][n + k] = Fraction(-1)
    return R, J


def realify_metric(G: Metric) -> Metric:
    """Real part of a complex bilinear metric on the realified space."""
    n = G.dim
    R = exact.zeros(2 * n, 2 * n)
    for a in range(n):
        for b in range(n):
            c = G.matrix[a][b]
            u, v = exact.real_part(c), exact.imag_part(c)
            R[a][b] = u
            R[a][n + b] = -v
            R[n + a][b] = -v
            R[n + a][n + b] = -u
    return Metric.from_matrix(R, FIELD_Q)


# ---------------------------------------------------------------------------
# T*-solitary


def gstar_derivation_equations(alg: LieAlgebra):
    """Equations for ``D: g -> g*`` with ``D[X,Y](Z) = DX([Y,Z]) - DY([X,Z])``.

    Unknown ``D_{ab} = D(e_a)(e_b)`` has index ``a*n + b``.
    """
    n = alg.dim
    for i in range(n):
        for j in range(i + 1, n):
            for l in range(n):
                e: dict = {}
                for k, c in alg.bracket_basis(i, j).items():
                    v = k * n + l
                    e[v] = e.get(v, 0) + c
                for mm, c in alg.bracket_basis(j, l).items():
                    v = i * n + mm
                    e[v] = e.get(v, 0) - c
                for mm, c in alg.bracket_basis(i, l).items():
                    v = j * n + mm
                    e[v] = e.get(v, 0) + c
                e = {v: c for v, c in e.items() if c}
                if e:
                    yield e


def gstar_derivations(alg: LieAlgebra) -> MapSpace:
    n = alg.dim
    vecs = exact.kernel_from_equations(gstar_derivation_equations(alg), n * n)
    return MapSpace.from_vectors(n, n, vecs)


@dataclass(frozen=True)
class TstarResult:
    solitary: bool
    dim_phi: int
    dim_psi: int
    witness: tuple | None = None

    def __bool__(self):
        return self.solitary


def tstar_solitary(alg: LieAlgebra) -> TstarResult:
    """Decide whether every symmetric ad-invariant ``g -> g*`` is ``D + D^T``."""
    n = alg.dim
    phi = MapSpace.spanned_by(n, n, adinvariant_forms(alg))
    psi = MapSpace.spanned_by(
        n, n, (exact.mat_add(D, exact.transpose(D)) for D in gstar_derivations(alg).matrices())
    )
    for M in phi.basis:
        if not psi.contains([list(r) for r in M]):
            return TstarResult(False, phi.dim, psi.dim, M)
    return TstarResult(True, phi.dim, psi.dim, None)
