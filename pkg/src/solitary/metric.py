"""Metrics on Lie algebras: ad-invariance, S_g, D_g and the solitary verdict."""

from __future__ import annotations

import itertools
import random
import re
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Sequence

from . import exact
from .exact import FIELD_Q, Matrix
from .lie import (
    LieAlgebra,
    MapSpace,
    Subspace,
    center,
    derivation_space,
    derived_subalgebra,
    is_adinvariant_endo,
    is_ideal,
    subalgebra,
)


class MetricSyntaxError(ValueError):
    pass


class MetricError(ValueError):
    """Raised when an operation needs a nondegenerate ad-invariant metric."""


class NotApplicable(ValueError):
    pass


SOLITARY = "Solitary"
WEAKLY_SOLITARY = "WeaklySolitary"
NEITHER = "Neither"


@dataclass(frozen=True)
class Metric:
    """A symmetric bilinear form stored as a frozen Gram matrix."""

    matrix: tuple
    field: str = FIELD_Q

    @classmethod
    def from_matrix(cls, G: Matrix, field: str = FIELD_Q) -> "Metric":
        n = len(G)
        M = [[exact.coerce(G[i][j], field) for j in range(n)] for i in range(n)]
        for i in range(n):
            for j in range(i + 1, n):
                if M[i][j] != M[j][i]:
                    raise MetricError(f"Gram matrix is not symmetric at ({i + 1},{j + 1})")
        return cls(exact.freeze(M), field)

    @property
    def dim(self) -> int:
        return len(self.matrix)

    @property
    def G(self) -> Matrix:
        return [list(r) for r in self.matrix]

    @cached_property
    def determinant(self):
        return exact.det(self.G)

    @property
    def nondegenerate(self) -> bool:
        return self.determinant != 0

    @cached_property
    def inverse(self) -> Matrix:
        return exact.inverse(self.G)

    def scaled(self, c) -> "Metric":
        return Metric.from_matrix(exact.mat_scale(exact.coerce(c, self.field), self.G), self.field)

    def pair(self, x: Sequence, y: Sequence):
        return sum((a * b for a, b in zip(x, exact.matvec(self.G, y)) if a), Fraction(0))

    def __str__(self):
        return render_metric(self)


def _as_matrix(G) -> Matrix:
    if isinstance(G, Metric):
        return G.G
    return [list(r) for r in G]


# ---------------------------------------------------------------------------
# text and JSON forms

_TERM = re.compile(
    r"\s*(?P<sign>[+-])?\s*(?:(?P<coef>\d+(?:/\d+)?)\s*\*\s*)?e\s*(?P<i>\d+)\s*\.\s*e\s*(?P<j>\d+)\s*"
)


def parse_metric(text: str, dim: int, field: str = FIELD_Q) -> Metric:
    """Parse a sum of ``[c*]ei.ej`` terms; repeated pairs add up."""
    s = text.replace("−", "-").strip()
    G = exact.zeros(dim, dim)
    pos = 0
    first = True
    while pos < len(s):
        m = _TERM.match(s, pos)
        if not m or m.end() == pos:
            raise MetricSyntaxError(f"cannot read metric term at position {pos}: {s[pos:pos + 12]!r}")
        if not first and m.group("sign") is None:
            raise MetricSyntaxError(f"expected '+' or '-' at position {pos}")
        first = False
        c = Fraction(m.group("coef")) if m.group("coef") else Fraction(1)
        if m.group("sign") == "-":
            c = -c
        i, j = int(m.group("i")), int(m.group("j"))
        if not (1 <= i <= dim and 1 <= j <= dim):
            raise MetricSyntaxError(f"index out of range 1..{dim} in e{i}.e{j}")
        G[i - 1][j - 1] += c
        if i != j:
            G[j - 1][i - 1] += c
        pos = m.end()
    return Metric.from_matrix(G, field)


def metric_from_triples(dim: int, triples, field: str = FIELD_Q) -> Metric:
    """1-based ``(i, j, c)`` triples with symmetric completion."""
    G = [[None] * dim for _ in range(dim)]
    for i, j, c in triples:
        if not (1 <= i <= dim and 1 <= j <= dim):
            raise MetricSyntaxError(f"index out of range 1..{dim}: ({i},{j})")
        c = exact.coerce(c, field)
        for a, b in ((i - 1, j - 1), (j - 1, i - 1)):
            if G[a][b] is not None and G[a][b] != c:
                raise MetricSyntaxError(f"conflicting entries for ({i},{j})")
            G[a][b] = c
    zero = exact.coerce(0, field)
    return Metric.from_matrix([[zero if x is None else x for x in r] for r in G], field)


def render_metric(metric: Metric) -> str:
    G = metric.matrix
    terms = []
    for i in range(metric.dim):
        for j in range(i, metric.dim):
            c = G[i][j]
            if not c:
                continue
            atom = f"e{i + 1}.e{j + 1}"
            if exact.is_rational(c):
                c = exact.real_part(c)
                body = atom if abs(c) == 1 else f"{abs(c)}*{atom}"
                sign = "-" if c < 0 else "+"
            else:
                body = f"({exact.format_scalar(c)})*{atom}"
                sign = "+"
            terms.append((sign, body))
    if not terms:
        return "0"
    out = ("-" if terms[0][0] == "-" else "") + terms[0][1]
    for sign, body in terms[1:]:
        out += sign + body
    return out


def metric_to_json(metric: Metric) -> dict:
    G = metric.matrix
    return {
        "entries": [
            {"i": i + 1, "j": j + 1, "c": exact.format_scalar(G[i][j])}
            for i in range(metric.dim)
            for j in range(i, metric.dim)
            if G[i][j]
        ]
    }


def metric_from_json(data: dict, dim: int, field: str = FIELD_Q) -> Metric:
    triples = [(int(e["i"]), int(e["j"]), exact.parse_scalar(str(e["c"]), field)) for e in data.get("entries", [])]
    return metric_from_triples(dim, triples, field)


# ---------------------------------------------------------------------------
# checks and adjoints


def check_adinvariant(alg: LieAlgebra, G) -> list[tuple[int, int, int]]:
    """1-based triples ``(x, y, z)`` where ``g([x,y],z) != -g(y,[x,z])``."""
    G = _as_matrix(G)
    n = alg.dim
    # nonzero entries of each column of G
    gcol = [[(y, G[y][k]) for y in range(n) if G[y][k]] for k in range(n)]
    bad = set()
    for x in range(n):
        # M[y, z] = g(y, [x, z]); invariance says M is skew
        M: dict = {}
        for z in range(n):
            for k, c in alg.bracket_basis(x, z).items():
                for y, g in gcol[k]:
                    M[y, z] = M.get((y, z), 0) + g * c
        for (y, z), v in M.items():
            if v + M.get((z, y), 0):
                bad.add((x + 1, y + 1, z + 1))
                bad.add((x + 1, z + 1, y + 1))
    return sorted(bad)


def adjoint(f: Matrix, G) -> Matrix:
    """``f* = G^{-1} f^T G`` so that ``g(f x, y) = g(x, f* y)``."""
    Gm = _as_matrix(G)
    Ginv = G.inverse if isinstance(G, Metric) else exact.inverse(Gm)
    return exact.matmul(Ginv, exact.matmul(exact.transpose(f), Gm))


def is_selfadjoint(f: Matrix, G) -> bool:
    Gm = _as_matrix(G)
    GF = exact.matmul(Gm, f)
    return all(GF[i][j] == GF[j][i] for i in range(len(GF)) for j in range(i + 1, len(GF)))


def sigma_of(G) -> list[int] | None:
    """The involution ``sigma`` when ``G`` is sigma-diagonal and nondegenerate, else None."""
    Gm = _as_matrix(G)
    n = len(Gm)
    sigma = []
    for i in range(n):
        nz = [j for j in range(n) if Gm[i][j]]
        if len(nz) != 1:
            return None
        sigma.append(nz[0])
    if any(sigma[sigma[i]] != i for i in range(n)):
        return None
    return sigma


def require_adinvariant(alg: LieAlgebra, G: Metric):
    if not G.nondegenerate:
        raise MetricError("metric is degenerate")
    bad = check_adinvariant(alg, G)
    if bad:
        raise MetricError(f"metric is not ad-invariant, e.g. at {bad[0]}")


# ---------------------------------------------------------------------------
# S_g and D_g


def _sym_index(n: int) -> dict:
    idx = {}
    t = 0
    for a in range(n):
        for b in range(a, n):
            idx[(a, b)] = t
            idx[(b, a)] = t
            t += 1
    return idx


def adinvariant_form_equations(alg: LieAlgebra):
    """Equations ``B([x,y],z) + B(y,[x,z]) = 0`` on symmetric ``B`` (upper-triangle unknowns)."""
    n = alg.dim
    idx = _sym_index(n)
    t = alg.table
    for x in range(n):
        for y in range(n):
            bxy = t.get((x, y), {})
            for z in range(y, n):
                e: dict = {}
                for k, c in bxy.items():
                    v = idx[(k, z)]
                    e[v] = e.get(v, 0) + c
                for k, c in t.get((x, z), {}).items():
                    v = idx[(y, k)]
                    e[v] = e.get(v, 0) + c
                e = {v: c for v, c in e.items() if c}
                if e:
                    yield e


def _sym_from_vector(n: int, vec: Sequence) -> Matrix:
    idx = _sym_index(n)
    return [[vec[idx[(a, b)]] for b in range(n)] for a in range(n)]


def adinvariant_forms(alg: LieAlgebra) -> list[Matrix]:
    """Basis of the symmetric ad-invariant bilinear forms (possibly degenerate)."""
    n = alg.dim
    vecs = exact.kernel_from_equations(adinvariant_form_equations(alg), n * (n + 1) // 2)
    return [_sym_from_vector(n, v) for v in vecs]


def selfadjoint_adinvariant_space(alg: LieAlgebra, G: Metric, check: bool = True) -> MapSpace:
    """``S_g``: ad-invariant self-adjoint endomorphisms.

    These are exactly ``G^{-1} B`` for ``B`` a symmetric ad-invariant form.
    """
    if check:
        require_adinvariant(alg, G)
    n = alg.dim
    return MapSpace.spanned_by(n, n, (exact.matmul(G.inverse, B) for B in adinvariant_forms(alg)))


def symmetrized_derivation_space(
    alg: LieAlgebra, G: Metric, der: MapSpace | None = None, check: bool = True
) -> MapSpace:
    """``D_g``: the span of ``D + D*`` over derivations ``D``."""
    if check:
        require_adinvariant(alg, G)
    n = alg.dim
    der = der if der is not None else derivation_space(alg)
    mats = (exact.mat_add(D, adjoint(D, G)) for D in der.matrices())
    return MapSpace.spanned_by(n, n, mats)


@dataclass(frozen=True)
class SolitaryVerdict:
    status: str
    dim_s: int
    dim_d: int
    witness: tuple | None = None
    id_in_d: bool = False


def classify_solitary(alg: LieAlgebra, G: Metric) -> SolitaryVerdict:
    require_adinvariant(alg, G)
    S = selfadjoint_adinvariant_space(alg, G, check=False)
    D = symmetrized_derivation_space(alg, G, check=False)
    n = alg.dim
    ident = exact.identity(n, exact.coerce(1, alg.field))
    id_in_d = D.contains(ident)
    if not D.issubset(S):
        raise ArithmeticError("D + D* failed to be ad-invariant; the metric checks are inconsistent")
    if S.dim == D.dim:
        return SolitaryVerdict(SOLITARY, S.dim, D.dim, None, id_in_d)
    D_id = MapSpace.spanned_by(n, n, list(D.matrices()) + [ident])
    status = WEAKLY_SOLITARY if S.issubset(D_id) else NEITHER
    ref = D if status == WEAKLY_SOLITARY else D_id
    witness = next(M for M in S.basis if not ref.contains([list(r) for r in M]))
    return SolitaryVerdict(status, S.dim, D.dim, witness, id_in_d)


def metric_transport(alg: LieAlgebra, G: Metric, H: Metric) -> Matrix:
    """``tau = G^{-1} H``; verifies it carries ``S_G, D_G`` onto ``S_H, D_H``."""
    require_adinvariant(alg, G)
    require_adinvariant(alg, H)
    tau = exact.matmul(G.inverse, H.G)
    if not is_selfadjoint(tau, G) or not is_adinvariant_endo(alg, tau):
        raise ArithmeticError("G^{-1}H is not a self-adjoint ad-invariant map")
    tinv = exact.inverse(tau)
    SG, SH = selfadjoint_adinvariant_space(alg, G), selfadjoint_adinvariant_space(alg, H)
    DG, DH = symmetrized_derivation_space(alg, G), symmetrized_derivation_space(alg, H)
    n = alg.dim
    moved_S = MapSpace.spanned_by(n, n, (exact.matmul(tinv, M) for M in SG.matrices()))
    moved_D = MapSpace.spanned_by(n, n, (exact.matmul(tinv, M) for M in DG.matrices()))
    if not (moved_S.same_span(SH) and moved_D.same_span(DH)):
        raise ArithmeticError("transport of S_g or D_g failed")
    return tau


def all_derivations_traceless(alg: LieAlgebra, der: MapSpace | None = None) -> bool:
    der = der if der is not None else derivation_space(alg)
    return all(exact.trace(D) == 0 for D in der.matrices())


# ---------------------------------------------------------------------------
# metric search

SEARCH_BUDGET = 2000
RANDOM_TRIES = 40
RANDOM_RANGE = 10**6


def _lattice_points(r: int):
    """Integer points by increasing max-norm, lexicographic within each shell."""
    s = 1
    while True:
        for p in itertools.product(range(-s, s + 1), repeat=r):
            if max(abs(x) for x in p) == s:
                yield p
        s += 1


def _search(r: int, accept, skip: int, seed: int):
    hits = 0
    for count, p in enumerate(_lattice_points(r)):
        if count >= SEARCH_BUDGET:
            break
        if accept(p):
            if hits == skip:
                return p
            hits += 1
    rng = random.Random(seed)
    for _ in range(RANDOM_TRIES + skip):
        p = tuple(rng.randint(-RANDOM_RANGE, RANDOM_RANGE) for _ in range(r))
        if accept(p):
            if hits == skip:
                return p
            hits += 1
    return None


def find_adinvariant_metric(
    alg: LieAlgebra,
    sigma: Sequence[int] | None = None,
    skip: int = 0,
    seed: int = 0,
) -> Metric | None:
    """A nondegenerate ad-invariant metric, optionally sigma-diagonal (0-based ``sigma``).

    ``skip`` passes over that many earlier hits in the deterministic order,
    which gives further (generally non-proportional) metrics.
    """
    n = alg.dim
    forms = adinvariant_forms(alg)
    if sigma is not None:
        forms = _restrict_sigma(forms, n, sigma)
    if not forms:
        return None if n else Metric.from_matrix([], alg.field)
    ident = exact.identity(n)
    if skip == 0 and sigma is None and MapSpace.spanned_by(n, n, forms).contains(ident):
        return Metric.from_matrix(ident, alg.field)
    r = len(forms)
    if sigma is not None:
        funcs = [[B[a][sigma[a]] for B in forms] for a in range(n)]

        def accept(p):
            return all(sum((c * f for c, f in zip(p, fn) if f), Fraction(0)) for fn in funcs)
    else:
        def accept(p):
            return exact.det(exact.mat_lincomb(p, forms, n, n)) != 0

    p = _search(r, accept, skip, seed)
    if p is None:
        return None
    return Metric.from_matrix(exact.mat_lincomb(p, forms, n, n), alg.field)


def _restrict_sigma(forms: list[Matrix], n: int, sigma: Sequence[int], assigned: Sequence[int] | None = None):
    """Forms in the span of ``forms`` vanishing off the sigma pattern on assigned rows."""
    rows = range(n) if assigned is None else assigned
    eqs = []
    for a in rows:
        for b in range(n):
            if b != sigma[a]:
                eq = [B[a][b] for B in forms]
                if any(eq):
                    eqs.append(eq)
    if not eqs:
        return list(forms)
    ker = exact.kernel_basis(eqs, len(forms))
    return [exact.mat_lincomb(k, forms, n, n) for k in ker]


def find_sigma_diagonal_metric(alg: LieAlgebra) -> tuple[Metric, list[int]] | None:
    """Search involutions compatible with the form-space support, in backtracking order."""
    n = alg.dim
    forms = adinvariant_forms(alg)
    if not forms:
        return None
    support = {(a, b) for B in forms for a in range(n) for b in range(n) if B[a][b]}

    def viable(sigma, assigned):
        sub = _restrict_sigma(forms, n, sigma, assigned)
        return sub and all(any(B[a][sigma[a]] for B in sub) for a in assigned)

    def extend(sigma, assigned):
        free = [a for a in range(n) if sigma[a] is None]
        if not free:
            return list(sigma)
        a = free[0]
        options = [b for b in free if b != a and (a, b) in support]
        if (a, a) in support:
            options.append(a)
        for b in options:
            sigma[a], sigma[b] = b, a
            new = assigned + ([a] if a == b else [a, b])
            if viable(sigma, new):
                found = extend(sigma, new)
                if found is not None:
                    return found
            sigma[a] = sigma[b] = None
        return None

    sigma = extend([None] * n, [])
    if sigma is None:
        return None
    metric = find_adinvariant_metric(alg, sigma=sigma)
    if metric is None:
        return None
    return metric, sigma


# ---------------------------------------------------------------------------
# central split and self-adjoint classification


def central_split(alg: LieAlgebra, G: Metric) -> tuple[Subspace, Subspace]:
    """``g = m + m^perp`` with ``m`` a complement of ``z & g'`` in ``z``."""
    require_adinvariant(alg, G)
    n = alg.dim
    z = center(alg)
    zd = z.intersection(derived_subalgebra(alg))
    if zd.dim == z.dim:
        raise NotApplicable("the center lies in the derived algebra")
    chosen = Subspace.span(n, zd.basis)
    m_vecs = []
    for v in z.basis:
        if not chosen.contains(v):
            m_vecs.append(list(v))
            chosen = Subspace.span(n, list(chosen.basis) + [list(v)])
    m = Subspace.span(n, m_vecs)
    Gm = [[G.pair(u, v) for v in m.basis] for u in m.basis]
    if exact.det(Gm) == 0:
        raise ArithmeticError("chosen central complement is degenerate")
    perp_eqs = [exact.matvec(G.G, v) for v in m.basis]
    gt = Subspace.span(n, exact.kernel_basis(perp_eqs, n))
    if is_ideal(alg, gt) is not None:
        raise ArithmeticError("orthogonal complement of m is not an ideal")
    sub = subalgebra(alg, gt.basis)
    if not center(sub).issubset(derived_subalgebra(sub)):
        raise ArithmeticError("the complement still has center outside its derived algebra")
    return m, gt


@dataclass(frozen=True)
class ScalarPlusNilpotent:
    a: Fraction
    nilpotent: tuple


@dataclass(frozen=True)
class ComplexPair:
    a: Fraction
    b: Fraction
    J: tuple
    nilpotent: tuple


@dataclass(frozen=True)
class Unclassified:
    note: str


def _poly_of_matrix(p: Sequence, M: Matrix) -> Matrix:
    n = len(M)
    out = exact.zeros(n, n)
    for c in reversed(p):
        out = exact.matmul(out, M)
        for i in range(n):
            out[i][i] += c
    return out


def _rational_sqrt(q: Fraction) -> Fraction | None:
    from math import isqrt

    if q < 0:
        return None
    num, den = q.numerator, q.denominator
    rn, rd = isqrt(num), isqrt(den)
    if rn * rn == num and rd * rd == den:
        return Fraction(rn, rd)
    return None


def classify_selfadjoint(alg: LieAlgebra, G: Metric, phi: Matrix):
    """Closed-form shape of an element of ``S_g`` on an irreducible algebra."""
    n = alg.dim
    if not (is_adinvariant_endo(alg, phi) and is_selfadjoint(phi, G)):
        raise ValueError("phi is not an ad-invariant self-adjoint endomorphism")
    cp = exact.charpoly(phi)
    roots, split = exact.rational_roots(cp)
    if split and len(roots) == 1:
        a = roots[0][0]
        N = exact.mat_sub(phi, exact.mat_scale(a, exact.identity(n)))
        if not exact.is_zero_matrix(_poly_of_matrix([0] * n + [1], N)):
            raise ArithmeticError("phi - a id is not nilpotent")
        return ScalarPlusNilpotent(a, exact.freeze(N))
    if roots:
        return Unclassified("several rational eigenvalues; the algebra is reducible")
    if n % 2:
        return Unclassified("odd dimension without rational eigenvalue")
    m = n // 2
    a = -cp[n - 1] / n
    # shift x = y + a and read off beta from the y^(n-2) coefficient
    shifted = exact.poly_shift(cp, a)
    beta = shifted[n - 2] / m
    target = [Fraction(1)]
    for _ in range(m):
        target = exact.poly_mul(target, [beta, Fraction(0), Fraction(1)])
    if beta <= 0 or shifted != target:
        return Unclassified("characteristic polynomial is not a power of one quadratic")
    b = _rational_sqrt(beta)
    if b is None:
        return Unclassified("imaginary part is not rational")
    q = [a * a + beta, -2 * a, Fraction(1)]
    dq = [-2 * a, Fraction(2)]
    S = [list(r) for r in phi]
    for _ in range(n + 1):
        pS = _poly_of_matrix(q, S)
        if exact.is_zero_matrix(pS):
            break
        S = exact.mat_sub(S, exact.matmul(pS, exact.inverse(_poly_of_matrix(dq, S))))
    else:
        raise ArithmeticError("Newton iteration for the semisimple part did not converge")
    J = exact.mat_scale(1 / b, exact.mat_sub(S, exact.mat_scale(a, exact.identity(n))))
    if exact.matmul(J, J) != exact.mat_scale(-1, exact.identity(n)):
        raise ArithmeticError("J does not square to -id")
    return ComplexPair(a, b, exact.freeze(J), exact.freeze(exact.mat_sub(phi, S)))
