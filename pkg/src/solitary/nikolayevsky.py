"""Nikolayevsky and metric Nikolayevsky derivations on certifiable paths.

Every result carries a certificate: the residuals ``Tr(N psi) - Tr(psi)`` for
a basis ``psi`` of the full space being checked (``Der`` or ``Der & co``).
Nothing is returned unless all residuals vanish and ``N`` lies in the space.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from . import exact
from .exact import Matrix
from .grading import (
    CoCompatibilityError,
    Grading,
    GradingLawViolated,
    NotDiagonalizable,
    eigenspaces,
    grading_from_derivation,
)
from .lie import (
    LieAlgebra,
    MapSpace,
    derivation_equations,
    derivation_space,
    is_nice,
    subalgebra,
)
from .metric import Metric, sigma_of

__all__ = [
    "Unsupported",
    "CertificateError",
    "NikResult",
    "SymmetricDiagramMatrix",
    "Grading",
    "NotDiagonalizable",
    "GradingLawViolated",
    "CoCompatibilityError",
    "eigenspaces",
    "grading_from_derivation",
    "der_cap_co",
    "conformal_factor",
    "symmetric_diagram_matrix",
    "certify",
    "nikolayevsky_nice",
    "metric_nikolayevsky",
    "cotangent_nikolayevsky",
    "solitary_by_positivity",
    "tstar_by_grading",
    "nik_to_json",
    "nik_from_json",
]

TRACELESS_ZERO = "TracelessZero"
DIAGONAL_PROJECTION = "DiagonalProjection"
COTANGENT_FORMULA = "CotangentFormula"

PROVED_SOLITARY = "ProvedSolitary"
PROVED_TSTAR_SOLITARY = "ProvedTstarSolitary"
INCONCLUSIVE = "Inconclusive"


class Unsupported(ValueError):
    """No certifiable path applies to the input."""


class CertificateError(ArithmeticError):
    """A computed candidate failed its trace certificate."""


@dataclass(frozen=True)
class NikResult:
    path: str
    lam: tuple
    l: Fraction | None
    certificate: tuple
    warning: str | None = None

    @property
    def dim(self) -> int:
        return len(self.lam)

    @property
    def matrix(self) -> Matrix:
        return exact.diag(list(self.lam))

    @property
    def certified(self) -> bool:
        return not any(self.certificate)

    @property
    def trace(self) -> Fraction:
        return sum(self.lam, Fraction(0))


# ---------------------------------------------------------------------------
# Der & co


def conformal_factor(D: Matrix, G) -> Fraction | None:
    """The scalar ``l`` with ``D^T G + G D = l G``, or None if there is none."""
    Gm = G.G if isinstance(G, Metric) else G
    S = exact.mat_add(exact.matmul(exact.transpose(D), Gm), exact.matmul(Gm, D))
    n = len(Gm)
    l = None
    for i in range(n):
        for j in range(n):
            if Gm[i][j]:
                q = S[i][j] / Gm[i][j]
                if l is None:
                    l = q
                elif q != l:
                    return None
    if l is None:
        return None
    if any(S[i][j] != l * Gm[i][j] for i in range(n) for j in range(n)):
        return None
    return Fraction(l) if exact.is_rational(l) else l


def der_cap_co(alg: LieAlgebra, G: Metric) -> MapSpace:
    """Derivations that are conformal for ``G``, solved jointly in ``(D, l)``."""
    if not G.nondegenerate:
        raise ValueError("metric is degenerate")
    n = alg.dim
    lvar = n * n
    Gm = G.G

    def equations():
        yield from derivation_equations(alg)
        # (D^T G + G D)_{ij} - l G_{ij} = 0, i <= j
        for i in range(n):
            for j in range(i, n):
                e: dict = {}
                for k in range(n):
                    if Gm[k][j]:
                        v = k * n + i
                        e[v] = e.get(v, 0) + Gm[k][j]
                    if Gm[i][k]:
                        v = k * n + j
                        e[v] = e.get(v, 0) + Gm[i][k]
                if Gm[i][j]:
                    e[lvar] = e.get(lvar, 0) - Gm[i][j]
                e = {v: c for v, c in e.items() if c}
                if e:
                    yield e

    vecs = exact.kernel_from_equations(equations(), n * n + 1)
    return MapSpace.from_vectors(n, n, [v[:lvar] for v in vecs])


# ---------------------------------------------------------------------------
# diagram matrices


@dataclass(frozen=True)
class SymmetricDiagramMatrix:
    n: int
    sigma: tuple | None
    derivation_rows: tuple
    pairing_rows: tuple
    F: tuple
    weights: tuple

    @property
    def rows(self) -> list[list]:
        return [list(r) for r in self.derivation_rows + self.pairing_rows]


def _sigma_orbits(sigma: Sequence[int]) -> list[tuple[int, int]]:
    seen, out = set(), []
    for p, q in enumerate(sigma):
        if p not in seen:
            seen.update((p, q))
            out.append((p, q))
    return out


def pairing_rows(sigma: Sequence[int]) -> list[list]:
    """``e_p + e_{sigma p} - e_q - e_{sigma q}`` for consecutive orbits."""
    n = len(sigma)
    orbits = _sigma_orbits(sigma)
    rows = []
    for (p, sp), (q, sq) in zip(orbits, orbits[1:]):
        r = [Fraction(0)] * n
        r[p] += 1
        r[sp] += 1
        r[q] -= 1
        r[sq] -= 1
        rows.append(r)
    return rows


def symmetric_diagram_matrix(alg: LieAlgebra, sigma: Sequence[int] | None = None) -> SymmetricDiagramMatrix:
    nice, diagram = is_nice(alg)
    if not nice:
        raise Unsupported("basis is not nice")
    drows = [list(map(Fraction, r)) for r in diagram.derivation_rows()]
    prows = pairing_rows(sigma) if sigma is not None else []
    allrows = drows + prows
    F = [allrows[i] for i in exact.row_basis(allrows)] if allrows else []
    return SymmetricDiagramMatrix(
        alg.dim,
        None if sigma is None else tuple(sigma),
        tuple(map(tuple, drows)),
        tuple(map(tuple, prows)),
        tuple(map(tuple, F)),
        tuple([Fraction(1)] * alg.dim),
    )


# ---------------------------------------------------------------------------
# certificates


def certify(N: Matrix, space: MapSpace) -> tuple:
    """Residuals ``Tr(N psi) - Tr(psi)`` over a basis of ``space``."""
    return tuple(exact.trace(exact.matmul(N, psi)) - exact.trace(psi) for psi in space.matrices())


def _finish(path: str, lam: Sequence, space: MapSpace, l, warning=None) -> NikResult:
    lam = tuple(Fraction(x) for x in lam)
    N = exact.diag(list(lam))
    if not space.contains(N):
        raise CertificateError(f"{path}: candidate is not in the checked derivation space")
    residuals = certify(N, space)
    if any(residuals):
        raise CertificateError(f"{path}: trace certificate fails with residuals {list(map(str, residuals))}")
    return NikResult(path, lam, l, residuals, warning)


# ---------------------------------------------------------------------------
# the derivations


def nikolayevsky_nice(alg: LieAlgebra) -> NikResult:
    """Nikolayevsky derivation of a nice algebra by projection onto the diagonal derivations."""
    sdm = symmetric_diagram_matrix(alg)
    lam = exact.project_onto_kernel([Fraction(1)] * alg.dim, [list(r) for r in sdm.F])
    return _finish(DIAGONAL_PROJECTION, lam, derivation_space(alg), None)


def metric_nikolayevsky(alg: LieAlgebra, G: Metric, cotangent_base: LieAlgebra | None = None) -> NikResult:
    """Metric Nikolayevsky derivation of ``(alg, G)``.

    Tries, in order: all of ``Der & co`` traceless (``N = 0``); a nice basis
    in which ``G`` pairs basis vectors through an involution (projection);
    and, if ``cotangent_base`` is given with ``alg`` its cotangent under the
    canonical metric, the cotangent formula.
    """
    if G.dim != alg.dim:
        raise ValueError("metric and algebra dimensions differ")
    space = der_cap_co(alg, G)
    n = alg.dim
    if all(exact.trace(psi) == 0 for psi in space.matrices()):
        return _finish(TRACELESS_ZERO, [0] * n, space, Fraction(0))
    sigma = sigma_of(G.G)
    if sigma is not None and is_nice(alg)[0]:
        sdm = symmetric_diagram_matrix(alg, sigma)
        lam = exact.project_onto_kernel([Fraction(1)] * n, [list(r) for r in sdm.F])
        return _finish(DIAGONAL_PROJECTION, lam, space, Fraction(lam[0] + lam[sigma[0]]))
    if cotangent_base is not None:
        return cotangent_nikolayevsky(cotangent_base)
    raise Unsupported("no certifiable path: not traceless, not nice with an involutive metric, not a cotangent")


def cotangent_nikolayevsky(alg: LieAlgebra, ntilde: NikResult | Sequence | None = None) -> NikResult:
    """Metric Nikolayevsky derivation of the cotangent of ``alg`` with its canonical metric.

    ``ntilde`` is the (diagonal) Nikolayevsky derivation of ``alg``; when
    omitted it is computed for nice algebras, or taken to be zero when every
    derivation is traceless.
    """
    from .constructions import cotangent
    from .metric import all_derivations_traceless

    n = alg.dim
    if ntilde is None:
        if all_derivations_traceless(alg):
            lt = [Fraction(0)] * n
        elif is_nice(alg)[0]:
            lt = list(nikolayevsky_nice(alg).lam)
        else:
            raise Unsupported("Nikolayevsky derivation of the base is unavailable")
    elif isinstance(ntilde, NikResult):
        lt = list(ntilde.lam)
    else:
        lt = [Fraction(x) for x in ntilde]
    tr = sum(lt, Fraction(0))
    a = Fraction(n) / (2 * n - tr)
    warning = None
    if a == 1:
        warning = "a = 1: the base Nikolayevsky derivation has trace n"
        warnings.warn(warning, stacklevel=2)
    lam = [a * x for x in lt] + [a * (2 - x) for x in lt]
    pkg = cotangent(alg)
    return _finish(COTANGENT_FORMULA, lam, der_cap_co(pkg.algebra, pkg.metric), 2 * a, warning)


def cotangent_scale(ntilde: Sequence) -> Fraction:
    n = len(ntilde)
    return Fraction(n) / (2 * n - sum(map(Fraction, ntilde), Fraction(0)))


# ---------------------------------------------------------------------------
# sufficient conditions


def solitary_by_positivity(alg: LieAlgebra, G: Metric) -> str:
    """ProvedSolitary when every metric Nikolayevsky eigenvalue is positive."""
    nik = metric_nikolayevsky(alg, G)
    return PROVED_SOLITARY if all(x > 0 for x in nik.lam) else INCONCLUSIVE


def tstar_by_grading(alg: LieAlgebra, N: Matrix | None = None) -> str:
    """ProvedTstarSolitary from a nonnegative grading with T*-solitary degree zero."""
    from .constructions import tstar_solitary

    if N is None:
        N = nikolayevsky_nice(alg).matrix
    grading = grading_from_derivation(alg, N)
    weights = grading.weights
    if min(weights) > 0:
        return PROVED_TSTAR_SOLITARY
    if min(weights) < 0:
        return INCONCLUSIVE
    b0 = subalgebra(alg, [list(v) for v in grading.piece(0).basis])
    return PROVED_TSTAR_SOLITARY if tstar_solitary(b0).solitary else INCONCLUSIVE


# ---------------------------------------------------------------------------
# JSON


def nik_to_json(res: NikResult) -> dict:
    out = {
        "path": res.path,
        "lambda": [exact.format_scalar(x) for x in res.lam],
        "l": None if res.l is None else exact.format_scalar(res.l),
        "certified": res.certified,
    }
    if res.warning:
        out["warning"] = res.warning
    return out


def nik_from_json(obj: dict) -> NikResult:
    lam = tuple(Fraction(x) for x in obj["lambda"])
    l = None if obj.get("l") is None else Fraction(obj["l"])
    # the stored form only records that the certificate passed
    cert = tuple(Fraction(0) for _ in lam) if obj.get("certified", True) else (Fraction(1),)
    return NikResult(obj["path"], lam, l, cert, obj.get("warning"))
