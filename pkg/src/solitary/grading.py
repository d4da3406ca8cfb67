"""Gradings induced by diagonalizable derivations."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import lcm

from . import exact
from .exact import Matrix
from .lie import LieAlgebra, NonSplitCharPoly, Subspace


class NotDiagonalizable(ValueError):
    pass


class GradingLawViolated(ArithmeticError):
    pass


class CoCompatibilityError(ValueError):
    pass


@dataclass(frozen=True)
class Grading:
    """Weight spaces ``b_t`` with integer weights ``t``.

    ``scale`` records the factor that turned the eigenvalues into integers
    (eigenvalue = weight / scale).  ``l`` is the co-constant when a metric
    was supplied: ``b_i`` is orthogonal to ``b_j`` unless ``i + j = l``.
    """

    pieces: tuple  # ((weight, Subspace), ...) sorted by weight
    scale: int = 1
    l: int | None = None

    @property
    def weights(self) -> list[int]:
        return [w for w, _ in self.pieces]

    def piece(self, weight: int) -> Subspace | None:
        for w, sub in self.pieces:
            if w == weight:
                return sub
        return None

    def derivation(self) -> Matrix:
        """The derivation acting as ``t`` on ``b_t``."""
        n = self.pieces[0][1].ambient if self.pieces else 0
        basis = [list(v) for _, sub in self.pieces for v in sub.basis]
        diag = [Fraction(w) for w, sub in self.pieces for _ in sub.basis]
        B = exact.transpose(basis)
        return exact.matmul(exact.matmul(B, exact.diag(diag)), exact.inverse(B)) if n else []


def eigenspaces(N: Matrix) -> list[tuple[Fraction, Subspace]]:
    n = len(N)
    pairs, split = exact.rational_eigenvalues(N)
    if not split:
        raise NonSplitCharPoly(n - sum(m for _, m in pairs), pairs)
    out = []
    for lam, _ in pairs:
        A = exact.mat_sub(N, exact.mat_scale(lam, exact.identity(n)))
        out.append((lam, Subspace.span(n, exact.kernel_basis(A, n))))
    if sum(sub.dim for _, sub in out) != n:
        raise NotDiagonalizable("eigenspaces do not span the algebra")
    return out


def grading_from_derivation(alg: LieAlgebra, N: Matrix, G=None) -> Grading:
    """Integer grading by the eigenvalues of ``N``, checked against the bracket (and ``G``)."""
    spaces = eigenspaces(N)
    scale = lcm(*(Fraction(lam).denominator for lam, _ in spaces)) if spaces else 1
    pieces = tuple(sorted((int(lam * scale), sub) for lam, sub in spaces))
    by_weight = dict(pieces)
    for wi, bi in pieces:
        for wj, bj in pieces:
            target = by_weight.get(wi + wj)
            for u in bi.basis:
                for v in bj.basis:
                    w = alg.bracket(u, v)
                    if any(w) and (target is None or not target.contains(w)):
                        raise GradingLawViolated(f"[b_{wi}, b_{wj}] is not inside b_{wi + wj}")
    l = None
    if G is not None:
        Gm = G.G if hasattr(G, "G") else G
        for wi, bi in pieces:
            for wj, bj in pieces:
                if any(
                    sum((a * b for a, b in zip(u, exact.matvec(Gm, v)) if a), Fraction(0))
                    for u in bi.basis
                    for v in bj.basis
                ):
                    if l is None:
                        l = wi + wj
                    elif l != wi + wj:
                        raise CoCompatibilityError(f"pairings at total weights {l} and {wi + wj}")
    return Grading(pieces, scale, l)
