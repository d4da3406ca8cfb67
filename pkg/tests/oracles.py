"""Naive dense reference implementations on top of sympy.

Each function loops over every defining identity on the full tensor of
structure constants and hands the resulting linear system to sympy.  Only
the raw constants of an algebra and the raw entries of a metric are read.
"""

from __future__ import annotations

import itertools

import sympy


def _q(x):
    if hasattr(x, "re") and hasattr(x, "im"):
        return sympy.Rational(x.re.numerator, x.re.denominator) + sympy.I * sympy.Rational(x.im.numerator, x.im.denominator)
    return sympy.Rational(x.numerator, x.denominator) if hasattr(x, "denominator") else sympy.Integer(x)


def structure_tensor(alg):
    """c[i][j][k] = e_k component of [e_i, e_j]."""
    n = alg.dim
    c = [[[sympy.Integer(0)] * n for _ in range(n)] for _ in range(n)]
    for i, j, k, v in alg.constants:
        c[i][j][k] = _q(v)
        c[j][i][k] = -_q(v)
    return c


def metric_matrix(G):
    return sympy.Matrix([[_q(x) for x in row] for row in G.matrix])


def _solve(equations, nvars):
    if not equations:
        return [sympy.eye(nvars)[:, k] for k in range(nvars)]
    A = sympy.Matrix(equations)
    return A.nullspace()


def _as_mats(vectors, n):
    return [sympy.Matrix(n, n, list(v)) for v in vectors]


def derivations(alg):
    """D[k, l] unknowns; D[e_i,e_j] = [De_i,e_j] + [e_i,De_j] for all i, j, k."""
    n = alg.dim
    c = structure_tensor(alg)
    eqs = []
    for i, j, k in itertools.product(range(n), repeat=3):
        row = [sympy.Integer(0)] * (n * n)
        for m in range(n):
            row[k * n + m] += c[i][j][m]
            row[m * n + i] -= c[m][j][k]
            row[m * n + j] -= c[i][m][k]
        if any(row):
            eqs.append(row)
    return _as_mats(_solve(eqs, n * n), n)


def adinvariant_endos(alg):
    """phi[e_i, e_j] = [phi e_i, e_j] for all i, j."""
    n = alg.dim
    c = structure_tensor(alg)
    eqs = []
    for i, j, k in itertools.product(range(n), repeat=3):
        row = [sympy.Integer(0)] * (n * n)
        for m in range(n):
            row[k * n + m] += c[i][j][m]
            row[m * n + i] -= c[m][j][k]
        if any(row):
            eqs.append(row)
    return _as_mats(_solve(eqs, n * n), n)


def invariant_forms(alg):
    """Symmetric B with B([x,y],z) + B(y,[x,z]) = 0, unknowns B[a,b] for all a, b."""
    n = alg.dim
    c = structure_tensor(alg)
    eqs = []
    for a, b in itertools.product(range(n), repeat=2):
        row = [sympy.Integer(0)] * (n * n)
        row[a * n + b] += 1
        row[b * n + a] -= 1
        if any(row):
            eqs.append(row)
    for x, y, z in itertools.product(range(n), repeat=3):
        row = [sympy.Integer(0)] * (n * n)
        for m in range(n):
            row[m * n + z] += c[x][y][m]
            row[y * n + m] += c[x][z][m]
        if any(row):
            eqs.append(row)
    return _as_mats(_solve(eqs, n * n), n)


def s_space(alg, G):
    Gm = metric_matrix(G)
    Ginv = Gm.inv()
    return [Ginv * B for B in invariant_forms(alg)]


def d_space(alg, G):
    Gm = metric_matrix(G)
    Ginv = Gm.inv()
    return [D + Ginv * D.T * Gm for D in derivations(alg)]


def span_rank(mats):
    if not mats:
        return 0
    return sympy.Matrix.hstack(*[m.reshape(len(m), 1) for m in mats]).rank()


def same_span(a, b):
    ra, rb = span_rank(a), span_rank(b)
    return ra == rb == span_rank(list(a) + list(b))


def to_sympy_mats(mats):
    return [sympy.Matrix([[_q(x) for x in row] for row in M]) for M in mats]
