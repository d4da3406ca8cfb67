"""Exact scalar fields and exact linear algebra.

Two fields are supported: the rationals (``fractions.Fraction``) and the
Gaussian rationals ``a + b i`` (:class:`GaussianRational`).  Every routine
below only uses ``+ - * /`` and comparison with zero, so it works
unchanged over either field.

Matrices are plain lists of rows.  Internally all elimination goes
through :class:`SparseEchelon`, which stores rows as ``{column: value}``
dictionaries; the linear systems produced by structure constants are very
sparse and this keeps 500+ unknown systems cheap.
"""

from __future__ import annotations

import re
from fractions import Fraction
from functools import reduce
from math import lcm
from typing import Iterable, Sequence, Union

Scalar = Union[Fraction, "GaussianRational"]
Matrix = list  # list[list[Scalar]]

FIELD_Q = "Q"
FIELD_QI = "Q(i)"
FIELDS = (FIELD_Q, FIELD_QI)


class GaussianRational:
    """An element ``re + im*i`` of Q(i) with rational parts."""

    __slots__ = ("re", "im")

    def __init__(self, re: Union[int, Fraction, str] = 0, im: Union[int, Fraction, str] = 0):
        object.__setattr__(self, "re", Fraction(re))
        object.__setattr__(self, "im", Fraction(im))

    def __setattr__(self, name, value):
        raise AttributeError("GaussianRational is immutable")

    @staticmethod
    def _lift(other):
        if isinstance(other, GaussianRational):
            return other
        if isinstance(other, (int, Fraction)):
            return GaussianRational(other, 0)
        return None

    def __add__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return GaussianRational(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return GaussianRational(self.re - o.re, self.im - o.im)

    def __rsub__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return o - self

    def __mul__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return GaussianRational(self.re * o.re - self.im * o.im, self.re * o.im + self.im * o.re)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        norm = o.re * o.re + o.im * o.im
        if norm == 0:
            raise ZeroDivisionError("division by zero in Q(i)")
        num = self * o.conjugate()
        return GaussianRational(num.re / norm, num.im / norm)

    def __rtruediv__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return o / self

    def __neg__(self):
        return GaussianRational(-self.re, -self.im)

    def __pos__(self):
        return self

    def __eq__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return self.re == o.re and self.im == o.im

    def __hash__(self):
        if self.im == 0:
            return hash(self.re)
        return hash((self.re, self.im))

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def conjugate(self) -> "GaussianRational":
        return GaussianRational(self.re, -self.im)

    def __repr__(self):
        return f"GaussianRational({format_scalar(self)!r})"

    def __str__(self):
        return format_scalar(self)


# ---------------------------------------------------------------------------
# scalar conversion and text form

_RAT = r"[+-]?\d+(?:/\d+)?"
_GAUSS_RE = re.compile(
    rf"^\s*(?:(?P<re>{_RAT})\s*)?(?:(?P<sign>[+-])?\s*(?:(?P<im>\d+(?:/\d+)?)\s*\*?\s*)?i)?\s*$"
)


def parse_scalar(text: str, field: str = FIELD_Q) -> Scalar:
    """Parse ``"p/q"`` or ``"a+b*i"`` into a field element."""
    s = str(text).strip().replace("−", "-")
    if "i" not in s:
        try:
            value = Fraction(s)
        except (ValueError, ZeroDivisionError) as exc:
            raise ValueError(f"not a rational number: {text!r}") from exc
        if "." in s or "e" in s.lower():
            raise ValueError(f"decimal notation is not exact: {text!r}")
        return coerce(value, field)
    if field != FIELD_QI:
        raise ValueError(f"imaginary unit in a rational field: {text!r}")
    m = _GAUSS_RE.match(s)
    if not m or (m.group("re") is None and not s.rstrip().endswith("i")):
        raise ValueError(f"not a Gaussian rational: {text!r}")
    re_part = Fraction(m.group("re")) if m.group("re") else Fraction(0)
    im_part = Fraction(m.group("im")) if m.group("im") else Fraction(1)
    if m.group("sign") == "-":
        im_part = -im_part
    elif m.group("sign") is None and m.group("re") is not None:
        # "3i" style without an explicit sign after a real part is ambiguous
        raise ValueError(f"missing sign before imaginary part: {text!r}")
    return GaussianRational(re_part, im_part)


def format_scalar(x: Scalar) -> str:
    """Canonical text form: ``"p/q"`` (or ``"p"``) and ``"a+b*i"``."""
    if isinstance(x, GaussianRational):
        if x.im == 0:
            return str(x.re)
        im = f"{abs(x.im)}*i"
        if x.re == 0:
            return ("-" if x.im < 0 else "") + im
        return f"{x.re}{'-' if x.im < 0 else '+'}{im}"
    return str(Fraction(x))


def coerce(x, field: str = FIELD_Q) -> Scalar:
    if field == FIELD_Q:
        if isinstance(x, GaussianRational):
            if x.im != 0:
                raise ValueError(f"{x} is not rational")
            return x.re
        return Fraction(x)
    if field == FIELD_QI:
        if isinstance(x, GaussianRational):
            return x
        return GaussianRational(x, 0)
    raise ValueError(f"unknown field {field!r}")


def field_of(x) -> str:
    return FIELD_QI if isinstance(x, GaussianRational) else FIELD_Q


def real_part(x) -> Fraction:
    return x.re if isinstance(x, GaussianRational) else Fraction(x)


def imag_part(x) -> Fraction:
    return x.im if isinstance(x, GaussianRational) else Fraction(0)


def is_rational(x) -> bool:
    return not isinstance(x, GaussianRational) or x.im == 0


# ---------------------------------------------------------------------------
# dense helpers


def zeros(rows: int, cols: int) -> Matrix:
    return [[Fraction(0)] * cols for _ in range(rows)]


def identity(n: int, one=Fraction(1)) -> Matrix:
    m = zeros(n, n)
    for i in range(n):
        m[i][i] = one
    return m


def diag(values: Sequence) -> Matrix:
    m = zeros(len(values), len(values))
    for i, v in enumerate(values):
        m[i][i] = v
    return m


def transpose(A: Matrix) -> Matrix:
    return [list(col) for col in zip(*A)] if A else []


def matmul(A: Matrix, B: Matrix) -> Matrix:
    if not A:
        return []
    m = len(B[0]) if B else 0
    if not m:
        return [[] for _ in A]
    # row-sparse product: most matrices here are sparse
    Bnz = [[(j, b) for j, b in enumerate(row) if b] for row in B]
    out = []
    for row in A:
        acc = [Fraction(0)] * m
        for k, a in enumerate(row):
            if a:
                for j, b in Bnz[k]:
                    acc[j] += a * b
        out.append(acc)
    return out


def matvec(A: Matrix, v: Sequence) -> list:
    return [sum((a * b for a, b in zip(row, v) if a), Fraction(0)) for row in A]


def mat_add(A: Matrix, B: Matrix) -> Matrix:
    return [[(a + b if a else b) if b else a for a, b in zip(ra, rb)] for ra, rb in zip(A, B)]


def mat_sub(A: Matrix, B: Matrix) -> Matrix:
    return [[a - b for a, b in zip(ra, rb)] for ra, rb in zip(A, B)]


def mat_scale(c, A: Matrix) -> Matrix:
    return [[c * a for a in row] for row in A]


def mat_lincomb(coeffs: Sequence, mats: Sequence[Matrix], rows: int, cols: int) -> Matrix:
    out = zeros(rows, cols)
    for c, M in zip(coeffs, mats):
        if not c:
            continue
        for i in range(rows):
            Mi, Oi = M[i], out[i]
            for j in range(cols):
                if Mi[j]:
                    Oi[j] += c * Mi[j]
    return out


def trace(A: Matrix):
    return sum((A[i][i] for i in range(len(A))), Fraction(0))


def is_zero_matrix(A: Matrix) -> bool:
    return all(not x for row in A for x in row)


def flatten(A: Matrix) -> list:
    return [x for row in A for x in row]


def unflatten(v: Sequence, rows: int, cols: int) -> Matrix:
    return [list(v[r * cols:(r + 1) * cols]) for r in range(rows)]


def freeze(A: Matrix) -> tuple:
    return tuple(tuple(row) for row in A)


# ---------------------------------------------------------------------------
# sparse echelon elimination


class SparseEchelon:
    """Incremental row echelon form over sparse ``{col: value}`` rows.

    Pivot rows are normalised to leading coefficient one and keyed by their
    leading column.  ``add`` reduces a new row against the existing pivots
    and keeps it when something survives.
    """

    def __init__(self, ncols: int):
        self.ncols = ncols
        self.pivots: dict[int, dict] = {}

    @property
    def rank(self) -> int:
        return len(self.pivots)

    def reduce(self, row: dict) -> dict:
        """Remainder of ``row`` after eliminating every pivot column."""
        row = {c: v for c, v in row.items() if v}
        pivots = self.pivots
        out: dict = {}
        while row:
            c = min(row)
            prow = pivots.get(c)
            if prow is None:
                out[c] = row.pop(c)
                continue
            f = row[c]
            for k, v in prow.items():
                nv = row.get(k, 0) - f * v
                if nv:
                    row[k] = nv
                else:
                    row.pop(k, None)
        return out

    def add(self, row: dict) -> bool:
        """Insert ``row``; return True when it was independent."""
        if len(self.pivots) == self.ncols:
            return False
        pivots = self.pivots
        row = {c: v for c, v in row.items() if v}
        while row:
            c = min(row)
            prow = pivots.get(c)
            if prow is None:
                inv = Fraction(1) / row[c]
                pivots[c] = {k: v * inv for k, v in row.items()}
                return True
            f = row[c]
            for k, v in prow.items():
                nv = row.get(k, 0) - f * v
                if nv:
                    row[k] = nv
                else:
                    row.pop(k, None)
        return False

    def contains(self, row: dict) -> bool:
        return not self.reduce(row)

    def reduced_pivots(self) -> dict[int, dict]:
        """Reduced row echelon form as ``{pivot_col: row}`` (copies)."""
        rows = {c: dict(r) for c, r in self.pivots.items()}
        order = sorted(rows)
        for p in reversed(order):
            prow = rows[p]
            for q in order:
                if q >= p:
                    break
                qrow = rows[q]
                f = qrow.get(p)
                if not f:
                    continue
                for k, v in prow.items():
                    nv = qrow.get(k, 0) - f * v
                    if nv:
                        qrow[k] = nv
                    else:
                        qrow.pop(k, None)
        return rows

    def kernel(self) -> list[dict]:
        """Basis of the null space, one vector per free column (ascending)."""
        rows = self.reduced_pivots()
        free = [c for c in range(self.ncols) if c not in rows]
        by_free: dict[int, list] = {f: [] for f in free}
        for p, r in rows.items():
            for k, v in r.items():
                if k != p:
                    by_free[k].append((p, v))
        out = []
        for f in free:
            vec = {f: Fraction(1)}
            for p, v in by_free[f]:
                vec[p] = -v
            out.append(vec)
        return out


def dense_to_sparse(row: Sequence) -> dict:
    return {j: (Fraction(x) if isinstance(x, int) else x) for j, x in enumerate(row) if x}


def sparse_to_dense(row: dict, n: int, zero=Fraction(0)) -> list:
    out = [zero] * n
    for j, x in row.items():
        out[j] = x
    return out


def kernel_from_equations(equations: Iterable[dict], nvars: int) -> list[list]:
    """Dense kernel basis of a sparse homogeneous system."""
    ech = SparseEchelon(nvars)
    seen = set()
    for eq in equations:
        if not eq:
            continue
        key = frozenset(eq.items())
        if key in seen:
            continue
        seen.add(key)
        ech.add(eq)
        if ech.rank == nvars:
            break
    return [sparse_to_dense(v, nvars) for v in ech.kernel()]


def kernel_basis(M: Matrix, ncols: int | None = None) -> list[list]:
    """Basis of the right null space ``{x : M x = 0}``."""
    if ncols is None:
        ncols = len(M[0]) if M else 0
    return kernel_from_equations((dense_to_sparse(r) for r in M), ncols)


def rank(M: Matrix) -> int:
    if not M:
        return 0
    ech = SparseEchelon(len(M[0]))
    for r in M:
        ech.add(dense_to_sparse(r))
    return ech.rank


def row_basis(M: Matrix) -> list[int]:
    """Indices of the lexicographically first maximal independent row set."""
    if not M:
        return []
    ech = SparseEchelon(len(M[0]))
    return [i for i, r in enumerate(M) if ech.add(dense_to_sparse(r))]


def rref(M: Matrix) -> tuple[Matrix, list[int]]:
    if not M:
        return [], []
    n = len(M[0])
    ech = SparseEchelon(n)
    for r in M:
        ech.add(dense_to_sparse(r))
    rows = ech.reduced_pivots()
    piv = sorted(rows)
    return [sparse_to_dense(rows[p], n) for p in piv], piv


def solve(A: Matrix, b: Sequence) -> list | None:
    """One solution of ``A x = b`` (free variables set to zero) or None."""
    m = len(A)
    n = len(A[0]) if A else 0
    ech = SparseEchelon(n + 1)
    for i in range(m):
        row = dense_to_sparse(A[i])
        if b[i]:
            row[n] = b[i]
        ech.add(row)
    if n in ech.pivots:
        return None
    rows = ech.reduced_pivots()
    x = [Fraction(0)] * n
    for p, r in rows.items():
        x[p] = r.get(n, Fraction(0))
    return x


def inverse(M: Matrix) -> Matrix:
    n = len(M)
    ech = SparseEchelon(2 * n)
    for i in range(n):
        row = dense_to_sparse(M[i])
        row[n + i] = Fraction(1)
        ech.add(row)
    rows = ech.reduced_pivots()
    if any(p not in rows for p in range(n)):
        raise ZeroDivisionError("matrix is singular")
    return [[rows[p].get(n + j, Fraction(0)) for j in range(n)] for p in range(n)]


def det(M: Matrix):
    n = len(M)
    if n == 0:
        return Fraction(1)
    A = [list(r) for r in M]
    d = Fraction(1)
    for c in range(n):
        p = next((r for r in range(c, n) if A[r][c]), None)
        if p is None:
            return Fraction(0)
        if p != c:
            A[c], A[p] = A[p], A[c]
            d = -d
        piv = A[c][c]
        d = d * piv
        for r in range(c + 1, n):
            f = A[r][c]
            if f:
                f = f / piv
                Ar, Ac = A[r], A[c]
                for k in range(c, n):
                    if Ac[k]:
                        Ar[k] -= f * Ac[k]
    return d


# ---------------------------------------------------------------------------
# polynomials (coefficient lists, lowest degree first)


def poly_trim(p: list) -> list:
    p = list(p)
    while p and not p[-1]:
        p.pop()
    return p


def poly_eval(p: Sequence, x):
    acc = Fraction(0)
    for c in reversed(p):
        acc = acc * x + c
    return acc


def poly_mul(p: Sequence, q: Sequence) -> list:
    if not p or not q:
        return []
    out = [Fraction(0)] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if a:
            for j, b in enumerate(q):
                out[i + j] += a * b
    return poly_trim(out)


def poly_divmod(p: Sequence, d: Sequence) -> tuple[list, list]:
    p = poly_trim(p)
    d = poly_trim(d)
    if not d:
        raise ZeroDivisionError("polynomial division by zero")
    q = [Fraction(0)] * max(len(p) - len(d) + 1, 0)
    r = list(p)
    lead = d[-1]
    while len(r) >= len(d) and r:
        shift = len(r) - len(d)
        f = r[-1] / lead
        q[shift] = f
        for i, c in enumerate(d):
            r[shift + i] -= f * c
        r = poly_trim(r)
    return poly_trim(q), r


def poly_shift(p: Sequence, a) -> list:
    """Coefficients of ``p(y + a)`` in ``y``."""
    out: list = []
    for c in reversed(p):
        out = poly_mul(out, [a, Fraction(1)]) if out else []
        if not out:
            out = [Fraction(0)]
        out[0] += c
    return poly_trim(out)


def poly_derivative(p: Sequence) -> list:
    return poly_trim([i * p[i] for i in range(1, len(p))])


def poly_gcd(p: Sequence, q: Sequence) -> list:
    a, b = poly_trim(p), poly_trim(q)
    while b:
        a, b = b, poly_divmod(a, b)[1]
    if not a:
        return []
    lead = a[-1]
    return [c / lead for c in a]


def charpoly(M: Matrix) -> list:
    """Characteristic polynomial det(x - M), lowest degree first.

    Uses reduction to Hessenberg form followed by the standard
    three-term recurrence, which is cubic in the dimension.
    """
    n = len(M)
    H = [list(r) for r in M]
    for m in range(1, n - 1):
        i = next((r for r in range(m, n) if H[r][m - 1]), None)
        if i is None:
            continue
        if i != m:
            H[i], H[m] = H[m], H[i]
            for row in H:
                row[i], row[m] = row[m], row[i]
        t = H[m][m - 1]
        for i in range(m + 1, n):
            u = H[i][m - 1]
            if not u:
                continue
            u = u / t
            Hi, Hm = H[i], H[m]
            for k in range(n):
                if Hm[k]:
                    Hi[k] -= u * Hm[k]
            for row in H:
                if row[i]:
                    row[m] += u * row[i]
    polys = [[Fraction(1)]]
    for m in range(1, n + 1):
        p = poly_mul([-H[m - 1][m - 1], Fraction(1)], polys[m - 1]) or [Fraction(0)]
        p = list(p) + [Fraction(0)] * (m + 1 - len(p))
        t = Fraction(1)
        for i in range(1, m):
            t = t * H[m - i][m - i - 1]
            if not t:
                break
            c = t * H[m - i - 1][m - 1]
            if c:
                for k, a in enumerate(polys[m - i - 1]):
                    p[k] -= c * a
        polys.append(p)
    return polys[n]


def _divisors(k: int) -> list[int]:
    from sympy import divisors

    return divisors(abs(k)) if k else [1]


def _rational_roots_of_rational_poly(p: list) -> list:
    """Distinct rational roots of a nonzero polynomial with rational coefficients."""
    p = poly_trim(p)
    roots = []
    if len(p) <= 1:
        return roots
    if not p[0]:
        roots.append(Fraction(0))
        while p and not p[0]:
            p = p[1:]
    if len(p) <= 1:
        return roots
    g = poly_gcd(p, poly_derivative(p))
    sqfree = poly_divmod(p, g)[0] if len(g) > 1 else p
    den = reduce(lcm, (Fraction(c).denominator for c in sqfree), 1)
    ints = [int(Fraction(c) * den) for c in sqfree]
    a0, an = ints[0], ints[-1]
    bound = 1 + max(abs(Fraction(c, an)) for c in ints[:-1])
    for q in _divisors(an):
        for p_ in _divisors(a0):
            if Fraction(p_, q) > bound:
                continue
            for s in (1, -1):
                r = Fraction(s * p_, q)
                if r.denominator != q:
                    continue
                if poly_eval(sqfree, r) == 0 and r not in roots:
                    roots.append(r)
    return roots


def rational_roots(p: Sequence) -> tuple[list[tuple[Fraction, int]], bool]:
    """Rational roots with multiplicity and whether ``p`` splits over Q."""
    p = poly_trim(p)
    if not p:
        raise ValueError("zero polynomial has every number as a root")
    if any(not is_rational(c) for c in p):
        re_p = poly_trim([real_part(c) for c in p])
        im_p = poly_trim([imag_part(c) for c in p])
        base = poly_gcd(re_p, im_p)
    else:
        base = [real_part(c) for c in p]
    candidates = _rational_roots_of_rational_poly(base) if len(base) > 1 else []
    out = []
    total = 0
    for r in sorted(candidates):
        mult = 0
        rest = p
        while True:
            q, rem = poly_divmod(rest, [-r, Fraction(1)])
            if rem:
                break
            mult += 1
            rest = q
        if mult:
            out.append((r, mult))
            total += mult
    return out, total == len(p) - 1


def rational_eigenvalues(M: Matrix) -> tuple[list[tuple[Fraction, int]], bool]:
    """Rational eigenvalues of ``M`` with algebraic multiplicities.

    Returns ``(pairs, split)`` where ``split`` tells whether the
    characteristic polynomial is a product of rational linear factors.
    """
    n = len(M)
    if n == 0:
        return [], True
    if all(not M[i][j] for i in range(n) for j in range(n) if i != j) and all(
        is_rational(M[i][i]) for i in range(n)
    ):
        counts: dict = {}
        for i in range(n):
            v = real_part(M[i][i])
            counts[v] = counts.get(v, 0) + 1
        return sorted(counts.items()), True
    return rational_roots(charpoly(M))


# ---------------------------------------------------------------------------
# weighted projection


def project_onto_kernel(v: Sequence, F: Matrix, weights: Sequence | None = None) -> list:
    """Orthogonal projection of ``v`` onto ``ker F``.

    The inner product is ``<x, y>_D = sum d_i x_i y_i`` with ``d`` the
    positive ``weights``.  A row basis of ``F`` is selected first, so
    redundant rows are harmless.
    """
    n = len(v)
    w = [Fraction(1)] * n if weights is None else [Fraction(x) for x in weights]
    if any(x <= 0 for x in w):
        raise ValueError("weights must be positive")
    rows = [list(F[i]) for i in row_basis(F)] if F else []
    if not rows:
        return list(v)
    # A = F D^{-1} F^T, solve A h = F v, result v - D^{-1} F^T h
    FDinv = [[r[j] / w[j] for j in range(n)] for r in rows]
    A = matmul(FDinv, transpose(rows))
    h = solve(A, matvec(rows, v))
    if h is None:
        raise ArithmeticError("row basis selection failed to give a full rank system")
    corr = matvec(transpose(FDinv), h)
    return [a - b for a, b in zip(v, corr)]
