"""Lie algebras given by structure constants.

Indices are 0-based inside the library.  Text formats (Salamon strings,
JSON, error messages) use the familiar 1-based ``e_1 .. e_n``.

Salamon notation lists ``(de^1, ..., de^n)``; the coefficient ``a`` of
``e^{ij}`` (``i < j``) in entry ``k`` is read as the ``e_k`` component of
``[e_i, e_j]``.  Flipping the sign of every structure constant gives an
isomorphic algebra (``x -> -x``), so none of the computed invariants
depend on that choice.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Sequence

from . import exact
from .exact import FIELD_Q, FIELD_QI, Matrix, SparseEchelon


class SalamonSyntaxError(ValueError):
    def __init__(self, message: str, position: int):
        super().__init__(f"{message} at position {position}")
        self.position = position


class AlgebraIndexError(ValueError):
    pass


class JacobiError(ValueError):
    def __init__(self, violations: list[tuple[int, int, int]]):
        shown = ", ".join(f"({i},{j},{k})" for i, j, k in violations[:5])
        super().__init__(f"Jacobi identity fails on {len(violations)} triple(s): {shown}")
        self.violations = violations


class NotAnIdealError(ValueError):
    pass


class NonSplitCharPoly(ValueError):
    def __init__(self, remaining_degree: int, found: list):
        super().__init__(
            f"characteristic polynomial does not split over Q: a factor of degree "
            f"{remaining_degree} has no rational roots"
        )
        self.remaining_degree = remaining_degree
        self.found = found


# ---------------------------------------------------------------------------
# core types


@dataclass(frozen=True)
class LieAlgebra:
    """Structure constants ``c^k_{ij}`` stored for ``i < j`` as sorted tuples."""

    dim: int
    constants: tuple = ()
    field: str = FIELD_Q
    checked: bool = dc_field(default=False, compare=False)

    @classmethod
    def from_dict(
        cls,
        dim: int,
        brackets: dict,
        field: str = FIELD_Q,
        check: bool = True,
    ) -> "LieAlgebra":
        """Build from ``{(i, j): {k: c}}`` with 0-based indices (any order of i, j)."""
        acc: dict = {}
        for (i, j), comps in brackets.items():
            for k, c in comps.items():
                _add_constant(acc, dim, i, j, k, exact.coerce(c, field))
        return cls._finish(dim, acc, field, check)

    @classmethod
    def from_triples(cls, dim: int, triples: Iterable, field: str = FIELD_Q, check: bool = True):
        """Build from ``(i, j, k, c)`` tuples with 0-based indices."""
        acc: dict = {}
        for i, j, k, c in triples:
            _add_constant(acc, dim, i, j, k, exact.coerce(c, field))
        return cls._finish(dim, acc, field, check)

    @classmethod
    def abelian(cls, dim: int, field: str = FIELD_Q) -> "LieAlgebra":
        return cls(dim, (), field, True)

    @classmethod
    def _finish(cls, dim, acc, field, check):
        consts = tuple(sorted((i, j, k, c) for (i, j, k), c in acc.items() if c))
        alg = cls(dim, consts, field, False)
        if check:
            bad = check_jacobi(alg)
            if bad:
                raise JacobiError(bad)
            object.__setattr__(alg, "checked", True)
        return alg

    # -- lookups ---------------------------------------------------------

    @cached_property
    def table(self) -> dict:
        """``{(a, b): {k: c}}`` for every ordered pair with nonzero bracket."""
        t: dict = {}
        for i, j, k, c in self.constants:
            t.setdefault((i, j), {})[k] = c
            t.setdefault((j, i), {})[k] = -c
        return t

    @cached_property
    def zero(self):
        return exact.coerce(0, self.field)

    def bracket_basis(self, a: int, b: int) -> dict:
        return self.table.get((a, b), {})

    def bracket(self, x: Sequence, y: Sequence) -> list:
        out = [self.zero] * self.dim
        xs = [(a, v) for a, v in enumerate(x) if v]
        ys = [(b, v) for b, v in enumerate(y) if v]
        for a, u in xs:
            for b, v in ys:
                comps = self.table.get((a, b))
                if comps:
                    uv = u * v
                    for k, c in comps.items():
                        out[k] += uv * c
        return out

    def ad(self, a: int) -> Matrix:
        """Matrix of ``ad_{e_a}``; column ``b`` holds ``[e_a, e_b]``."""
        n = self.dim
        M = [[self.zero] * n for _ in range(n)]
        for b in range(n):
            for k, c in self.bracket_basis(a, b).items():
                M[k][b] = c
        return M

    def ad_vector(self, x: Sequence) -> Matrix:
        return exact.mat_lincomb(x, [self.ad(a) for a in range(self.dim)], self.dim, self.dim)

    @property
    def is_abelian(self) -> bool:
        return not self.constants

    def scaled(self, factor) -> "LieAlgebra":
        """Multiply every structure constant by ``factor`` (``-1`` flips the sign convention)."""
        f = exact.coerce(factor, self.field)
        return LieAlgebra(self.dim, tuple((i, j, k, c * f) for i, j, k, c in self.constants if c * f), self.field, self.checked)

    def with_field(self, field: str) -> "LieAlgebra":
        return LieAlgebra(
            self.dim, tuple((i, j, k, exact.coerce(c, field)) for i, j, k, c in self.constants), field, self.checked
        )

    def __str__(self):
        if self.field == FIELD_Q:
            return render_salamon(self)
        return json.dumps(algebra_to_json(self))


def _add_constant(acc, dim, i, j, k, c):
    for idx in (i, j, k):
        if not 0 <= idx < dim:
            raise AlgebraIndexError(f"index {idx + 1} out of range 1..{dim}")
    if i == j:
        if c:
            raise AlgebraIndexError(f"[e_{i + 1}, e_{i + 1}] must vanish")
        return
    if i > j:
        i, j, c = j, i, -c
    acc[(i, j, k)] = acc.get((i, j, k), 0) + c


@dataclass(frozen=True)
class Subspace:
    """A subspace of K^n stored by its reduced row echelon basis."""

    ambient: int
    basis: tuple = ()

    @classmethod
    def span(cls, ambient: int, vectors: Iterable[Sequence]) -> "Subspace":
        vecs = [list(v) for v in vectors]
        if not vecs:
            return cls(ambient, ())
        rows, _ = exact.rref(vecs)
        return cls(ambient, tuple(tuple(r) for r in rows))

    @classmethod
    def whole(cls, n: int) -> "Subspace":
        return cls.span(n, exact.identity(n))

    @classmethod
    def zero(cls, n: int) -> "Subspace":
        return cls(n, ())

    @property
    def dim(self) -> int:
        return len(self.basis)

    @cached_property
    def _echelon(self) -> SparseEchelon:
        ech = SparseEchelon(self.ambient)
        for r in self.basis:
            ech.add(exact.dense_to_sparse(r))
        return ech

    def contains(self, v: Sequence) -> bool:
        return self._echelon.contains(exact.dense_to_sparse(v))

    def issubset(self, other: "Subspace") -> bool:
        return all(other.contains(v) for v in self.basis)

    def __add__(self, other: "Subspace") -> "Subspace":
        return Subspace.span(self.ambient, list(self.basis) + list(other.basis))

    def intersection(self, other: "Subspace") -> "Subspace":
        a, b = list(self.basis), list(other.basis)
        if not a or not b:
            return Subspace.zero(self.ambient)
        # solve sum x_i a_i - sum y_j b_j = 0
        cols = [list(v) for v in a] + [[-x for x in v] for v in b]
        M = exact.transpose(cols)
        vecs = []
        for k in exact.kernel_basis(M, len(cols)):
            vecs.append(exact.matvec(exact.transpose(a), k[: len(a)]))
        return Subspace.span(self.ambient, vecs)

    def pivots(self) -> list[int]:
        return [next(i for i, x in enumerate(r) if x) for r in self.basis]

    def complement_coordinates(self) -> list[int]:
        """Standard basis indices spanning an echelon complement."""
        piv = set(self.pivots())
        return [i for i in range(self.ambient) if i not in piv]

    def __eq__(self, other):
        if not isinstance(other, Subspace):
            return NotImplemented
        return self.ambient == other.ambient and self.basis == other.basis

    def __hash__(self):
        return hash((self.ambient, self.basis))


@dataclass(frozen=True)
class MapSpace:
    """A linear space of ``rows x cols`` matrices given by a basis."""

    rows: int
    cols: int
    basis: tuple = ()

    @classmethod
    def from_vectors(cls, rows: int, cols: int, vectors: Iterable[Sequence]) -> "MapSpace":
        return cls(rows, cols, tuple(exact.freeze(exact.unflatten(v, rows, cols)) for v in vectors))

    @classmethod
    def spanned_by(cls, rows: int, cols: int, mats: Iterable[Matrix]) -> "MapSpace":
        """Independent subset (in order) of the given matrices."""
        ech = SparseEchelon(rows * cols)
        kept = []
        for M in mats:
            if ech.add(exact.dense_to_sparse(exact.flatten(M))):
                kept.append(exact.freeze(M))
        return cls(rows, cols, tuple(kept))

    @property
    def dim(self) -> int:
        return len(self.basis)

    def matrices(self) -> list[Matrix]:
        return [[list(r) for r in M] for M in self.basis]

    @cached_property
    def _echelon(self) -> SparseEchelon:
        ech = SparseEchelon(self.rows * self.cols)
        for M in self.basis:
            ech.add(exact.dense_to_sparse(exact.flatten(M)))
        return ech

    def contains(self, M: Matrix) -> bool:
        return self._echelon.contains(exact.dense_to_sparse(exact.flatten(M)))

    def issubset(self, other: "MapSpace") -> bool:
        return all(other.contains(M) for M in self.basis)

    def same_span(self, other: "MapSpace") -> bool:
        return self.dim == other.dim and self.issubset(other)

    def coordinates(self, M: Matrix) -> list | None:
        cols = [exact.flatten(B) for B in self.basis]
        if not cols:
            return [] if exact.is_zero_matrix(M) else None
        return exact.solve(exact.transpose(cols), exact.flatten(M))

    def combination(self, coeffs: Sequence) -> Matrix:
        return exact.mat_lincomb(coeffs, self.basis, self.rows, self.cols)


@dataclass(frozen=True)
class NiceDiagram:
    """Arrows ``i --j--> k`` for each nonzero ``c^k_{ij}`` (both orders of i, j)."""

    nodes: int
    arrows: tuple = ()

    def derivation_rows(self) -> list[list]:
        """Distinct rows ``-e_i - e_j + e_k`` of the root matrix."""
        seen = []
        for i, j, k in self.arrows:
            row = [Fraction(0)] * self.nodes
            row[i] -= 1
            row[j] -= 1
            row[k] += 1
            if row not in seen:
                seen.append(row)
        return seen


# ---------------------------------------------------------------------------
# Salamon notation


class _Scanner:
    def __init__(self, text: str):
        self.text = text.replace("−", "-")
        self.pos = 0

    def peek(self) -> str:
        self.skip()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def skip(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def take(self, ch: str):
        if self.peek() != ch:
            raise SalamonSyntaxError(f"expected {ch!r}", self.pos)
        self.pos += 1

    def digits(self) -> str:
        self.skip()
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        if start == self.pos:
            raise SalamonSyntaxError("expected digits", start)
        return self.text[start:self.pos]


def _parse_atom(sc: _Scanner) -> tuple[int, int]:
    start = sc.pos
    sc.take("e")
    sc.take("^")
    sc.take("{")
    first = sc.digits()
    if sc.peek() == ",":
        sc.take(",")
        second = sc.digits()
        i, j = int(first), int(second)
    else:
        if len(first) != 2:
            raise SalamonSyntaxError("use e^{i,j} when an index has two digits", start)
        i, j = int(first[0]), int(first[1])
    sc.take("}")
    return i, j


def _parse_entry(sc: _Scanner) -> list[tuple[int, int, Fraction]]:
    terms = []
    first = True
    while True:
        ch = sc.peek()
        if ch in (",", ")", ""):
            if first:
                raise SalamonSyntaxError("empty entry", sc.pos)
            return terms
        sign = 1
        if ch in "+-":
            sign = -1 if ch == "-" else 1
            sc.pos += 1
            ch = sc.peek()
        elif not first:
            raise SalamonSyntaxError("expected '+' or '-' between terms", sc.pos)
        start = sc.pos
        coef = Fraction(1)
        if ch.isdigit():
            d = sc.digits()
            nxt = sc.peek()
            if nxt in ("/", "*"):
                if nxt == "/":
                    sc.take("/")
                    q = sc.digits()
                    if int(q) == 0:
                        raise SalamonSyntaxError("zero denominator", start)
                    coef = Fraction(int(d), int(q))
                else:
                    coef = Fraction(int(d))
                sc.take("*")
                i, j = _parse_atom(sc)
            elif d == "0" and first and nxt in (",", ")", ""):
                return []
            elif len(d) == 2:
                i, j = int(d[0]), int(d[1])
            else:
                raise SalamonSyntaxError(f"cannot read {d!r} as an index pair", start)
        elif ch == "e":
            i, j = _parse_atom(sc)
        else:
            raise SalamonSyntaxError(f"unexpected character {ch!r}", sc.pos)
        terms.append((i, j, sign * coef))
        first = False


def parse_salamon(text: str, field: str = FIELD_Q, check: bool = True) -> LieAlgebra:
    """Parse ``(de^1, ..., de^n)`` into a :class:`LieAlgebra`."""
    sc = _Scanner(text)
    opened = sc.peek() == "("
    if opened:
        sc.take("(")
    entries = []
    while True:
        entries.append(_parse_entry(sc))
        ch = sc.peek()
        if ch == ",":
            sc.take(",")
            continue
        break
    if opened:
        sc.take(")")
    if sc.peek():
        raise SalamonSyntaxError("trailing characters", sc.pos)
    n = len(entries)
    acc: dict = {}
    for k, terms in enumerate(entries):
        for i, j, c in terms:
            if not (1 <= i <= n and 1 <= j <= n):
                raise AlgebraIndexError(f"e^{{{i},{j}}} in entry {k + 1} is out of range 1..{n}")
            if i == j:
                raise AlgebraIndexError(f"e^{{{i},{j}}} in entry {k + 1} repeats an index")
            _add_constant(acc, n, i - 1, j - 1, k, exact.coerce(c, field))
    return LieAlgebra._finish(n, acc, field, check)


def render_salamon(alg: LieAlgebra) -> str:
    """Fully braced canonical form, e.g. ``(0,0,e^{1,2},e^{1,3})``."""
    per_k: dict[int, list] = {k: [] for k in range(alg.dim)}
    for i, j, k, c in alg.constants:
        if not exact.is_rational(c):
            raise ValueError("Salamon notation only covers rational structure constants")
        per_k[k].append((i, j, exact.real_part(c)))
    entries = []
    for k in range(alg.dim):
        terms = sorted(per_k[k])
        if not terms:
            entries.append("0")
            continue
        out = ""
        for idx, (i, j, c) in enumerate(terms):
            atom = f"e^{{{i + 1},{j + 1}}}"
            mag = abs(c)
            body = atom if mag == 1 else f"{mag}*{atom}"
            if c < 0:
                out += "-" + body
            else:
                out += ("+" if idx else "") + body
        entries.append(out)
    return "(" + ",".join(entries) + ")"


def algebra_to_json(alg: LieAlgebra) -> dict:
    return {
        "dim": alg.dim,
        "field": alg.field,
        "brackets": [
            {"i": i + 1, "j": j + 1, "k": k + 1, "c": exact.format_scalar(c)} for i, j, k, c in alg.constants
        ],
    }


def algebra_from_json(data: dict, check: bool = True) -> LieAlgebra:
    n = int(data["dim"])
    field = data.get("field", FIELD_Q)
    if field not in exact.FIELDS:
        raise ValueError(f"unknown field {field!r}")
    triples = []
    for b in data.get("brackets", []):
        i, j, k = int(b["i"]), int(b["j"]), int(b["k"])
        if not all(1 <= x <= n for x in (i, j, k)):
            raise AlgebraIndexError(f"bracket index out of range 1..{n}: {b}")
        triples.append((i - 1, j - 1, k - 1, exact.parse_scalar(str(b["c"]), field)))
    return LieAlgebra.from_triples(n, triples, field, check)


# ---------------------------------------------------------------------------
# Jacobi and structure


def check_jacobi(alg: LieAlgebra) -> list[tuple[int, int, int]]:
    """1-based triples ``i<j<k`` whose Jacobiator is nonzero."""
    n = alg.dim
    t = alg.table
    bad = []
    for i in range(n):
        for j in range(i + 1, n):
            for k in range(j + 1, n):
                acc: dict = {}
                for a, b, c in ((i, j, k), (j, k, i), (k, i, j)):
                    for p, u in t.get((a, b), {}).items():
                        for m, v in t.get((p, c), {}).items():
                            acc[m] = acc.get(m, 0) + u * v
                if any(acc.values()):
                    bad.append((i + 1, j + 1, k + 1))
    return bad


def _endomorphism_var(n, row, col):
    return row * n + col


def derivation_equations(alg: LieAlgebra):
    """Sparse equations for ``D[e_i,e_j] = [De_i,e_j] + [e_i,De_j]``.

    Unknown ``D[a][b]`` (``D e_b = sum_a D[a][b] e_a``) has index ``a*n + b``.
    """
    n = alg.dim
    t = alg.table
    for i in range(n):
        for j in range(i + 1, n):
            eqs: dict[int, dict] = {}
            for k, c in t.get((i, j), {}).items():
                for m in range(n):
                    e = eqs.setdefault(m, {})
                    v = _endomorphism_var(n, m, k)
                    e[v] = e.get(v, 0) + c
            for p in range(n):
                for m, c in t.get((p, j), {}).items():
                    e = eqs.setdefault(m, {})
                    v = _endomorphism_var(n, p, i)
                    e[v] = e.get(v, 0) - c
                for m, c in t.get((i, p), {}).items():
                    e = eqs.setdefault(m, {})
                    v = _endomorphism_var(n, p, j)
                    e[v] = e.get(v, 0) - c
            for e in eqs.values():
                yield {v: c for v, c in e.items() if c}


def derivation_space(alg: LieAlgebra) -> MapSpace:
    n = alg.dim
    vecs = exact.kernel_from_equations(derivation_equations(alg), n * n)
    return MapSpace.from_vectors(n, n, vecs)


def adinvariant_equations(alg: LieAlgebra):
    """Sparse equations for ``phi[e_i,e_j] = [e_i, phi e_j]`` over all ordered pairs."""
    n = alg.dim
    t = alg.table
    for i in range(n):
        for j in range(n):
            eqs: dict[int, dict] = {}
            for k, c in t.get((i, j), {}).items():
                for m in range(n):
                    e = eqs.setdefault(m, {})
                    v = _endomorphism_var(n, m, k)
                    e[v] = e.get(v, 0) + c
            for p in range(n):
                for m, c in t.get((i, p), {}).items():
                    e = eqs.setdefault(m, {})
                    v = _endomorphism_var(n, p, j)
                    e[v] = e.get(v, 0) - c
            for e in eqs.values():
                yield {v: c for v, c in e.items() if c}


def adinvariant_endos(alg: LieAlgebra) -> MapSpace:
    n = alg.dim
    vecs = exact.kernel_from_equations(adinvariant_equations(alg), n * n)
    return MapSpace.from_vectors(n, n, vecs)


def is_derivation(alg: LieAlgebra, D: Matrix) -> bool:
    """Direct check of the derivation identity on all basis pairs."""
    n = alg.dim
    cols = [[D[r][c] for r in range(n)] for c in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            lhs = exact.matvec(D, _unit_bracket(alg, i, j))
            r1 = alg.bracket(cols[i], _unit(n, j))
            r2 = alg.bracket(_unit(n, i), cols[j])
            if any(a != b + c for a, b, c in zip(lhs, r1, r2)):
                return False
    return True


def is_adinvariant_endo(alg: LieAlgebra, phi: Matrix) -> bool:
    n = alg.dim
    cols = [[phi[r][c] for r in range(n)] for c in range(n)]
    for i in range(n):
        for j in range(n):
            lhs = exact.matvec(phi, _unit_bracket(alg, i, j))
            rhs = alg.bracket(_unit(n, i), cols[j])
            if any(a != b for a, b in zip(lhs, rhs)):
                return False
    return True


def _unit(n: int, i: int) -> list:
    v = [Fraction(0)] * n
    v[i] = Fraction(1)
    return v


def _unit_bracket(alg: LieAlgebra, i: int, j: int) -> list:
    v = [alg.zero] * alg.dim
    for k, c in alg.bracket_basis(i, j).items():
        v[k] = c
    return v


def bracket_spaces(alg: LieAlgebra, A: Subspace, B: Subspace) -> Subspace:
    vecs = []
    for a in A.basis:
        for b in B.basis:
            v = alg.bracket(a, b)
            if any(v):
                vecs.append(v)
    return Subspace.span(alg.dim, vecs)


def center(alg: LieAlgebra) -> Subspace:
    n = alg.dim
    t = alg.table
    eqs = []
    for j in range(n):
        # sum_i x_i [e_i, e_j] = 0
        rows: dict[int, dict] = {}
        for i in range(n):
            for k, c in t.get((i, j), {}).items():
                rows.setdefault(k, {})[i] = c
        eqs.extend(rows.values())
    return Subspace.span(n, exact.kernel_from_equations(eqs, n))


def derived_subalgebra(alg: LieAlgebra) -> Subspace:
    return Subspace.span(alg.dim, [_unit_bracket(alg, i, j) for (i, j) in alg.table if i < j])


def lower_central_series(alg: LieAlgebra) -> list[Subspace]:
    g = Subspace.whole(alg.dim)
    series = [g]
    while True:
        nxt = bracket_spaces(alg, g, series[-1])
        if nxt == series[-1]:
            return series
        series.append(nxt)


def derived_series(alg: LieAlgebra) -> list[Subspace]:
    series = [Subspace.whole(alg.dim)]
    while True:
        nxt = bracket_spaces(alg, series[-1], series[-1])
        if nxt == series[-1]:
            return series
        series.append(nxt)


def is_nilpotent(alg: LieAlgebra) -> bool:
    return lower_central_series(alg)[-1].dim == 0


def is_solvable(alg: LieAlgebra) -> bool:
    return derived_series(alg)[-1].dim == 0


def is_nice(alg: LieAlgebra) -> tuple[bool, NiceDiagram | None]:
    """Check both niceness conditions on the given basis."""
    n = alg.dim
    for i in range(n):
        for j in range(i + 1, n):
            if len(alg.bracket_basis(i, j)) > 1:
                return False, None
    # e_i contracted into de^k is a multiple of a single e^j
    for i in range(n):
        seen: dict[int, int] = {}
        for j in range(n):
            for k in alg.bracket_basis(i, j):
                if k in seen:
                    return False, None
                seen[k] = j
    arrows = []
    for (i, j), comps in sorted(alg.table.items()):
        for k in comps:
            arrows.append((i, j, k))
    return True, NiceDiagram(n, tuple(arrows))


def is_ideal(alg: LieAlgebra, sub: Subspace) -> tuple[int, tuple] | None:
    """None when ``sub`` is an ideal, otherwise a violating (basis index, vector) pair."""
    n = alg.dim
    for a in range(n):
        ea = _unit(n, a)
        for v in sub.basis:
            w = alg.bracket(ea, v)
            if not sub.contains(w):
                return a, v
    return None


def quotient(alg: LieAlgebra, ideal: Subspace) -> tuple[LieAlgebra, Matrix]:
    """Quotient algebra on an echelon complement plus the projection matrix."""
    bad = is_ideal(alg, ideal)
    if bad is not None:
        a, v = bad
        raise NotAnIdealError(f"[e_{a + 1}, {list(map(str, v))}] leaves the subspace")
    n = alg.dim
    comp = ideal.complement_coordinates()
    m = len(comp)
    ech = ideal._echelon
    P = [[alg.zero] * n for _ in range(m)]
    for c in range(n):
        red = ech.reduce({c: Fraction(1)})
        for r, idx in enumerate(comp):
            if idx in red:
                P[r][c] = red[idx]
    triples = []
    for a in range(m):
        for b in range(a + 1, m):
            w = exact.matvec(P, _unit_bracket(alg, comp[a], comp[b]))
            for k, c in enumerate(w):
                if c:
                    triples.append((a, b, k, c))
    return LieAlgebra.from_triples(m, triples, alg.field, check=False), P


def subalgebra(alg: LieAlgebra, basis: Sequence[Sequence]) -> LieAlgebra:
    """Structure constants of the subalgebra spanned by ``basis`` in that basis."""
    m = len(basis)
    if m == 0:
        return LieAlgebra.abelian(0, alg.field)
    cols = exact.transpose([list(v) for v in basis])
    triples = []
    for a in range(m):
        for b in range(a + 1, m):
            w = alg.bracket(basis[a], basis[b])
            if not any(w):
                continue
            x = exact.solve(cols, w)
            if x is None:
                raise NotAnIdealError("span is not closed under the bracket")
            for k, c in enumerate(x):
                if c:
                    triples.append((a, b, k, c))
    return LieAlgebra.from_triples(m, triples, alg.field, check=False)


def generalized_eigenspace(M: Matrix, lam) -> Subspace:
    n = len(M)
    A = exact.mat_sub(M, exact.mat_scale(lam, exact.identity(n)))
    P = exact.identity(n)
    for _ in range(n):
        P = exact.matmul(P, A)
    return Subspace.span(n, exact.kernel_basis(P, n))


def split_by_adinvariant(alg: LieAlgebra, phi: Matrix) -> list[Subspace]:
    """Generalized eigenspaces of an ad-invariant ``phi``; each is an ideal."""
    pairs, split = exact.rational_eigenvalues(phi)
    if not split:
        rest = alg.dim - sum(m for _, m in pairs)
        raise NonSplitCharPoly(rest, pairs)
    out = []
    for lam, mult in pairs:
        sub = generalized_eigenspace(phi, lam)
        if sub.dim != mult:
            raise ArithmeticError("generalized eigenspace dimension disagrees with multiplicity")
        bad = is_ideal(alg, sub)
        if bad is not None:
            raise NotAnIdealError(f"eigenspace for {lam} is not an ideal")
        out.append(sub)
    return out


def direct_sum(a: LieAlgebra, b: LieAlgebra) -> LieAlgebra:
    if a.field != b.field:
        raise ValueError("direct sum needs a common field")
    shift = a.dim
    consts = list(a.constants) + [(i + shift, j + shift, k + shift, c) for i, j, k, c in b.constants]
    return LieAlgebra(a.dim + b.dim, tuple(sorted(consts)), a.field, a.checked and b.checked)
