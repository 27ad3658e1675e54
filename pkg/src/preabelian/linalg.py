"""Exact dense linear algebra over the integers, the rationals and prime fields.

Everything here is immutable and exact.  Integers are Python ints, rationals
are :class:`fractions.Fraction`, and elements of F_p are canonical
representatives ``0 .. p-1``.
"""
from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from math import gcd
from typing import Iterable, NamedTuple, Sequence


class DimensionMismatch(ValueError):
    pass


class FieldMismatch(ValueError):
    pass


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    i = 2
    while i * i <= p:
        if p % i == 0:
            return False
        i += 1
    return True


@dataclass(frozen=True)
class Field:
    """The rationals (``p is None``) or the prime field of order ``p``."""

    p: int | None = None

    def __post_init__(self):
        if self.p is not None and not _is_prime(self.p):
            raise ValueError(f"F_p needs p prime, got {self.p}")

    @classmethod
    def parse(cls, tag: str) -> "Field":
        tag = tag.strip()
        if tag == "Q":
            return cls()
        if tag.startswith("Fp:"):
            return cls(int(tag[3:]))
        raise ValueError(f"unknown field tag {tag!r}")

    @property
    def tag(self) -> str:
        return "Q" if self.p is None else f"Fp:{self.p}"

    @property
    def is_finite(self) -> bool:
        return self.p is not None

    def __call__(self, x):
        if self.p is None:
            if isinstance(x, str):
                return Fraction(x.strip())
            return Fraction(x)
        if isinstance(x, str):
            x = Fraction(x.strip())
        if isinstance(x, Fraction):
            return x.numerator * pow(x.denominator, -1, self.p) % self.p
        return int(x) % self.p

    def inv(self, x):
        if not x:
            raise ZeroDivisionError("inverse of zero")
        if self.p is None:
            return 1 / Fraction(x)
        return pow(x, -1, self.p)

    def elements(self) -> range:
        if self.p is None:
            raise ValueError("Q is infinite")
        return range(self.p)

    def __repr__(self):
        return "Q" if self.p is None else f"F{self.p}"


QQ = Field()
GF2 = Field(2)


def _shape_of(data, cols):
    rows = len(data)
    if rows:
        width = len(data[0])
        if cols is not None and cols != width:
            raise DimensionMismatch(f"expected {cols} columns, got {width}")
        cols = width
    elif cols is None:
        cols = 0
    for r in data:
        if len(r) != cols:
            raise DimensionMismatch("ragged matrix")
    return rows, cols


class _DenseOps:
    """Shape manipulation shared by both matrix types."""

    rows: int
    cols: int
    entries: tuple

    def _like(self, entries, rows, cols):
        raise NotImplementedError

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    def row(self, i) -> tuple:
        return self.entries[i]

    def col(self, j) -> tuple:
        return tuple(r[j] for r in self.entries)

    def tolist(self) -> list[list]:
        return [list(r) for r in self.entries]

    @property
    def shape(self) -> tuple[int, int]:
        return self.rows, self.cols

    @property
    def T(self):
        return self._like(tuple(zip(*self.entries)) if self.rows else
                          tuple(() for _ in range(self.cols)), self.cols, self.rows)

    def is_zero(self) -> bool:
        return all(not x for r in self.entries for x in r)

    def submatrix(self, rows: Sequence[int], cols: Sequence[int]):
        return self._like(tuple(tuple(self.entries[i][j] for j in cols) for i in rows),
                          len(rows), len(cols))

    def hstack(self, *others):
        cols = self.cols
        out = [list(r) for r in self.entries]
        for o in others:
            if o.rows != self.rows:
                raise DimensionMismatch("hstack row mismatch")
            for i, r in enumerate(o.entries):
                out[i].extend(r)
            cols += o.cols
        return self._like(tuple(map(tuple, out)), self.rows, cols)

    def vstack(self, *others):
        out = list(self.entries)
        rows = self.rows
        for o in others:
            if o.cols != self.cols:
                raise DimensionMismatch("vstack column mismatch")
            out.extend(o.entries)
            rows += o.rows
        return self._like(tuple(out), rows, self.cols)

    def _check_add(self, other):
        if self.shape != other.shape:
            raise DimensionMismatch(f"{self.shape} vs {other.shape}")

    def __repr__(self):
        name = type(self).__name__
        return f"{name}({self.tolist()!r}, shape={self.shape})"


@dataclass(frozen=True, repr=False)
class IntegerMatrix(_DenseOps):
    rows: int
    cols: int
    entries: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        if len(self.entries) != self.rows or any(len(r) != self.cols for r in self.entries):
            raise DimensionMismatch("entries do not match the declared shape")

    @classmethod
    def of(cls, data: Iterable[Iterable], cols: int | None = None) -> "IntegerMatrix":
        data = [tuple(int(x) for x in r) for r in data]
        rows, cols = _shape_of(data, cols)
        return cls(rows, cols, tuple(data))

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "IntegerMatrix":
        return cls(rows, cols, tuple((0,) * cols for _ in range(rows)))

    @classmethod
    def identity(cls, n: int) -> "IntegerMatrix":
        return cls(n, n, tuple(tuple(int(i == j) for j in range(n)) for i in range(n)))

    @classmethod
    def diag(cls, values: Sequence[int], rows: int | None = None, cols: int | None = None):
        rows = len(values) if rows is None else rows
        cols = len(values) if cols is None else cols
        m = [[0] * cols for _ in range(rows)]
        for i, v in enumerate(values):
            m[i][i] = int(v)
        return cls.of(m, cols)

    @classmethod
    def column(cls, vec: Sequence[int]) -> "IntegerMatrix":
        return cls.of([[x] for x in vec], 1)

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence[int]], rows: int) -> "IntegerMatrix":
        return cls.of([[c[i] for c in columns] for i in range(rows)], len(columns))

    def _like(self, entries, rows, cols):
        return IntegerMatrix(rows, cols, tuple(entries))

    def __matmul__(self, other: "IntegerMatrix") -> "IntegerMatrix":
        if self.cols != other.rows:
            raise DimensionMismatch(f"{self.shape} @ {other.shape}")
        ocols = other.T.entries
        return IntegerMatrix(self.rows, other.cols, tuple(
            tuple(sum(a * b for a, b in zip(r, c)) for c in ocols) for r in self.entries))

    def __add__(self, other):
        self._check_add(other)
        return IntegerMatrix(self.rows, self.cols, tuple(
            tuple(a + b for a, b in zip(r, s)) for r, s in zip(self.entries, other.entries)))

    def __sub__(self, other):
        self._check_add(other)
        return IntegerMatrix(self.rows, self.cols, tuple(
            tuple(a - b for a, b in zip(r, s)) for r, s in zip(self.entries, other.entries)))

    def __neg__(self):
        return self.scale(-1)

    def scale(self, c: int) -> "IntegerMatrix":
        return IntegerMatrix(self.rows, self.cols, tuple(tuple(c * x for x in r) for r in self.entries))

    def apply(self, vec: Sequence[int]) -> tuple[int, ...]:
        if len(vec) != self.cols:
            raise DimensionMismatch("vector length")
        return tuple(sum(a * b for a, b in zip(r, vec)) for r in self.entries)

    def to_json(self) -> list[list[str]]:
        return [[str(x) for x in r] for r in self.entries]

    @classmethod
    def from_json(cls, data, cols: int | None = None) -> "IntegerMatrix":
        return cls.of([[int(str(x)) for x in r] for r in data], cols)


@dataclass(frozen=True, repr=False)
class FieldMatrix(_DenseOps):
    field: Field
    rows: int
    cols: int
    entries: tuple[tuple, ...]

    def __post_init__(self):
        if len(self.entries) != self.rows or any(len(r) != self.cols for r in self.entries):
            raise DimensionMismatch("entries do not match the declared shape")

    @classmethod
    def of(cls, field: Field, data: Iterable[Iterable], cols: int | None = None) -> "FieldMatrix":
        data = [tuple(field(x) for x in r) for r in data]
        rows, cols = _shape_of(data, cols)
        return cls(field, rows, cols, tuple(data))

    @classmethod
    def zeros(cls, field: Field, rows: int, cols: int) -> "FieldMatrix":
        z = field(0)
        return cls(field, rows, cols, tuple((z,) * cols for _ in range(rows)))

    @classmethod
    def identity(cls, field: Field, n: int) -> "FieldMatrix":
        one, z = field(1), field(0)
        return cls(field, n, n, tuple(tuple(one if i == j else z for j in range(n)) for i in range(n)))

    @classmethod
    def from_columns(cls, field: Field, columns: Sequence[Sequence], rows: int) -> "FieldMatrix":
        return cls.of(field, [[c[i] for c in columns] for i in range(rows)], len(columns))

    def _like(self, entries, rows, cols):
        return FieldMatrix(self.field, rows, cols, tuple(entries))

    def _same_field(self, other):
        if other.field != self.field:
            raise FieldMismatch(f"{self.field} vs {other.field}")

    def __matmul__(self, other: "FieldMatrix") -> "FieldMatrix":
        self._same_field(other)
        if self.cols != other.rows:
            raise DimensionMismatch(f"{self.shape} @ {other.shape}")
        ocols = other.T.entries
        p = self.field.p
        if p is None:
            ent = tuple(tuple(sum((a * b for a, b in zip(r, c)), Fraction(0)) for c in ocols)
                        for r in self.entries)
        else:
            ent = tuple(tuple(sum(a * b for a, b in zip(r, c)) % p for c in ocols)
                        for r in self.entries)
        return FieldMatrix(self.field, self.rows, other.cols, ent)

    def _zip(self, other, op):
        self._same_field(other)
        self._check_add(other)
        f = self.field
        return FieldMatrix(f, self.rows, self.cols, tuple(
            tuple(f(op(a, b)) for a, b in zip(r, s)) for r, s in zip(self.entries, other.entries)))

    def __add__(self, other):
        return self._zip(other, lambda a, b: a + b)

    def __sub__(self, other):
        return self._zip(other, lambda a, b: a - b)

    def __neg__(self):
        return self.scale(-1)

    def scale(self, c) -> "FieldMatrix":
        f = self.field
        c = f(c)
        return FieldMatrix(f, self.rows, self.cols, tuple(tuple(f(c * x) for x in r) for r in self.entries))

    def apply(self, vec: Sequence) -> tuple:
        if len(vec) != self.cols:
            raise DimensionMismatch("vector length")
        f = self.field
        return tuple(f(sum(a * b for a, b in zip(r, vec))) for r in self.entries)

    def rank(self) -> int:
        return len(_rref(self)[1])

    def nullspace(self) -> list[tuple]:
        return _nullspace_from_rref(self, *_rref(self))

    def column_space(self) -> "FieldMatrix":
        """Basis of the column space: the pivot columns of this matrix."""
        _, pivots = _rref(self)
        return self.submatrix(range(self.rows), pivots)

    def inverse(self) -> "FieldMatrix":
        if self.rows != self.cols:
            raise DimensionMismatch("inverse of a non-square matrix")
        n = self.rows
        red, pivots = _rref(self.hstack(FieldMatrix.identity(self.field, n)))
        if pivots[:n] != list(range(n)) or len([p for p in pivots if p < n]) != n:
            raise ZeroDivisionError("singular matrix")
        return FieldMatrix(self.field, n, n, tuple(r[n:] for r in red.entries))

    def to_json(self) -> list[list[str]]:
        return [[str(x) for x in r] for r in self.entries]

    @classmethod
    def from_json(cls, field: Field, data, cols: int | None = None) -> "FieldMatrix":
        return cls.of(field, [[str(x) for x in r] for r in data], cols)


def _rref(M: FieldMatrix) -> tuple[FieldMatrix, list[int]]:
    f = M.field
    A = [list(r) for r in M.entries]
    pivots: list[int] = []
    r = 0
    for c in range(M.cols):
        if r == M.rows:
            break
        k = next((i for i in range(r, M.rows) if A[i][c]), None)
        if k is None:
            continue
        A[r], A[k] = A[k], A[r]
        inv = f.inv(A[r][c])
        A[r] = [f(x * inv) for x in A[r]]
        for i in range(M.rows):
            if i != r and A[i][c]:
                m = A[i][c]
                A[i] = [f(x - m * y) for x, y in zip(A[i], A[r])]
        pivots.append(c)
        r += 1
    return FieldMatrix(f, M.rows, M.cols, tuple(map(tuple, A))), pivots


def _nullspace_from_rref(M: FieldMatrix, red: FieldMatrix, pivots: list[int]) -> list[tuple]:
    f = M.field
    pivset = set(pivots)
    basis = []
    for free in range(M.cols):
        if free in pivset:
            continue
        v = [f(0)] * M.cols
        v[free] = f(1)
        for i, pc in enumerate(pivots):
            v[pc] = f(-red.entries[i][free])
        basis.append(tuple(v))
    return basis


# --------------------------------------------------------------------------
# Smith normal form


@dataclass(frozen=True)
class SmithDecomposition:
    """``U @ M @ V == S`` with ``U``, ``V`` unimodular and ``S`` in Smith form."""

    U: IntegerMatrix
    S: IntegerMatrix
    V: IntegerMatrix
    V_inv: IntegerMatrix = dc_field(repr=False, compare=False)

    @property
    def diagonal(self) -> tuple[int, ...]:
        return tuple(self.S[i, i] for i in range(min(self.S.rows, self.S.cols)))

    @property
    def rank(self) -> int:
        return sum(1 for d in self.diagonal if d)


def smith_normal_form(M: IntegerMatrix) -> SmithDecomposition:
    """Smith normal form with unimodular transforms.

    Pivots are the smallest nonzero absolute value in the active block, ties
    broken by the first occurrence in row-major order, so the output is
    reproducible.
    """
    m, n = M.rows, M.cols
    A = [list(r) for r in M.entries]
    U = [[int(i == j) for j in range(m)] for i in range(m)]
    V = [[int(i == j) for j in range(n)] for i in range(n)]
    Vi = [[int(i == j) for j in range(n)] for i in range(n)]

    def swap_rows(i, k):
        A[i], A[k] = A[k], A[i]
        U[i], U[k] = U[k], U[i]

    def swap_cols(j, k):
        for r in A:
            r[j], r[k] = r[k], r[j]
        for r in V:
            r[j], r[k] = r[k], r[j]
        Vi[j], Vi[k] = Vi[k], Vi[j]

    def add_row(dst, src, q):
        # row_dst += q * row_src
        A[dst] = [a + q * b for a, b in zip(A[dst], A[src])]
        U[dst] = [a + q * b for a, b in zip(U[dst], U[src])]

    def add_col(dst, src, q):
        # col_dst += q * col_src; inverse acts on rows of V^-1: row_src -= q * row_dst
        for r in A:
            r[dst] += q * r[src]
        for r in V:
            r[dst] += q * r[src]
        Vi[src] = [a - q * b for a, b in zip(Vi[src], Vi[dst])]

    for t in range(min(m, n)):
        best = None
        for i in range(t, m):
            for j in range(t, n):
                x = A[i][j]
                if x and (best is None or abs(x) < best[0]):
                    best = (abs(x), i, j)
        if best is None:
            break
        _, i, j = best
        swap_rows(t, i)
        swap_cols(t, j)
        while True:
            p = A[t][t]
            for i in range(t + 1, m):
                if A[i][t]:
                    add_row(i, t, -(A[i][t] // p))
            for j in range(t + 1, n):
                if A[t][j]:
                    add_col(j, t, -(A[t][j] // p))
            # remainders are strictly smaller than the pivot; bring the smallest up
            best = None
            for i in range(t + 1, m):
                if A[i][t] and (best is None or abs(A[i][t]) < best[0]):
                    best = (abs(A[i][t]), "r", i)
            for j in range(t + 1, n):
                if A[t][j] and (best is None or abs(A[t][j]) < best[0]):
                    best = (abs(A[t][j]), "c", j)
            if best is not None:
                if best[1] == "r":
                    swap_rows(t, best[2])
                else:
                    swap_cols(t, best[2])
                continue
            bad = next(((i, j) for i in range(t + 1, m) for j in range(t + 1, n)
                        if A[i][j] % p), None)
            if bad is None:
                break
            add_row(t, bad[0], 1)
        if A[t][t] < 0:
            A[t] = [-x for x in A[t]]
            U[t] = [-x for x in U[t]]

    return SmithDecomposition(IntegerMatrix.of(U, m), IntegerMatrix.of(A, n),
                              IntegerMatrix.of(V, n), IntegerMatrix.of(Vi, n))


# --------------------------------------------------------------------------
# solvers


class IntegerSolution(NamedTuple):
    particular: tuple[int, ...]
    kernel: tuple[tuple[int, ...], ...]


class FieldSolution(NamedTuple):
    particular: tuple
    nullspace: tuple[tuple, ...]


def solve_integer(A: IntegerMatrix, b: Sequence[int],
                  snf: SmithDecomposition | None = None) -> IntegerSolution | None:
    """Solve ``A x = b`` over the integers.

    Returns ``None`` when there is no integer solution; otherwise a particular
    solution and a basis of the lattice ``{x : A x = 0}``.
    """
    if len(b) != A.rows:
        raise DimensionMismatch(f"A has {A.rows} rows, b has length {len(b)}")
    d = snf or smith_normal_form(A)
    c = d.U.apply(tuple(int(x) for x in b))
    diag = d.diagonal
    y = [0] * A.cols
    for i, ci in enumerate(c):
        di = diag[i] if i < len(diag) else 0
        if di:
            if ci % di:
                return None
            y[i] = ci // di
        elif ci:
            return None
    x0 = d.V.apply(y)
    kernel = tuple(d.V.col(j) for j in range(A.cols) if j >= len(diag) or not diag[j])
    return IntegerSolution(x0, kernel)


def solve_field(A: FieldMatrix, b) -> FieldSolution | None:
    """Solve ``A x = b`` exactly by Gauss-Jordan elimination."""
    if isinstance(b, FieldMatrix):
        if b.field != A.field:
            raise FieldMismatch(f"{A.field} vs {b.field}")
        if b.cols != 1:
            raise DimensionMismatch("b must be a column")
        b = b.col(0)
    if len(b) != A.rows:
        raise DimensionMismatch(f"A has {A.rows} rows, b has length {len(b)}")
    f = A.field
    aug = A.hstack(FieldMatrix.of(f, [[x] for x in b], 1))
    red, pivots = _rref(aug)
    if A.cols in pivots:
        return None
    x = [f(0)] * A.cols
    for i, pc in enumerate(pivots):
        x[pc] = red.entries[i][A.cols]
    return FieldSolution(tuple(x), tuple(_nullspace_from_rref(A, *_rref(A))))


# --------------------------------------------------------------------------
# integer lattices


def _xgcd(a: int, b: int) -> tuple[int, int, int]:
    x0, x1, y0, y1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    return a, x0, y0


class Lattice:
    """A sublattice of Z^n kept as a reduced echelon (Hermite) basis."""

    __slots__ = ("dim", "_rows")

    def __init__(self, dim: int, generators: Iterable[Sequence[int]] = ()):
        self.dim = dim
        self._rows: dict[int, list[int]] = {}  # pivot column -> row
        for g in generators:
            self.add(g)

    def add(self, vec: Sequence[int]) -> None:
        if len(vec) != self.dim:
            raise DimensionMismatch("vector length")
        v = list(vec)
        for j in range(self.dim):
            if not v[j]:
                continue
            row = self._rows.get(j)
            if row is None:
                if v[j] < 0:
                    v = [-x for x in v]
                self._rows[j] = v
                self._reduce_above(j)
                return
            a, b = row[j], v[j]
            if b % a == 0:
                q = b // a
                v = [x - q * y for x, y in zip(v, row)]
                continue
            g, s, t = _xgcd(a, b)
            new = [s * x + t * y for x, y in zip(row, v)]
            v = [(a // g) * y - (b // g) * x for x, y in zip(row, v)]
            if new[j] < 0:
                new = [-x for x in new]
            self._rows[j] = new
            self._reduce_above(j)

    def _reduce_above(self, j: int) -> None:
        # keep entries above each pivot in [0, pivot)
        for jj in sorted(self._rows):
            prow = self._rows[jj]
            p = prow[jj]
            for ii, r in self._rows.items():
                if ii < jj and r[jj] // p:
                    q = r[jj] // p
                    self._rows[ii] = [x - q * y for x, y in zip(r, prow)]

    @property
    def basis(self) -> list[tuple[int, ...]]:
        return [tuple(self._rows[j]) for j in sorted(self._rows)]

    @property
    def rank(self) -> int:
        return len(self._rows)

    def __contains__(self, vec: Sequence[int]) -> bool:
        v = list(vec)
        for j in range(self.dim):
            if not v[j]:
                continue
            row = self._rows.get(j)
            if row is None or v[j] % row[j]:
                return False
            q = v[j] // row[j]
            v = [x - q * y for x, y in zip(v, row)]
        return True

    def __le__(self, other: "Lattice") -> bool:
        return all(b in other for b in self.basis)

    def __eq__(self, other):
        return isinstance(other, Lattice) and self.dim == other.dim and self.basis == other.basis

    def __repr__(self):
        return f"Lattice(dim={self.dim}, basis={self.basis})"


def integer_kernel(A: IntegerMatrix) -> list[tuple[int, ...]]:
    """A basis of ``{x in Z^n : A x = 0}`` in echelon form."""
    sol = solve_integer(A, (0,) * A.rows)
    return Lattice(A.cols, sol.kernel).basis


def hnf_basis(vectors: Iterable[Sequence[int]], dim: int) -> list[tuple[int, ...]]:
    return Lattice(dim, vectors).basis


# --------------------------------------------------------------------------
# linear systems in matrix unknowns


class LinearSystem:
    """Linear equations whose unknowns are named matrices.

    ``ring`` is either ``"Z"`` or a :class:`Field`.  Each equation block is
    ``sum(L @ X @ R) == rhs``; ``None`` stands for an identity factor.
    """

    def __init__(self, ring):
        self.ring = ring
        self._vars: dict[str, tuple[int, int, int]] = {}
        self._nvars = 0
        self._rows: list[dict[int, object]] = []
        self._rhs: list = []

    def unknown(self, name: str, rows: int, cols: int) -> None:
        if name in self._vars:
            raise ValueError(f"duplicate unknown {name}")
        self._vars[name] = (self._nvars, rows, cols)
        self._nvars += rows * cols

    def shape(self, name: str) -> tuple[int, int]:
        _, r, c = self._vars[name]
        return r, c

    def equation(self, terms, rhs=None, shape: tuple[int, int] | None = None) -> None:
        terms = list(terms)
        if shape is None:
            if rhs is not None:
                shape = rhs.shape
            else:
                L, name, R = terms[0]
                _, xr, xc = self._vars[name]
                shape = (L.rows if L is not None else xr, R.cols if R is not None else xc)
        m, n = shape
        block = [[{} for _ in range(n)] for _ in range(m)]
        for L, name, R in terms:
            off, xr, xc = self._vars[name]
            lrows = L.entries if L is not None else None
            rrows = R.entries if R is not None else None
            if (L.rows if L is not None else xr) != m or (R.cols if R is not None else xc) != n:
                raise DimensionMismatch(f"term on {name} has wrong shape")
            if L is not None and L.cols != xr or R is not None and R.rows != xc:
                raise DimensionMismatch(f"factor shapes do not match unknown {name}")
            for i in range(m):
                lrow = [(a, lrows[i][a]) for a in range(xr) if lrows[i][a]] if lrows is not None \
                    else [(i, 1)]
                for j in range(n):
                    rcol = [(b, rrows[b][j]) for b in range(xc) if rrows[b][j]] if rrows is not None \
                        else [(j, 1)]
                    eq = block[i][j]
                    for a, la in lrow:
                        for b, rb in rcol:
                            k = off + a * xc + b
                            eq[k] = eq.get(k, 0) + la * rb
        for i in range(m):
            for j in range(n):
                self._rows.append(block[i][j])
                self._rhs.append(rhs.entries[i][j] if rhs is not None else 0)

    def matrix(self):
        n = self._nvars
        dense = [[row.get(k, 0) for k in range(n)] for row in self._rows]
        if self.ring == "Z":
            return IntegerMatrix.of(dense, n), tuple(int(x) for x in self._rhs)
        f = self.ring
        return FieldMatrix.of(f, dense, n), tuple(f(x) for x in self._rhs)

    def unpack(self, vec: Sequence) -> dict[str, object]:
        out = {}
        for name, (off, r, c) in self._vars.items():
            data = [vec[off + i * c: off + (i + 1) * c] for i in range(r)]
            if self.ring == "Z":
                out[name] = IntegerMatrix.of(data, c)
            else:
                out[name] = FieldMatrix.of(self.ring, data, c)
        return out

    def solve(self):
        """``(particular, [kernel vectors])`` as dicts of matrices, or ``None``."""
        A, b = self.matrix()
        sol = solve_integer(A, b) if self.ring == "Z" else solve_field(A, b)
        if sol is None:
            return None
        return self.unpack(sol[0]), [self.unpack(v) for v in sol[1]]

    def project(self, vec: Sequence, names: Sequence[str]) -> tuple:
        out = []
        for name in names:
            off, r, c = self._vars[name]
            out.extend(vec[off:off + r * c])
        return tuple(out)

    def kernel_projection(self, names: Sequence[str]) -> list[tuple]:
        """Generators of the projection of the homogeneous solutions onto ``names``."""
        A, _ = self.matrix()
        if self.ring == "Z":
            gens = solve_integer(A, (0,) * A.rows).kernel
        else:
            gens = A.nullspace()
        return [self.project(v, names) for v in gens]


def matrix_json(M) -> dict:
    if isinstance(M, IntegerMatrix):
        return {"ring": "Z", "rows": M.rows, "cols": M.cols, "entries": M.to_json()}
    return {"field": M.field.tag, "rows": M.rows, "cols": M.cols, "entries": M.to_json()}
