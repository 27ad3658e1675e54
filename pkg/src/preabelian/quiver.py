"""Representations of the quiver 1 -> 2 -> 3 over a field and the subcategories K(I).

A representation is ``V1 -a-> V2 -b-> V3``; a morphism is a triple of matrices
making both squares commute.  ``K(I)`` is the full subcategory of direct sums
of the indecomposables whose labels lie in ``I``.
"""
from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field as dc_field
from functools import lru_cache
from typing import Iterable, Iterator, NamedTuple, Sequence

from .linalg import (GF2, Field, FieldMatrix, LinearSystem, DimensionMismatch,
                     FieldMismatch, solve_field)

LABELS = ("E1", "E2", "E3", "E12", "E23", "E123")
SUPPORT = {"E1": (1, 1), "E2": (2, 2), "E3": (3, 3), "E12": (1, 2), "E23": (2, 3), "E123": (1, 3)}


class NonCommuting(ValueError):
    pass


class ShapeMismatch(ValueError):
    pass


class NotReflective(ValueError):
    pass


class NotCoreflective(ValueError):
    pass


class ObjectNotInSubcategory(ValueError):
    pass


def _mat(field: Field, data, rows: int, cols: int) -> FieldMatrix:
    if isinstance(data, FieldMatrix):
        return data
    data = list(data)
    if not data and rows and not cols:
        return FieldMatrix.zeros(field, rows, 0)
    m = FieldMatrix.of(field, data, cols)
    if m.rows != rows:
        raise DimensionMismatch(f"expected {rows} rows, got {m.rows}")
    return m


def label_dims(label: str) -> tuple[int, int, int]:
    lo, hi = SUPPORT[label]
    return tuple(int(lo <= i <= hi) for i in (1, 2, 3))


@dataclass(frozen=True)
class QuiverRep:
    field: Field
    dims: tuple[int, int, int]
    a: FieldMatrix
    b: FieldMatrix

    def __post_init__(self):
        d1, d2, d3 = self.dims
        if self.a.shape != (d2, d1) or self.b.shape != (d3, d2):
            raise DimensionMismatch(f"maps {self.a.shape}, {self.b.shape} do not fit dims {self.dims}")
        if self.a.field != self.field or self.b.field != self.field:
            raise FieldMismatch("structure maps over a different field")

    @classmethod
    def of(cls, field: Field, dims: Sequence[int], a, b) -> "QuiverRep":
        d1, d2, d3 = (int(d) for d in dims)
        return cls(field, (d1, d2, d3), _mat(field, a, d2, d1), _mat(field, b, d3, d2))

    @property
    def maps(self) -> tuple[FieldMatrix, FieldMatrix]:
        return self.a, self.b

    @property
    def total_dim(self) -> int:
        return sum(self.dims)

    def is_zero(self) -> bool:
        return self.total_dim == 0

    def __str__(self):
        try:
            return decompose(self).name
        except Exception:  # pragma: no cover - printing must not fail
            return f"Rep{self.dims}"

    def to_json(self) -> dict:
        return {"field": self.field.tag, "dims": list(self.dims),
                "a": self.a.to_json(), "b": self.b.to_json()}

    @classmethod
    def from_json(cls, data: dict, field: Field | None = None) -> "QuiverRep":
        fld = Field.parse(data["field"]) if "field" in data else field
        if fld is None:
            raise ValueError("representation needs a field")
        d1, d2, d3 = (int(d) for d in data["dims"])
        return cls(fld, (d1, d2, d3), _mat(fld, [[str(x) for x in r] for r in data.get("a", [])], d2, d1),
                   _mat(fld, [[str(x) for x in r] for r in data.get("b", [])], d3, d2))


def zero_rep(field: Field = GF2) -> QuiverRep:
    return QuiverRep.of(field, (0, 0, 0), [], [])


def indecomposable(label: str, field: Field = GF2) -> QuiverRep:
    if label not in SUPPORT:
        raise ValueError(f"unknown indecomposable {label!r}")
    d1, d2, d3 = label_dims(label)
    a = [[1] * d1] * d2 if d1 and d2 else [[0] * d1 for _ in range(d2)]
    b = [[1] * d2] * d3 if d2 and d3 else [[0] * d2 for _ in range(d3)]
    return QuiverRep.of(field, (d1, d2, d3), a, b)


@dataclass(frozen=True)
class RepMorphism:
    src: QuiverRep
    dst: QuiverRep
    phi: tuple[FieldMatrix, FieldMatrix, FieldMatrix]

    def __post_init__(self):
        if self.src.field != self.dst.field:
            raise FieldMismatch("morphism between representations over different fields")
        for i, m in enumerate(self.phi):
            if m.shape != (self.dst.dims[i], self.src.dims[i]):
                raise ShapeMismatch(f"component {i + 1} has shape {m.shape}")
        p1, p2, p3 = self.phi
        if p2 @ self.src.a != self.dst.a @ p1 or p3 @ self.src.b != self.dst.b @ p2:
            raise NonCommuting("component maps do not commute with the structure maps")

    @classmethod
    def of(cls, src: QuiverRep, dst: QuiverRep, mats: Sequence) -> "RepMorphism":
        f = src.field
        return cls(src, dst, tuple(_mat(f, m, dst.dims[i], src.dims[i]) for i, m in enumerate(mats)))

    @property
    def field(self) -> Field:
        return self.src.field

    def __matmul__(self, other: "RepMorphism") -> "RepMorphism":
        if other.dst != self.src:
            raise ShapeMismatch("composition of non-composable morphisms")
        return RepMorphism(other.src, self.dst, tuple(p @ q for p, q in zip(self.phi, other.phi)))

    def __add__(self, other: "RepMorphism") -> "RepMorphism":
        return RepMorphism(self.src, self.dst, tuple(p + q for p, q in zip(self.phi, other.phi)))

    def __sub__(self, other: "RepMorphism") -> "RepMorphism":
        return RepMorphism(self.src, self.dst, tuple(p - q for p, q in zip(self.phi, other.phi)))

    def scale(self, c) -> "RepMorphism":
        return RepMorphism(self.src, self.dst, tuple(p.scale(c) for p in self.phi))

    def is_zero(self) -> bool:
        return all(p.is_zero() for p in self.phi)

    def is_iso(self) -> bool:
        return all(p.rows == p.cols and p.rank() == p.rows for p in self.phi)

    def inverse(self) -> "RepMorphism":
        return RepMorphism(self.dst, self.src, tuple(p.inverse() for p in self.phi))

    def flat(self) -> tuple:
        return tuple(x for p in self.phi for r in p.entries for x in r)

    def to_json(self) -> dict:
        return {"src": self.src.to_json(), "dst": self.dst.to_json(),
                "maps": [p.to_json() for p in self.phi]}

    @classmethod
    def from_json(cls, data: dict, field: Field | None = None) -> "RepMorphism":
        src = QuiverRep.from_json(data["src"], field)
        dst = QuiverRep.from_json(data["dst"], src.field)
        mats = [_mat(src.field, [[str(x) for x in r] for r in m], dst.dims[i], src.dims[i])
                for i, m in enumerate(data["maps"])]
        return cls(src, dst, tuple(mats))

    def __repr__(self):
        return f"RepMorphism({self.src.dims} -> {self.dst.dims}, {[p.tolist() for p in self.phi]})"


def identity(X: QuiverRep) -> RepMorphism:
    return RepMorphism(X, X, tuple(FieldMatrix.identity(X.field, d) for d in X.dims))


def zero_morphism(X: QuiverRep, Y: QuiverRep) -> RepMorphism:
    return RepMorphism(X, Y, tuple(FieldMatrix.zeros(X.field, Y.dims[i], X.dims[i]) for i in range(3)))


def _block_diag(field: Field, blocks: Sequence[FieldMatrix]) -> FieldMatrix:
    rows = sum(b.rows for b in blocks)
    cols = sum(b.cols for b in blocks)
    out = [[field(0)] * cols for _ in range(rows)]
    r = c = 0
    for b in blocks:
        for i in range(b.rows):
            out[r + i][c:c + b.cols] = b.entries[i]
        r += b.rows
        c += b.cols
    return FieldMatrix.of(field, out, cols)


class DirectSum(NamedTuple):
    obj: QuiverRep
    injections: tuple[RepMorphism, ...]
    projections: tuple[RepMorphism, ...]


def direct_sum(*reps: QuiverRep, field: Field | None = None) -> DirectSum:
    fld = reps[0].field if reps else (field or GF2)
    dims = tuple(sum(X.dims[i] for X in reps) for i in range(3))
    S = QuiverRep(fld, dims, _block_diag(fld, [X.a for X in reps]) if reps else FieldMatrix.zeros(fld, 0, 0),
                  _block_diag(fld, [X.b for X in reps]) if reps else FieldMatrix.zeros(fld, 0, 0))
    inj, proj = [], []
    offs = [0, 0, 0]
    for X in reps:
        mats = []
        for i in range(3):
            m = [[fld(int(r == offs[i] + c)) for c in range(X.dims[i])] for r in range(dims[i])]
            mats.append(FieldMatrix.of(fld, m, X.dims[i]))
        inj.append(RepMorphism(X, S, tuple(mats)))
        proj.append(RepMorphism(S, X, tuple(m.T for m in mats)))
        offs = [offs[i] + X.dims[i] for i in range(3)]
    return DirectSum(S, tuple(inj), tuple(proj))


def from_labels(labels: Iterable[str], field: Field = GF2) -> QuiverRep:
    """The direct sum of the named indecomposables, in the order given."""
    reps = [indecomposable(l, field) for l in labels]
    if not reps:
        return zero_rep(field)
    return direct_sum(*reps).obj


def from_multiplicities(mult: dict[str, int], field: Field = GF2) -> QuiverRep:
    return from_labels([l for l in LABELS for _ in range(mult.get(l, 0))], field)


def _stack_out(src: QuiverRep, dst: QuiverRep, maps: Sequence[RepMorphism]) -> RepMorphism:
    """``src -> dst`` where dst is the direct sum of the targets of ``maps``."""
    mats = []
    for i in range(3):
        parts = [m.phi[i] for m in maps]
        mats.append(parts[0].vstack(*parts[1:]) if parts else FieldMatrix.zeros(src.field, 0, src.dims[i]))
    return RepMorphism(src, dst, tuple(mats))


def _stack_in(src: QuiverRep, dst: QuiverRep, maps: Sequence[RepMorphism]) -> RepMorphism:
    """``src -> dst`` where src is the direct sum of the sources of ``maps``."""
    mats = []
    for i in range(3):
        parts = [m.phi[i] for m in maps]
        mats.append(parts[0].hstack(*parts[1:]) if parts else FieldMatrix.zeros(src.field, dst.dims[i], 0))
    return RepMorphism(src, dst, tuple(mats))


# --------------------------------------------------------------------------
# solving for morphisms


def _declare(system: LinearSystem, name: str, X: QuiverRep, Y: QuiverRep) -> None:
    for i in range(3):
        system.unknown(f"{name}{i}", Y.dims[i], X.dims[i])
    system.equation([(None, f"{name}1", X.a), (-Y.a, f"{name}0", None)], shape=(Y.dims[1], X.dims[0]))
    system.equation([(None, f"{name}2", X.b), (-Y.b, f"{name}1", None)], shape=(Y.dims[2], X.dims[1]))


def solve_morphisms(unknowns: dict[str, tuple[QuiverRep, QuiverRep]], equations: Sequence,
                    field: Field) -> tuple[dict, list] | None:
    """Morphisms satisfying vertexwise linear equations.

    ``equations`` holds ``(vertex, terms, rhs)`` with ``terms`` a list of
    ``(L, name, R)`` meaning ``sum(L @ name[vertex] @ R) == rhs``.
    """
    system = LinearSystem(field)
    for name, (X, Y) in unknowns.items():
        _declare(system, name, X, Y)
    for vertex, terms, rhs in equations:
        system.equation([(L, f"{name}{vertex}", R) for L, name, R in terms], rhs)
    sol = system.solve()
    if sol is None:
        return None
    values, kernel = sol

    def build(vals):
        return {name: RepMorphism(X, Y, tuple(vals[f"{name}{i}"] for i in range(3)))
                for name, (X, Y) in unknowns.items()}
    return build(values), [build(k) for k in kernel]


def hom_space(X: QuiverRep, Y: QuiverRep) -> list[RepMorphism]:
    """A basis of Hom(X, Y), sorted lexicographically by entries."""
    if X.field != Y.field:
        raise FieldMismatch(f"{X.field} vs {Y.field}")
    return list(_hom_space(X, Y))


@lru_cache(maxsize=8192)
def _hom_space(X: QuiverRep, Y: QuiverRep) -> tuple[RepMorphism, ...]:
    system = LinearSystem(X.field)
    _declare(system, "h", X, Y)
    A, _ = system.matrix()
    basis = []
    for v in A.nullspace():
        vals = system.unpack(v)
        basis.append(RepMorphism(X, Y, tuple(vals[f"h{i}"] for i in range(3))))
    return tuple(sorted(basis, key=lambda m: m.flat(), reverse=True))


def combination(basis: Sequence[RepMorphism], coeffs: Sequence, X: QuiverRep, Y: QuiverRep) -> RepMorphism:
    f = X.field
    mats = []
    for i in range(3):
        acc = [[f(0)] * X.dims[i] for _ in range(Y.dims[i])]
        for c, m in zip(coeffs, basis):
            if c:
                for r, row in enumerate(m.phi[i].entries):
                    acc[r] = [f(x + c * y) for x, y in zip(acc[r], row)]
        mats.append(FieldMatrix.of(f, acc, X.dims[i]))
    return RepMorphism(X, Y, tuple(mats))


def hom_elements(X: QuiverRep, Y: QuiverRep, coefficients: Sequence | None = None) -> Iterator[RepMorphism]:
    """Every morphism X -> Y over a finite field, in lexicographic coefficient order.

    Over Q, ``coefficients`` bounds the enumeration (default ``0, 1``).
    """
    basis = hom_space(X, Y)
    f = X.field
    if coefficients is None:
        coefficients = list(f.elements()) if f.is_finite else [0, 1]
    for coeffs in itertools.product(coefficients, repeat=len(basis)):
        yield combination(basis, [f(c) for c in coeffs], X, Y)


def factor_through(t: RepMorphism, e: RepMorphism) -> RepMorphism | None:
    """``x`` with ``x @ e == t``."""
    sol = solve_morphisms({"x": (e.dst, t.dst)},
                          [(i, [(None, "x", e.phi[i])], t.phi[i]) for i in range(3)], t.field)
    return None if sol is None else sol[0]["x"]


def lift(t: RepMorphism, m: RepMorphism) -> RepMorphism | None:
    """``x`` with ``m @ x == t``."""
    sol = solve_morphisms({"x": (t.src, m.src)},
                          [(i, [(m.phi[i], "x", None)], t.phi[i]) for i in range(3)], t.field)
    return None if sol is None else sol[0]["x"]


def retraction(z: RepMorphism) -> RepMorphism | None:
    X = z.src
    eqs = [(i, [(None, "r", z.phi[i])], FieldMatrix.identity(X.field, X.dims[i])) for i in range(3)]
    sol = solve_morphisms({"r": (z.dst, X)}, eqs, X.field)
    return None if sol is None else sol[0]["r"]


def section(z: RepMorphism) -> RepMorphism | None:
    Y = z.dst
    eqs = [(i, [(z.phi[i], "s", None)], FieldMatrix.identity(Y.field, Y.dims[i])) for i in range(3)]
    sol = solve_morphisms({"s": (Y, z.src)}, eqs, Y.field)
    return None if sol is None else sol[0]["s"]


# --------------------------------------------------------------------------
# decomposition


def _rank(vectors: Sequence[Sequence], field: Field, length: int) -> int:
    if not vectors:
        return 0
    return FieldMatrix.from_columns(field, vectors, length).rank()


def _extend(chosen: list, candidates: Iterable, field: Field, length: int, image=lambda v: v,
            fixed: Sequence = ()) -> list:
    """Greedily add candidates whose images raise the rank of ``fixed`` + chosen images."""
    imgs = list(fixed) + [image(v) for v in chosen]
    out = list(chosen)
    r = _rank(imgs, field, length)
    for v in candidates:
        w = image(v)
        r2 = _rank(imgs + [w], field, length)
        if r2 > r:
            out.append(v)
            imgs.append(w)
            r = r2
    return out


def _std(field: Field, n: int) -> list[tuple]:
    return [tuple(field(int(i == j)) for i in range(n)) for j in range(n)]


def rank_multiplicities(X: QuiverRep) -> dict[str, int]:
    """Multiplicities of the six indecomposables from ranks of a, b and ba."""
    d1, d2, d3 = X.dims
    ra, rb, rba = X.a.rank(), X.b.rank(), (X.b @ X.a).rank()
    return {"E1": d1 - ra, "E2": d2 - ra - rb + rba, "E3": d3 - rb,
            "E12": ra - rba, "E23": rb - rba, "E123": rba}


def multiplicity_name(mult: dict[str, int]) -> str:
    parts = []
    for l in LABELS:
        k = mult.get(l, 0)
        if k == 1:
            parts.append(l)
        elif k > 1:
            parts.append(f"{l}^{k}")
    return "+".join(parts) if parts else "0"


@dataclass(frozen=True)
class Decomposition:
    multiplicities: dict[str, int]
    sum_obj: QuiverRep
    to_sum: RepMorphism
    from_sum: RepMorphism

    @property
    def name(self) -> str:
        return multiplicity_name(self.multiplicities)

    @property
    def labels(self) -> set[str]:
        return {l for l, k in self.multiplicities.items() if k}

    def verify(self) -> bool:
        X = self.to_sum.src
        S = self.sum_obj
        dims_ok = all(sum(k * label_dims(l)[i] for l, k in self.multiplicities.items()) == X.dims[i]
                      for i in range(3))
        return dims_ok and self.from_sum @ self.to_sum == identity(X) and \
            self.to_sum @ self.from_sum == identity(S)


_DECOMP_CACHE: dict = {}


def decompose(X: QuiverRep) -> Decomposition:
    """Split X into indecomposables with an explicit isomorphism to the direct sum.

    Adapted bases are built vertex by vertex (tops of E123, E12, E1 summands at
    vertex 1, then E23 and E2 at vertex 2, then E3 at vertex 3), and the
    resulting counts are checked against the rank formulas.
    """
    cached = _DECOMP_CACHE.get(X)
    if cached is not None:
        return cached
    f = X.field
    d1, d2, d3 = X.dims
    a, b = X.a, X.b
    ba = b @ a
    xs = _extend([], _std(f, d1), f, d3, image=ba.apply)
    ker_ba = ba.nullspace()
    ys = _extend([], ker_ba, f, d2, image=a.apply)
    zs = a.nullspace()
    bax = [ba.apply(x) for x in xs]
    ws = _extend([], _std(f, d2), f, d3, image=b.apply, fixed=bax)
    ay = [a.apply(y) for y in ys]
    us = _extend([], b.nullspace(), f, d2, fixed=ay)
    bw = [b.apply(w) for w in ws]
    vs = _extend([], _std(f, d3), f, d3, fixed=bax + bw)
    mult = {"E1": len(zs), "E2": len(us), "E3": len(vs), "E12": len(ys), "E23": len(ws), "E123": len(xs)}
    if mult != rank_multiplicities(X):
        raise AssertionError(f"adapted basis {mult} disagrees with rank formulas")

    # columns of the isomorphism S -> X, in the block order of from_multiplicities
    cols: list[list[tuple]] = [[], [], []]
    for label in LABELS:
        if label == "E1":
            cols[0] += zs
        elif label == "E2":
            cols[1] += us
        elif label == "E3":
            cols[2] += vs
        elif label == "E12":
            cols[0] += ys
            cols[1] += ay
        elif label == "E23":
            cols[1] += ws
            cols[2] += bw
        else:
            cols[0] += xs
            cols[1] += [a.apply(x) for x in xs]
            cols[2] += bax
    S = from_multiplicities(mult, f)
    P = tuple(FieldMatrix.from_columns(f, cols[i], X.dims[i]) for i in range(3))
    from_sum = RepMorphism(S, X, P)
    to_sum = from_sum.inverse()
    out = Decomposition(mult, S, to_sum, from_sum)
    _DECOMP_CACHE[X] = out
    return out


# --------------------------------------------------------------------------
# abelian structure of the ambient category


class Kernel(NamedTuple):
    obj: QuiverRep
    inclusion: RepMorphism


class Cokernel(NamedTuple):
    obj: QuiverRep
    projection: RepMorphism


class ImageFactor(NamedTuple):
    obj: QuiverRep
    epi: RepMorphism
    mono: RepMorphism


class Square(NamedTuple):
    obj: QuiverRep
    first: RepMorphism
    second: RepMorphism


def subrep(X: QuiverRep, bases: Sequence[FieldMatrix]) -> Kernel:
    """The subrepresentation spanned by the columns of ``bases`` (one per vertex)."""
    f = X.field
    maps = []
    for i, M in ((0, X.a), (1, X.b)):
        B_src, B_dst = bases[i], bases[i + 1]
        img = M @ B_src
        cols = []
        for j in range(img.cols):
            sol = solve_field(B_dst, img.col(j))
            if sol is None:
                raise ValueError("spanned subspaces are not closed under the structure maps")
            cols.append(sol.particular)
        maps.append(FieldMatrix.from_columns(f, cols, B_dst.cols))
    dims = tuple(B.cols for B in bases)
    S = QuiverRep(f, dims, maps[0], maps[1])
    return Kernel(S, RepMorphism(S, X, tuple(bases)))


def _null_basis(M: FieldMatrix) -> FieldMatrix:
    return FieldMatrix.from_columns(M.field, M.nullspace(), M.cols)


def kernel_L(z: RepMorphism) -> Kernel:
    return subrep(z.src, [_null_basis(p) for p in z.phi])


def image_L(z: RepMorphism) -> ImageFactor:
    Im, m = subrep(z.dst, [p.column_space() for p in z.phi])
    e = lift(z, m)
    return ImageFactor(Im, e, m)


def quotient(Y: QuiverRep, bases: Sequence[FieldMatrix]) -> Cokernel:
    """``Y`` modulo the subrepresentation spanned by ``bases``."""
    f = Y.field
    qs, secs = [], []
    for i in range(3):
        B = bases[i]
        n = Y.dims[i]
        span = [B.col(j) for j in range(B.cols)]
        ext = _extend([], _std(f, n), f, n, fixed=span)
        full = FieldMatrix.from_columns(f, span + ext, n)
        inv = full.inverse() if n else full
        k = len(span)
        qs.append(inv.submatrix(range(k, n), range(n)))
        secs.append(FieldMatrix.from_columns(f, ext, n))
    a = qs[1] @ Y.a @ secs[0]
    b = qs[2] @ Y.b @ secs[1]
    C = QuiverRep(f, tuple(q.rows for q in qs), a, b)
    return Cokernel(C, RepMorphism(Y, C, tuple(qs)))


def cokernel_L(z: RepMorphism) -> Cokernel:
    return quotient(z.dst, [p.column_space() for p in z.phi])


def pushout_L(f: RepMorphism, g: RepMorphism) -> Square:
    """Pushout of ``A <-f- D -g-> B``."""
    if f.src != g.src:
        raise ShapeMismatch("pushout legs must share their source")
    ds = direct_sum(f.dst, g.dst)
    iA, iB = ds.injections
    diff = iA @ f - iB @ g
    P, q = cokernel_L(diff)
    return Square(P, q @ iA, q @ iB)


def pullback_L(f: RepMorphism, g: RepMorphism) -> Square:
    """Pullback of ``A -f-> C <-g- B``."""
    if f.dst != g.dst:
        raise ShapeMismatch("pullback legs must share their target")
    ds = direct_sum(f.src, g.src)
    pA, pB = ds.projections
    diff = f @ pA - g @ pB
    Q, k = kernel_L(diff)
    return Square(Q, pA @ k, pB @ k)


# --------------------------------------------------------------------------
# subcategories K(I)


@dataclass(frozen=True)
class Subcategory:
    allowed: frozenset
    closure_kind: str  # "reflective" | "coreflective" | "both" | "neither"
    field: Field = dc_field(default=GF2, compare=False)

    @property
    def reflective(self) -> bool:
        return self.closure_kind in ("reflective", "both")

    @property
    def coreflective(self) -> bool:
        return self.closure_kind in ("coreflective", "both")

    @property
    def labels(self) -> list[str]:
        return [l for l in LABELS if l in self.allowed]

    def __str__(self):
        return "{" + ",".join(self.labels) + "}"


def _embeds_in(F: QuiverRep, targets: Sequence[QuiverRep]) -> bool:
    """Whether the evaluation map from F into a sum of targets is a monomorphism."""
    maps = [h for T in targets for h in hom_space(F, T)]
    if not maps:
        return F.is_zero()
    return all(FieldMatrix.vstack(*[m.phi[i] for m in maps]).rank() == F.dims[i] for i in range(3))


def _covered_by(F: QuiverRep, sources: Sequence[QuiverRep]) -> bool:
    """Whether the coevaluation map from a sum of sources onto F is an epimorphism."""
    maps = [h for S in sources for h in hom_space(S, F)]
    if not maps:
        return F.is_zero()
    return all(FieldMatrix.hstack(*[m.phi[i] for m in maps]).rank() == F.dims[i] for i in range(3))


def subcategory(labels: Iterable[str], field: Field = GF2) -> Subcategory:
    allowed = frozenset(labels)
    unknown = allowed - set(LABELS)
    if unknown:
        raise ValueError(f"unknown labels {sorted(unknown)}")
    objs = [indecomposable(l, field) for l in LABELS if l in allowed]
    outside = [l for l in LABELS if l not in allowed]
    sub_closed = not any(_embeds_in(indecomposable(l, field), objs) for l in outside)
    quot_closed = not any(_covered_by(indecomposable(l, field), objs) for l in outside)
    kind = {(True, True): "both", (True, False): "reflective",
            (False, True): "coreflective", (False, False): "neither"}[(sub_closed, quot_closed)]
    return Subcategory(allowed, kind, field)


def member(X: QuiverRep, I: Subcategory) -> bool:
    return decompose(X).labels <= I.allowed


def _require(I: Subcategory, *objs: QuiverRep) -> None:
    for X in objs:
        if not member(X, I):
            raise ObjectNotInSubcategory(f"{decompose(X).name} is not in K{I}")


class Reflection(NamedTuple):
    obj: QuiverRep
    unit: RepMorphism


class Coreflection(NamedTuple):
    obj: QuiverRep
    counit: RepMorphism


def reflect(X: QuiverRep, I: Subcategory) -> Reflection:
    """Image of the evaluation map ``X -> prod_E E^{Hom(X, E)}`` over E in I."""
    if not I.reflective:
        raise NotReflective(f"K{I} is {I.closure_kind}")
    if member(X, I):
        return Reflection(X, identity(X))
    maps = [h for l in I.labels for h in hom_space(X, indecomposable(l, X.field))]
    targets = [h.dst for h in maps]
    P = direct_sum(*targets, field=X.field).obj
    ev = _stack_out(X, P, maps)
    Im, e, _ = image_L(ev)
    return Reflection(Im, e)


def coreflect(X: QuiverRep, I: Subcategory) -> Coreflection:
    """The trace of I in X: the sum of the images of all ``E -> X`` with E in I."""
    if not I.coreflective:
        raise NotCoreflective(f"K{I} is {I.closure_kind}")
    if member(X, I):
        return Coreflection(X, identity(X))
    maps = [h for l in I.labels for h in hom_space(indecomposable(l, X.field), X)]
    P = direct_sum(*[h.src for h in maps], field=X.field).obj
    coev = _stack_in(P, X, maps)
    Im, _, m = image_L(coev)
    return Coreflection(Im, m)


def _no_recipe(I: Subcategory):
    return ValueError(f"K{I} is neither reflective nor coreflective; no limit/colimit recipe")


def k_kernel(z: RepMorphism, I: Subcategory) -> Kernel:
    _require(I, z.src, z.dst)
    K, k = kernel_L(z)
    if I.reflective:
        return Kernel(K, k)
    if I.coreflective:
        S, c = coreflect(K, I)
        return Kernel(S, k @ c)
    raise _no_recipe(I)


def k_cokernel(z: RepMorphism, I: Subcategory) -> Cokernel:
    _require(I, z.src, z.dst)
    C, q = cokernel_L(z)
    if I.coreflective:
        return Cokernel(C, q)
    if I.reflective:
        R, u = reflect(C, I)
        return Cokernel(R, u @ q)
    raise _no_recipe(I)


def k_pushout(f: RepMorphism, g: RepMorphism, I: Subcategory) -> Square:
    _require(I, f.src, f.dst, g.dst)
    P, p1, p2 = pushout_L(f, g)
    if I.coreflective:
        return Square(P, p1, p2)
    if I.reflective:
        R, u = reflect(P, I)
        return Square(R, u @ p1, u @ p2)
    raise _no_recipe(I)


def k_pullback(f: RepMorphism, g: RepMorphism, I: Subcategory) -> Square:
    _require(I, f.src, g.src, f.dst)
    Q, q1, q2 = pullback_L(f, g)
    if I.reflective:
        return Square(Q, q1, q2)
    if I.coreflective:
        S, c = coreflect(Q, I)
        return Square(S, q1 @ c, q2 @ c)
    raise _no_recipe(I)


@dataclass(frozen=True)
class KFlags:
    mono: bool
    epi: bool
    regular_mono: bool
    regular_epi: bool
    split_mono: bool
    split_epi: bool
    pure: bool

    def as_dict(self) -> dict[str, bool]:
        return dict(self.__dict__)


def is_mono_k(z: RepMorphism, I: Subcategory) -> bool:
    return k_kernel(z, I).obj.is_zero()


def is_epi_k(z: RepMorphism, I: Subcategory) -> bool:
    return k_cokernel(z, I).obj.is_zero()


def is_regular_mono_k(z: RepMorphism, I: Subcategory) -> bool:
    C, c = k_cokernel(z, I)
    _, kap = k_kernel(c, I)
    t = lift(z, kap)
    return t is not None and t.is_iso()


def is_regular_epi_k(z: RepMorphism, I: Subcategory) -> bool:
    _, k = k_kernel(z, I)
    _, pi = k_cokernel(k, I)
    s = factor_through(z, pi)
    return s is not None and s.is_iso()


def classify_in_k(z: RepMorphism, I: Subcategory) -> KFlags:
    _require(I, z.src, z.dst)
    split_mono = retraction(z) is not None
    split_epi = section(z) is not None
    return KFlags(mono=is_mono_k(z, I), epi=is_epi_k(z, I),
                  regular_mono=is_regular_mono_k(z, I), regular_epi=is_regular_epi_k(z, I),
                  split_mono=split_mono, split_epi=split_epi, pure=split_mono)


@dataclass(frozen=True)
class CoimIm:
    coimage: QuiverRep
    to_coimage: RepMorphism
    mid: RepMorphism
    image: QuiverRep
    from_image: RepMorphism


def coim_im_factor(z: RepMorphism, I: Subcategory) -> CoimIm:
    """``X -> J -> I -> Y`` with J the coimage and I the image computed in K."""
    _, k = k_kernel(z, I)
    J, p = k_cokernel(k, I)
    _, c = k_cokernel(z, I)
    Im, iota = k_kernel(c, I)
    sol = solve_morphisms({"m": (J, Im)},
                          [(i, [(iota.phi[i], "m", p.phi[i])], z.phi[i]) for i in range(3)], z.field)
    if sol is None:
        raise AssertionError("z does not factor through its coimage and image")
    values, kernel = sol
    if kernel:
        raise AssertionError("middle morphism of the coimage-image factorization is not unique")
    return CoimIm(J, p, values["m"], Im, iota)


# --------------------------------------------------------------------------
# scans over K(I)


def k_objects(I: Subcategory, dim_bound: int, field: Field | None = None) -> list[QuiverRep]:
    """Canonical objects of K(I) with total dimension at most ``dim_bound``.

    Ordered by total dimension, then by multiplicity vector in label order.
    """
    field = field or I.field
    labels = I.labels
    sizes = [sum(label_dims(l)) for l in labels]
    found = []
    for ks in itertools.product(*(range(dim_bound // s + 1) for s in sizes)):
        total = sum(k * s for k, s in zip(ks, sizes))
        if total <= dim_bound:
            found.append((total, tuple(-k for k in ks), dict(zip(labels, ks))))
    found.sort(key=lambda t: (t[0], t[1]))
    return [from_multiplicities(m, field) for _, _, m in found]


def k_morphisms(I: Subcategory, dim_bound: int, field: Field | None = None,
                coefficients: Sequence | None = None) -> Iterator[RepMorphism]:
    """All morphisms between objects of :func:`k_objects`, in a fixed order."""
    objs = k_objects(I, dim_bound, field)
    for X in objs:
        for Y in objs:
            yield from hom_elements(X, Y, coefficients)


@dataclass
class ScanResult:
    left: bool
    right: bool
    left_witness: RepMorphism | None = None
    right_witness: RepMorphism | None = None
    checked: int = 0

    def to_json(self) -> dict:
        out: dict = {"left": self.left, "right": self.right, "checked": self.checked}
        for side in ("left", "right"):
            w = getattr(self, f"{side}_witness")
            if w is not None:
                out[f"{side}_witness"] = {"src": decompose(w.src).name, "dst": decompose(w.dst).name,
                                          "morphism": w.to_json()}
        return out


def semiabelian_scan(I: Subcategory, dim_bound: int = 3, field: Field | None = None,
                     samples: int = 200, seed: int = 0) -> ScanResult:
    """Test whether the coimage-image comparison is mono (left) and epi (right).

    Exhaustive over a finite field; over Q a seeded random sample of
    ``samples`` morphisms with small coefficients is tested instead.
    """
    field = field or I.field
    res = ScanResult(True, True)
    if field.is_finite:
        morphisms: Iterable[RepMorphism] = k_morphisms(I, dim_bound, field)
    else:
        morphisms = _sample_morphisms(I, dim_bound, field, samples, seed)
    for z in morphisms:
        res.checked += 1
        mid = coim_im_factor(z, I).mid
        if res.left and not is_mono_k(mid, I):
            res.left, res.left_witness = False, z
        if res.right and not is_epi_k(mid, I):
            res.right, res.right_witness = False, z
    return res


def _sample_morphisms(I: Subcategory, dim_bound: int, field: Field, samples: int, seed: int):
    rng = random.Random(seed)
    objs = k_objects(I, dim_bound, field)
    for _ in range(samples):
        X, Y = rng.choice(objs), rng.choice(objs)
        basis = hom_space(X, Y)
        yield combination(basis, [field(rng.randint(-3, 3)) for _ in basis], X, Y)


@dataclass
class EffectiveUnionReport:
    D: QuiverRep
    E: QuiverRep
    h: RepMorphism
    g_bar: RepMorphism
    f_bar: RepMorphism
    f_prime: RepMorphism
    g_prime: RepMorphism
    h_flags: KFlags
    f_flags: KFlags
    g_flags: KFlags

    def to_json(self) -> dict:
        return {"D": decompose(self.D).name, "E": decompose(self.E).name,
                "h": self.h.to_json(), "h_flags": self.h_flags.as_dict(),
                "f_flags": self.f_flags.as_dict(), "g_flags": self.g_flags.as_dict()}


def effective_union(f: RepMorphism, g: RepMorphism, I: Subcategory) -> EffectiveUnionReport:
    """Pullback of two subobjects, pushout of the pullback legs, and the comparison map h."""
    if f.dst != g.dst:
        raise ShapeMismatch("f and g must share their target")
    _require(I, f.src, g.src, f.dst)
    D, g_bar, f_bar = k_pullback(f, g, I)
    E, f_prime, g_prime = k_pushout(g_bar, f_bar, I)
    sol = solve_morphisms({"h": (E, f.dst)},
                          [(i, [(None, "h", f_prime.phi[i])], f.phi[i]) for i in range(3)] +
                          [(i, [(None, "h", g_prime.phi[i])], g.phi[i]) for i in range(3)], f.field)
    if sol is None:
        raise AssertionError("no comparison map out of the pushout")
    values, kernel = sol
    if kernel:
        raise AssertionError("comparison map out of the pushout is not unique")
    h = values["h"]
    return EffectiveUnionReport(D, E, h, g_bar, f_bar, f_prime, g_prime,
                                classify_in_k(h, I), classify_in_k(f, I), classify_in_k(g, I))


@dataclass
class InjectivityResult:
    injective: bool
    mono: RepMorphism | None = None
    morphism: RepMorphism | None = None

    def __bool__(self):
        return self.injective

    def to_json(self) -> dict:
        out: dict = {"regular_injective": self.injective}
        if self.mono is not None:
            out["witness"] = {"regular_mono": self.mono.to_json(), "morphism": self.morphism.to_json(),
                              "mono_src": decompose(self.mono.src).name,
                              "mono_dst": decompose(self.mono.dst).name}
        return out


def _in_span(vec: tuple, span: Sequence[tuple], field: Field) -> bool:
    if not any(vec):
        return True
    if not span:
        return False
    A = FieldMatrix.from_columns(field, span, len(vec))
    return solve_field(A, vec) is not None


def is_regular_injective(Q: QuiverRep, I: Subcategory, dim_bound: int = 3) -> InjectivityResult:
    """Whether every ``X -> Q`` extends along every regular mono ``X -> Y`` of K(I)."""
    _require(I, Q)
    f = Q.field
    objs = k_objects(I, dim_bound, f)
    for Y in objs:
        hom_YQ = hom_space(Y, Q)
        for X in objs:
            hom_XQ = hom_space(X, Q)
            if not hom_XQ:
                continue
            for m in hom_elements(X, Y):
                restricted = [(e @ m).flat() for e in hom_YQ]
                missing = next((t for t in hom_XQ if not _in_span(t.flat(), restricted, f)), None)
                if missing is None:
                    continue
                if is_mono_k(m, I) and is_regular_mono_k(m, I):
                    return InjectivityResult(False, m, missing)
    return InjectivityResult(True)


# --------------------------------------------------------------------------
# purity by lifting, inside K(I)


def purity_lifting_k(z: RepMorphism, I: Subcategory, dim_bound: int = 2) -> dict:
    """Search the commutative squares of the lifting definition of purity in K(I).

    Test objects are the objects of K(I) up to ``dim_bound``; the top map runs
    over all of Hom(M, N) and the remaining corners are quantified linearly.
    Returns ``{"pure": bool, "square": ...}``.
    """
    _require(I, z.src, z.dst)
    X, Y = z.src, z.dst
    f = X.field
    objs = k_objects(I, dim_bound, f)
    for M in objs:
        for N in objs:
            hom_NX = hom_space(N, X)
            for fm in hom_elements(M, N):
                factored = [(g @ fm).flat() for g in hom_NX]
                system = LinearSystem(f)
                _declare(system, "u", M, X)
                _declare(system, "v", N, Y)
                for i in range(3):
                    system.equation([(z.phi[i], f"u{i}", None), (None, f"v{i}", fm.phi[i].scale(-1))],
                                    shape=(Y.dims[i], M.dims[i]))
                A, _ = system.matrix()
                for vec in A.nullspace():
                    u_flat = system.project(vec, ["u0", "u1", "u2"])
                    if _in_span(u_flat, factored, f):
                        continue
                    vals = system.unpack(vec)
                    u = RepMorphism(M, X, tuple(vals[f"u{i}"] for i in range(3)))
                    v = RepMorphism(N, Y, tuple(vals[f"v{i}"] for i in range(3)))
                    return {"pure": False, "square": {"f": fm, "u": u, "v": v}}
    return {"pure": True}
