"""Category-agnostic checks: retract witnesses, finite chains and closure laws of purity.

An adapter bundles the operations of one concrete category together with
random samplers, so the same law suite runs on abelian groups and on quiver
representations.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from functools import reduce
from typing import Any, Callable, Sequence

from . import abelian as ab
from . import quiver as qv
from .linalg import GF2, Field


class EndpointMismatch(ValueError):
    pass


@dataclass
class CategoryAdapter:
    name: str
    compose: Callable[[Any, Any], Any]  # compose(g, f) = g after f
    identity: Callable[[Any], Any]
    kernel: Callable[[Any], tuple]
    cokernel: Callable[[Any], tuple]
    pushout: Callable[[Any, Any], tuple]  # (P, B -> P, C -> P) for f: A -> B, g: A -> C
    pullback: Callable[[Any, Any], tuple]
    classify: Callable[[Any], dict]
    purity_check: Callable[[Any], bool]
    equality: Callable[[Any, Any], bool]
    src: Callable[[Any], Any]
    dst: Callable[[Any], Any]
    direct_sum: Callable[..., tuple]  # (S, injections, projections)
    sample_object: Callable[[random.Random], Any]
    sample_morphism: Callable[[random.Random, Any, Any], Any]
    describe: Callable[[Any], Any] = repr


@dataclass(frozen=True)
class RetractWitness:
    i: Any
    r: Any
    j: Any
    s: Any


def verify_retract(f, f_prime, w: RetractWitness, adapter: CategoryAdapter) -> bool:
    """Check that ``f`` is a retract of ``f_prime`` in the arrow category via ``w``."""
    A, B = adapter.src(f), adapter.dst(f)
    A2, B2 = adapter.src(f_prime), adapter.dst(f_prime)
    ends = [(w.i, A, A2), (w.r, A2, A), (w.j, B, B2), (w.s, B2, B)]
    if any(adapter.src(m) != s or adapter.dst(m) != t for m, s, t in ends):
        raise EndpointMismatch("retract witness does not fit f and f'")
    c, eq = adapter.compose, adapter.equality
    return (eq(c(w.r, w.i), adapter.identity(A)) and eq(c(w.s, w.j), adapter.identity(B))
            and eq(c(f_prime, w.i), c(w.j, f)) and eq(c(f, w.r), c(w.s, f_prime)))


def search_retract_quiver(f: qv.RepMorphism, f_prime: qv.RepMorphism) -> RetractWitness | None:
    """Brute-force search for a retract witness over a finite field.

    Slow path: enumerates Hom(A, A'), Hom(A', A), Hom(B, B'), Hom(B', B), so it
    is only usable for very small representations.
    """
    if not f.field.is_finite:
        raise ValueError("retract search needs a finite field")
    A, B, A2, B2 = f.src, f.dst, f_prime.src, f_prime.dst
    idA, idB = qv.identity(A), qv.identity(B)
    sides_A = [(i, r) for i in qv.hom_elements(A, A2) for r in qv.hom_elements(A2, A) if r @ i == idA]
    sides_B = [(j, s) for j in qv.hom_elements(B, B2) for s in qv.hom_elements(B2, B) if s @ j == idB]
    for i, r in sides_A:
        for j, s in sides_B:
            if f_prime @ i == j @ f and f @ r == s @ f_prime:
                return RetractWitness(i, r, j, s)
    return None


@dataclass
class ChainComposition:
    morphisms: list
    composite: Any


def compose_chain(fs: Sequence, adapter: CategoryAdapter, obj=None) -> ChainComposition:
    """Compose ``f_0, f_1, ...`` (``f_0`` first).  An empty chain needs ``obj``."""
    fs = list(fs)
    if not fs:
        if obj is None:
            raise EndpointMismatch("an empty chain needs an object")
        return ChainComposition([], adapter.identity(obj))
    for k, (f, g) in enumerate(zip(fs, fs[1:])):
        if adapter.dst(f) != adapter.src(g):
            raise EndpointMismatch(f"link {k} does not end where link {k + 1} starts")
    if obj is not None and adapter.src(fs[0]) != obj:
        raise EndpointMismatch("chain does not start at the given object")
    composite = reduce(lambda acc, g: adapter.compose(g, acc), fs[1:], fs[0])
    return ChainComposition(fs, composite)


# --------------------------------------------------------------------------
# closure laws


@dataclass
class LawReport:
    law: str
    samples: int
    applicable: int
    violations: int
    seed: int
    first_counterexample: Any = None

    def to_json(self) -> dict:
        out = {"law": self.law, "samples": self.samples, "applicable": self.applicable,
               "violations": self.violations, "seed": self.seed}
        if self.first_counterexample is not None:
            out["first_counterexample"] = self.first_counterexample
        return out


@dataclass
class SampleConfig:
    samples: int = 200
    seed: int = 0


def _graph(adapter: CategoryAdapter, t):
    """The split mono ``(1, t): X -> X + Y`` for ``t: X -> Y``."""
    X, Y = adapter.src(t), adapter.dst(t)
    S, (iX, iY), _ = adapter.direct_sum(X, Y)
    return S, _add(adapter, iX, adapter.compose(iY, t))


def _add(adapter, f, g):
    return f + g


def _law_split(adapter, rng):
    X, Y = adapter.sample_object(rng), adapter.sample_object(rng)
    _, f = _graph(adapter, adapter.sample_morphism(rng, X, Y))
    return True, adapter.purity_check(f), {"f": adapter.describe(f)}


def _law_composition(adapter, rng):
    X, Y, Z = (adapter.sample_object(rng) for _ in range(3))
    f, g = adapter.sample_morphism(rng, X, Y), adapter.sample_morphism(rng, Y, Z)
    if rng.random() < 0.5:
        Y2, f = _graph(adapter, f)
        _, g = _graph(adapter, adapter.sample_morphism(rng, Y2, Z))
    if not (adapter.purity_check(f) and adapter.purity_check(g)):
        return False, True, None
    gf = adapter.compose(g, f)
    return True, adapter.purity_check(gf), {"f": adapter.describe(f), "g": adapter.describe(g)}


def _law_cancellation(adapter, rng):
    X, Y, Z = (adapter.sample_object(rng) for _ in range(3))
    f, g = adapter.sample_morphism(rng, X, Y), adapter.sample_morphism(rng, Y, Z)
    if not adapter.purity_check(adapter.compose(g, f)):
        return False, True, None
    return True, adapter.purity_check(f), {"f": adapter.describe(f), "g": adapter.describe(g)}


def _law_pushout(adapter, rng):
    X, Y, C = (adapter.sample_object(rng) for _ in range(3))
    if rng.random() < 0.5:
        _, f = _graph(adapter, adapter.sample_morphism(rng, X, Y))
    else:
        f = adapter.sample_morphism(rng, X, Y)
    if not adapter.purity_check(f):
        return False, True, None
    g = adapter.sample_morphism(rng, X, C)
    _, _, f_bar = adapter.pushout(f, g)
    return True, adapter.purity_check(f_bar), {"f": adapter.describe(f), "g": adapter.describe(g)}


def _law_retract(adapter, rng):
    A, B, A2, B2 = (adapter.sample_object(rng) for _ in range(4))
    f, k = adapter.sample_morphism(rng, A, B), adapter.sample_morphism(rng, A2, B2)
    if rng.random() < 0.5:
        (B, f), (B2, k) = _graph(adapter, f), _graph(adapter, k)
    SA, (iA, iA2), (pA, pA2) = adapter.direct_sum(A, A2)
    SB, (iB, iB2), (pB, pB2) = adapter.direct_sum(B, B2)
    f_prime = _add(adapter, adapter.compose(adapter.compose(iB, f), pA),
                   adapter.compose(adapter.compose(iB2, k), pA2))
    w = RetractWitness(iA, pA, iB, pB)
    if not verify_retract(f, f_prime, w, adapter):
        return True, False, {"f": adapter.describe(f), "reason": "witness rejected"}
    if not adapter.purity_check(f_prime):
        return False, True, None
    return True, adapter.purity_check(f), {"f": adapter.describe(f), "f_prime": adapter.describe(f_prime)}


LAWS = {
    "split-monos-are-pure": _law_split,
    "composition": _law_composition,
    "left-cancellation": _law_cancellation,
    "pushout-stability": _law_pushout,
    "retract-transfer": _law_retract,
}


def closure_suite(adapter: CategoryAdapter, config: SampleConfig = SampleConfig()) -> list[LawReport]:
    """Run every closure law on ``config.samples`` seeded random instances."""
    reports = []
    for law, check in LAWS.items():
        rng = random.Random(f"{config.seed}/{adapter.name}/{law}")
        rep = LawReport(law, config.samples, 0, 0, config.seed)
        for _ in range(config.samples):
            applicable, ok, data = check(adapter, rng)
            if not applicable:
                continue
            rep.applicable += 1
            if not ok:
                rep.violations += 1
                if rep.first_counterexample is None:
                    rep.first_counterexample = data
        reports.append(rep)
    return reports


# --------------------------------------------------------------------------
# adapters


def ab_adapter(max_gens: int = 3, max_entry: int = 3) -> CategoryAdapter:
    def sample_object(rng):
        return ab.random_group(rng, max_gens, 2, max_entry)

    def sample_morphism(rng, X, Y):
        return ab.random_morphism(rng, X, Y, max_entry)

    return CategoryAdapter(
        name="ab",
        compose=lambda g, f: g @ f,
        identity=ab.identity,
        kernel=ab.kernel,
        cokernel=ab.cokernel,
        pushout=ab.pushout,
        pullback=ab.pullback,
        classify=lambda f: ab.classify(f).as_dict(),
        purity_check=lambda f: ab.purity_divisibility(f).pure,
        equality=lambda f, g: f == g,
        src=lambda f: f.src,
        dst=lambda f: f.dst,
        direct_sum=ab.direct_sum,
        sample_object=sample_object,
        sample_morphism=sample_morphism,
        describe=lambda f: f.to_json(),
    )


def quiver_adapter(labels: Sequence[str] = qv.LABELS, dim_bound: int = 2,
                   field: Field = GF2) -> CategoryAdapter:
    I = qv.subcategory(labels, field)
    objs = qv.k_objects(I, dim_bound, field)

    def sample_morphism(rng, X, Y):
        basis = qv.hom_space(X, Y)
        coeffs = [field(rng.choice(list(field.elements())) if field.is_finite else rng.randint(-2, 2))
                  for _ in basis]
        return qv.combination(basis, coeffs, X, Y)

    def sum_(*objs_):
        return qv.direct_sum(*objs_, field=field)

    return CategoryAdapter(
        name=f"quiver{I}",
        compose=lambda g, f: g @ f,
        identity=qv.identity,
        kernel=lambda f: qv.k_kernel(f, I),
        cokernel=lambda f: qv.k_cokernel(f, I),
        pushout=lambda f, g: qv.k_pushout(f, g, I),
        pullback=lambda f, g: qv.k_pullback(f, g, I),
        classify=lambda f: qv.classify_in_k(f, I).as_dict(),
        purity_check=lambda f: qv.classify_in_k(f, I).pure,
        equality=lambda f, g: f == g,
        src=lambda f: f.src,
        dst=lambda f: f.dst,
        direct_sum=sum_,
        sample_object=lambda rng: rng.choice(objs),
        sample_morphism=sample_morphism,
        describe=lambda f: f.to_json(),
    )


def broken_adapter(base: CategoryAdapter, seed: int = 0) -> CategoryAdapter:
    """``base`` with a purity check that answers at random (negative control)."""
    rng = random.Random(seed)
    return CategoryAdapter(**{**base.__dict__, "name": f"broken-{base.name}",
                              "purity_check": lambda f: rng.random() < 0.5})
