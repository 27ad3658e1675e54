"""Brute-force oracles over F2 that share no code with the package."""
import itertools
from collections import Counter
from functools import lru_cache


def mats(r, c):
    for bits in itertools.product((0, 1), repeat=r * c):
        yield tuple(tuple(bits[i * c:(i + 1) * c]) for i in range(r))


def ident(n):
    return tuple(tuple(int(i == j) for j in range(n)) for i in range(n))


def _compose(M, N, r, k, c):
    """``M @ N`` for ``M`` of shape r x k and ``N`` of shape k x c, allowing empty shapes."""
    return tuple(tuple(sum(M[i][t] * N[t][j] for t in range(k)) % 2 for j in range(c)) for i in range(r))


def endomorphisms(dims, a, b):
    d1, d2, d3 = dims
    by_phi2 = {}
    for p2 in mats(d2, d2):
        ok1 = [p1 for p1 in mats(d1, d1) if _compose(p2, a, d2, d2, d1) == _compose(a, p1, d2, d1, d1)]
        if not ok1:
            continue
        ok3 = [p3 for p3 in mats(d3, d3) if _compose(p3, b, d3, d3, d2) == _compose(b, p2, d3, d2, d2)]
        by_phi2[p2] = (ok1, ok3)
    for p2, (ok1, ok3) in by_phi2.items():
        for p1 in ok1:
            for p3 in ok3:
                yield p1, p2, p3


def _col_basis(M, r, c):
    basis = []
    for j in range(c):
        v = tuple(M[i][j] for i in range(r))
        if any(v) and v not in _span(basis, r):
            basis.append(v)
    return basis


def _span(basis, r):
    out = set()
    for coeffs in itertools.product((0, 1), repeat=len(basis)):
        out.add(tuple(sum(c * v[i] for c, v in zip(coeffs, basis)) % 2 for i in range(r)))
    return out


def _coords(v, basis, r):
    for coeffs in itertools.product((0, 1), repeat=len(basis)):
        if tuple(sum(c * b[i] for c, b in zip(coeffs, basis)) % 2 for i in range(r)) == v:
            return coeffs
    raise AssertionError("vector outside the span")


def _restrict(dims, a, b, bases):
    """The subrepresentation spanned by ``bases`` at each vertex, in those bases."""
    d1, d2, d3 = dims
    B1, B2, B3 = bases
    apply = lambda M, v, r: tuple(sum(M[i][k] * v[k] for k in range(len(v))) % 2 for i in range(r))
    na = tuple(zip(*[_coords(apply(a, v, d2), B2, d2) for v in B1])) if B1 and B2 else \
        tuple(() for _ in B2)
    nb = tuple(zip(*[_coords(apply(b, v, d3), B3, d3) for v in B2])) if B2 and B3 else \
        tuple(() for _ in B3)
    return (len(B1), len(B2), len(B3)), tuple(map(tuple, na)), tuple(map(tuple, nb))


@lru_cache(maxsize=None)
def split_multiplicities(dims, a, b):
    """Indecomposable multiplicities by repeatedly splitting off idempotents."""
    if not any(dims):
        return Counter()
    for e in endomorphisms(dims, a, b):
        if any(_compose(ei, ei, d, d, d) != ei for ei, d in zip(e, dims)):
            continue
        if all(not any(map(any, ei)) for ei in e) or all(ei == ident(d) for ei, d in zip(e, dims)):
            continue
        comp = tuple(tuple(tuple((ident(d)[i][j] - ei[i][j]) % 2 for j in range(d)) for i in range(d))
                     for ei, d in zip(e, dims))
        out = Counter()
        for idem in (e, comp):
            bases = [_col_basis(M, d, d) for M, d in zip(idem, dims)]
            out += split_multiplicities(*_restrict(dims, a, b, bases))
        return out
    # indecomposable: a thin interval module
    assert all(d <= 1 for d in dims)
    support = [i + 1 for i, d in enumerate(dims) if d]
    assert support == list(range(support[0], support[-1] + 1))
    return Counter({"E" + "".join(map(str, support)): 1})


def all_reps(max_dim=2):
    for dims in itertools.product(range(max_dim + 1), repeat=3):
        d1, d2, d3 = dims
        for a in mats(d2, d1):
            for b in mats(d3, d2):
                yield dims, a, b
