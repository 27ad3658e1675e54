import itertools

import pytest

from oracles import all_reps, split_multiplicities
from preabelian import quiver as qv
from preabelian.linalg import GF2, QQ

FIELDS = [GF2, QQ]
I1_LABELS = [l for l in qv.LABELS if l != "E12"]
I2_LABELS = [l for l in qv.LABELS if l != "E23"]


def E(label, F=GF2):
    return qv.indecomposable(label, F)


def nonzero(X, Y):
    return qv.hom_space(X, Y)[0]


def union_left(F):
    C = qv.QuiverRep.of(F, (1, 1, 2), [[1]], [[1], [1]])
    A = E("E3", F)
    return (qv.RepMorphism.of(A, C, [[], [], [[1], [0]]]), qv.RepMorphism.of(A, C, [[], [], [[0], [1]]]))


def union_right(F):
    C = qv.QuiverRep.of(F, (2, 1, 1), [[1, 1]], [[1]])
    A = E("E123", F)
    return (qv.RepMorphism.of(A, C, [[[1], [0]], [[1]], [[1]]]),
            qv.RepMorphism.of(A, C, [[[0], [1]], [[1]], [[1]]]))


# -- objects and morphisms -----------------------------------------------------


@pytest.mark.parametrize("F", FIELDS)
def test_indecomposables_are_thin_intervals(F):
    for l in qv.LABELS:
        X = E(l, F)
        assert X.dims == qv.label_dims(l)
        for M, (i, j) in ((X.a, (0, 1)), (X.b, (1, 2))):
            if X.dims[i] and X.dims[j]:
                assert M.tolist() == [[1]]


def test_noncommuting_morphism_rejected():
    with pytest.raises(qv.NonCommuting):
        qv.RepMorphism.of(E("E12"), E("E12"), [[[1]], [[0]], []])


@pytest.mark.parametrize("F", FIELDS)
def test_hom_dimensions(F):
    assert len(qv.hom_space(E("E3", F), E("E123", F))) == 1
    assert len(qv.hom_space(E("E2", F), E("E123", F))) == 0
    assert len(qv.hom_space(E("E2", F), E("E2", F))) == 1
    # Hom(E[a,b], E[c,d]) is nonzero exactly when c <= a <= d <= b
    span = {l: (min(map(int, l[1:])), max(map(int, l[1:]))) for l in qv.LABELS}
    for s, t in itertools.product(qv.LABELS, repeat=2):
        (a, b), (c, d) = span[s], span[t]
        assert len(qv.hom_space(E(s, F), E(t, F))) == int(c <= a <= d <= b)


def test_json_round_trip():
    f, _ = union_left(QQ)
    assert qv.RepMorphism.from_json(f.to_json()) == f
    X = qv.QuiverRep.from_json({"dims": [0, 0, 1]}, GF2)
    assert X == E("E3")


# -- decomposition -------------------------------------------------------------


@pytest.mark.parametrize("F", FIELDS)
def test_decompose_examples(F):
    C = union_left(F)[0].dst
    assert qv.decompose(C).name == "E3+E123"
    assert qv.decompose(union_right(F)[0].dst).name == "E1+E123"
    assert qv.decompose(E("E2", F)).name == "E2"
    for X in (C, union_right(F)[0].dst, qv.zero_rep(F)):
        assert qv.decompose(X).verify()


def test_decompose_against_idempotent_splitting():
    for dims, a, b in all_reps(2):
        X = qv.QuiverRep.of(GF2, dims, [list(r) for r in a], [list(r) for r in b])
        oracle = {k: v for k, v in split_multiplicities(dims, a, b).items() if v}
        d = qv.decompose(X)
        assert {k: v for k, v in d.multiplicities.items() if v} == oracle
        assert {k: v for k, v in qv.rank_multiplicities(X).items() if v} == oracle
        assert d.verify()


# -- ambient operations --------------------------------------------------------


@pytest.mark.parametrize("F", FIELDS)
def test_ambient_examples(F):
    k, p = nonzero(E("E23", F), E("E123", F)), nonzero(E("E23", F), E("E2", F))
    P, _, leg = qv.pushout_L(k, p)
    assert qv.decompose(P).name == "E12" and not leg.is_zero()
    z = nonzero(E("E123", F), E("E1", F))
    K = qv.kernel_L(z)
    assert qv.decompose(K.obj).name == "E23"
    assert (z @ K.inclusion).is_zero()
    X = E("E123", F)
    Q, first, _ = qv.pullback_L(qv.identity(X), qv.identity(X))
    assert qv.decompose(Q).name == "E123" and first.is_iso()


# -- subcategories -------------------------------------------------------------


@pytest.mark.parametrize("F", FIELDS)
def test_closure_kinds(F):
    assert qv.subcategory(I1_LABELS, F).closure_kind == "reflective"
    assert qv.subcategory(I2_LABELS, F).closure_kind == "coreflective"
    assert qv.subcategory(qv.LABELS, F).closure_kind == "both"
    with pytest.raises(ValueError):
        qv.subcategory(["E7"], F)


def test_neither_closure_has_no_recipe():
    # E2 is a subobject of E12 and a quotient of E23
    I = qv.subcategory(["E12", "E23"])
    assert I.closure_kind == "neither"
    with pytest.raises(qv.NotReflective):
        qv.reflect(E("E12"), I)
    with pytest.raises(qv.NotCoreflective):
        qv.coreflect(E("E23"), I)


def test_membership_enforced():
    I = qv.subcategory(I1_LABELS)
    with pytest.raises(qv.ObjectNotInSubcategory):
        qv.classify_in_k(qv.identity(E("E12")), I)


@pytest.mark.parametrize("F", FIELDS)
def test_reflector_examples(F):
    I = qv.subcategory(I1_LABELS, F)
    R = qv.reflect(E("E12", F), I)
    assert qv.decompose(R.obj).name == "E1" and qv.is_epi_k(R.unit, qv.subcategory(qv.LABELS, F))
    R = qv.reflect(E("E1", F), I)
    assert R.unit == qv.identity(E("E1", F))
    X = qv.direct_sum(E("E12", F), E("E3", F)).obj
    assert qv.decompose(qv.reflect(X, I).obj).name == "E1+E3"


@pytest.mark.parametrize("F", FIELDS)
def test_coreflector_examples(F):
    I = qv.subcategory(I2_LABELS, F)
    S = qv.coreflect(E("E23", F), I)
    assert qv.decompose(S.obj).name == "E3" and qv.is_mono_k(S.counit, qv.subcategory(qv.LABELS, F))
    assert qv.coreflect(E("E123", F), I).counit == qv.identity(E("E123", F))
    X = qv.direct_sum(E("E23", F), E("E1", F)).obj
    assert qv.decompose(qv.coreflect(X, I).obj).name == "E1+E3"


def test_reflector_universal_property():
    I = qv.subcategory(I1_LABELS)
    L_objs = qv.k_objects(qv.subcategory(qv.LABELS), 3)
    K_objs = qv.k_objects(I, 3)
    for X in L_objs:
        R = qv.reflect(X, I)
        assert qv.member(R.obj, I)
        assert qv.reflect(R.obj, I).unit == qv.identity(R.obj)
        assert qv.is_epi_k(R.unit, qv.subcategory(qv.LABELS))
        for Y in K_objs:
            for t in qv.hom_space(X, Y):
                assert qv.factor_through(t, R.unit) is not None
            # uniqueness: precomposition with the unit is injective on Hom(RX, Y)
            restricted = [(u @ R.unit).flat() for u in qv.hom_space(R.obj, Y)]
            assert qv._rank(restricted, GF2, len(restricted[0]) if restricted else 0) == len(restricted)


def test_coreflector_universal_property():
    I = qv.subcategory(I2_LABELS)
    L_objs = qv.k_objects(qv.subcategory(qv.LABELS), 3)
    K_objs = qv.k_objects(I, 3)
    for X in L_objs:
        S = qv.coreflect(X, I)
        assert qv.member(S.obj, I)
        assert qv.coreflect(S.obj, I).counit == qv.identity(S.obj)
        assert qv.is_mono_k(S.counit, qv.subcategory(qv.LABELS))
        for Y in K_objs:
            for t in qv.hom_space(Y, X):
                assert qv.lift(t, S.counit) is not None
            restricted = [(S.counit @ u).flat() for u in qv.hom_space(Y, S.obj)]
            assert qv._rank(restricted, GF2, len(restricted[0]) if restricted else 0) == len(restricted)


# -- limits, colimits and classification in K ----------------------------------


@pytest.mark.parametrize("F", FIELDS)
def test_left_example_structure(F):
    I = qv.subcategory(I1_LABELS, F)
    k, p = nonzero(E("E23", F), E("E123", F)), nonzero(E("E23", F), E("E2", F))
    P, _, leg = qv.k_pushout(k, p, I)
    assert qv.decompose(P).name == "E1" and leg.is_zero()
    fk = qv.classify_in_k(k, I)
    assert fk.regular_mono and not fk.split_mono
    assert qv.classify_in_k(p, I).regular_epi
    z = nonzero(E("E3", F), E("E123", F))
    fz = qv.classify_in_k(z, I)
    assert fz.mono and not fz.regular_mono
    assert qv.k_kernel(z, I).obj == qv.kernel_L(z).obj
    ci = qv.coim_im_factor(z, I)
    assert (qv.decompose(ci.coimage).name, qv.decompose(ci.image).name) == ("E3", "E23")
    mid = qv.classify_in_k(ci.mid, I)
    assert mid.regular_mono and not mid.epi
    assert ci.from_image @ ci.mid @ ci.to_coimage == z


@pytest.mark.parametrize("F", FIELDS)
def test_right_example_structure(F):
    I = qv.subcategory(I2_LABELS, F)
    z = nonzero(E("E123", F), E("E1", F))
    ci = qv.coim_im_factor(z, I)
    assert (qv.decompose(ci.coimage).name, qv.decompose(ci.image).name) == ("E12", "E1")
    mid = qv.classify_in_k(ci.mid, I)
    assert mid.regular_epi and not mid.mono


def test_identity_flags_and_factorization():
    I = qv.subcategory(qv.LABELS)
    X = qv.direct_sum(E("E3"), E("E12")).obj
    assert all(qv.classify_in_k(qv.identity(X), I).as_dict().values())
    assert qv.classify_in_k(qv.coim_im_factor(qv.identity(X), I).mid, I).mono
    P, _, leg = qv.k_pushout(qv.identity(X), qv.identity(X), I)
    assert leg.is_iso()


def test_maps_out_of_E2_zero_or_split():
    I = qv.subcategory(I1_LABELS)
    for Y in qv.k_objects(I, 3):
        for m in qv.hom_elements(E("E2"), Y):
            assert m.is_zero() or qv.classify_in_k(m, I).split_mono


def test_coreflective_monos_regular_and_pushout_stable():
    I = qv.subcategory(I2_LABELS)
    for z in qv.k_morphisms(I, 2):
        if not qv.is_mono_k(z, I):
            continue
        assert qv.is_regular_mono_k(z, I)
        for Y in qv.k_objects(I, 2):
            for g in qv.hom_elements(z.src, Y):
                assert qv.is_mono_k(qv.k_pushout(z, g, I).second, I)


# -- scans, unions, injectivity ------------------------------------------------


@pytest.mark.parametrize("labels, bound, left, right", [(I1_LABELS, 3, True, False), (I2_LABELS, 3, False, True),
                                                        (list(qv.LABELS), 2, True, True)])
def test_semiabelian_scan(labels, bound, left, right):
    scan = qv.semiabelian_scan(qv.subcategory(labels), bound)
    assert (scan.left, scan.right) == (left, right)
    for w in (scan.left_witness, scan.right_witness):
        if w is not None:
            assert "E123" in {qv.decompose(w.src).name, qv.decompose(w.dst).name}


@pytest.mark.parametrize("F", FIELDS)
def test_effective_unions(F):
    r = qv.effective_union(*union_left(F), qv.subcategory(I1_LABELS, F))
    assert (qv.decompose(r.D).name, qv.decompose(r.E).name) == ("0", "E3^2")
    assert r.h_flags.mono and not r.h_flags.regular_mono
    r = qv.effective_union(*union_right(F), qv.subcategory(I2_LABELS, F))
    assert (qv.decompose(r.D).name, qv.decompose(r.E).name) == ("E3", "E12+E123")
    assert r.h_flags.regular_epi and not r.h_flags.mono
    X = union_left(F)[0].dst
    r = qv.effective_union(qv.identity(X), qv.identity(X), qv.subcategory(I1_LABELS, F))
    assert r.h.is_iso() and qv.decompose(r.D).name == qv.decompose(r.E).name == qv.decompose(X).name


def test_left_semiabelian_union_h_is_mono():
    I = qv.subcategory(I1_LABELS)
    objs = qv.k_objects(I, 2)
    checked = 0
    for C in objs:
        monos = [m for A in objs for m in qv.hom_elements(A, C) if qv.is_mono_k(m, I)]
        for f, g in itertools.product(monos, repeat=2):
            assert qv.effective_union(f, g, I).h_flags.mono
            checked += 1
    assert checked > 0


def test_regular_injectivity():
    I1, I2 = qv.subcategory(I1_LABELS), qv.subcategory(I2_LABELS)
    res = qv.is_regular_injective(E("E2"), I1, 3)
    assert not res
    m, t = res.mono, res.morphism
    assert (qv.decompose(m.src).name, qv.decompose(m.dst).name) == ("E23", "E123")
    assert qv.decompose(t.dst).name == "E2" and qv.factor_through(t, m) is None
    assert qv.is_regular_injective(E("E123"), I2, 3)
    assert qv.is_regular_injective(qv.zero_rep(), I1, 3)


def test_scan_is_deterministic():
    I = qv.subcategory(I1_LABELS)
    assert qv.semiabelian_scan(I, 2).to_json() == qv.semiabelian_scan(I, 2).to_json()
