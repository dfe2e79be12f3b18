import json
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from affinehecke import bernstein as b
from affinehecke.coeff import to_rat
from affinehecke.errors import InconsistentLabels, InvalidDescriptor, InvalidParameter, NotRankTwo

ALG2, ALG3 = b.DivisionAlgebra(2, 1), b.DivisionAlgebra(3, 1)


def fac(label, m, n, s):
    return b.CuspidalFactor(label, m, n, to_rat(s))


def desc(alg, levi, factors, **kw):
    return b.InertialClassDescriptor(alg, sum(levi), tuple(levi), tuple(factors), **kw)


def test_group_factors_examples():
    ss = b.group_factors(desc(ALG3, (2,), [fac("A", 2, 1, 1)]))
    assert [(c.r, c.f, c.z) for c in ss.classes] == [(1, 1, 3)]
    ss = b.group_factors(desc(ALG2, (1, 1), [fac("A", 1, 1, 1), fac("B", 1, 2, 1)]))
    assert ss.ell == 2 and [(c.r, c.z) for c in ss.classes] == [(1, 2), (1, 4)]
    ss = b.group_factors(desc(ALG2, (1, 1), [fac("A", 1, 2, 1), fac("A", 1, 2, 1)]))
    assert [(c.indices, c.r, c.f, c.z) for c in ss.classes] == [((1, 2), 2, 2, 4)]


def test_same_label_different_block_size_is_rejected():
    with pytest.raises(InconsistentLabels):
        desc(ALG2, (1, 2), [fac("A", 1, 1, 1), fac("A", 2, 1, 1)])


def test_classes_partition_blocks():
    d = desc(ALG2, (1, 1, 2, 1), [fac("A", 1, 1, 1), fac("B", 1, 1, 1), fac("C", 2, 1, 1), fac("A", 1, 1, 1)])
    classes = b.group_factors(d).classes
    assert sorted(i for c in classes for i in c.indices) == [1, 2, 3, 4]
    assert [(c.label, c.indices) for c in classes] == [("A", (1, 4)), ("B", (2,)), ("C", (3,))]


def test_ss_decompose_examples():
    assert b.ss_decompose(desc(ALG3, (2,), [fac("A", 2, 1, 1)])).factors == ((1, 3),)
    neqv = desc(ALG2, (1, 1), [fac("B", 1, 2, 1), fac("A", 1, 1, 1)])
    assert b.ss_decompose(neqv).factors == ((1, 2), (1, 4))
    eqv = desc(ALG2, (1, 1), [fac("A", 1, 2, 1), fac("A", 1, 2, 1)])
    assert b.ss_decompose(eqv).factors == ((2, 4),)


def test_trichotomy_and_presentations():
    cusp = desc(ALG2, (2,), [fac("A", 2, 1, 1)])
    neqv = desc(ALG2, (1, 1), [fac("A", 1, 1, 1), fac("B", 1, 1, 1)])
    eqv = desc(ALG2, (1, 1), [fac("A", 1, 1, 1), fac("A", 1, 1, 1)])
    assert [b.gl2_classify(d) for d in (cusp, neqv, eqv)] == ["Cusp", "Neqv", "Eqv"]
    assert b.presentation_of(cusp) == b.LaurentPoly(1)
    assert b.presentation_of(neqv) == b.LaurentPoly(2)
    assert b.presentation_of(eqv) == b.DihedralQuotient()
    with pytest.raises(NotRankTwo):
        b.gl2_classify(desc(ALG2, (3,), [fac("A", 3, 1, 1)]))
    assert b.presentation_of(desc(ALG2, (5,), [fac("A", 5, 3, 1)])) == b.LaurentPoly(1)
    n3 = b.presentation_of(desc(ALG2, (1, 1, 1), [fac("A", 1, 1, 1)] * 3))
    assert isinstance(n3, b.TensorAffine) and not n3.normalized
    assert n3.to_json()["note"] == "no normalized presentation"


@given(st.sampled_from(["Cusp", "Neqv", "Eqv"]), st.integers(1, 4), st.integers(1, 4),
       st.sampled_from([2, 3, 4, 5, 7, 8, 9]), st.integers(1, 4))
def test_presentation_consistent_with_ss(kind, n, s, q, d):
    alg = b.DivisionAlgebra(q, d)
    if kind == "Cusp":
        x = desc(alg, (2,), [fac("A", 2, n, s)])
    else:
        x = desc(alg, (1, 1), [fac("A", 1, n, s), fac("A" if kind == "Eqv" else "B", 1, n, s)])
    rs = [r for r, _ in b.ss_decompose(x).factors]
    assert rs == {"Cusp": [1], "Neqv": [1, 1], "Eqv": [2]}[kind]
    assert all(z == to_rat(q) ** (n * s) for _, z in b.ss_decompose(x).factors)
    expected = {"Cusp": ["A1"], "Neqv": ["A1", "A1"], "Eqv": ["A2generic"]}[kind]
    assert b.morita_tag(x).to_json() == expected


def test_morita_tags():
    eqv2 = desc(ALG2, (1, 1), [fac("A", 1, 2, 1)] * 2)
    eqv5 = desc(b.DivisionAlgebra(5, 1), (1, 1), [fac("A", 1, 1, 3)] * 2)
    assert b.morita_tag(eqv2) == b.morita_tag(eqv5)
    t2 = b.morita_tag(desc(ALG2, (1, 1, 1), [fac("A", 1, 1, 1)] * 3))
    t3 = b.morita_tag(desc(ALG3, (1, 1, 1), [fac("A", 1, 1, 1)] * 3))
    assert t2 != t3
    assert str(t2) == "{Ar(3,1/2)}" and str(t3) == "{Ar(3,1/3)}"


@given(st.integers(3, 6), st.fractions(min_value=Fraction(1, 9), max_value=9))
def test_r3_tags_identify_only_inverse_pairs(r, z):
    z = to_rat(z)
    assert b.tag_of_factors([(r, z)]) == b.tag_of_factors([(r, 1 / z)])
    other = z + 1
    assert b.tag_of_factors([(r, z)]) != b.tag_of_factors([(r, other)]) or z * other == 1


def test_tag_rejects_nonpositive():
    with pytest.raises(InvalidParameter):
        b.tag_of_factors([(2, -1)])


def test_validation():
    with pytest.raises(InvalidDescriptor):
        b.DivisionAlgebra(6, 1)
    with pytest.raises(InvalidDescriptor):
        b.InertialClassDescriptor(ALG2, 3, (1, 1), (fac("A", 1, 1, 1), fac("B", 1, 1, 1)))
    with pytest.raises(InvalidDescriptor):
        desc(ALG2, (1, 1), [fac("A", 1, 1, 1), fac("B", 2, 1, 1)])
    with pytest.raises(InconsistentLabels):
        desc(ALG2, (1, 1), [fac("A", 1, 1, 1), fac("A", 1, 2, 1)])
    with pytest.raises(InvalidDescriptor):
        desc(ALG2, (1, 1), [fac("A", 1, 1, Fraction(1, 2))] * 2)
    with pytest.raises(InvalidDescriptor):
        fac("A", 1, 1, 0)


def test_nonintegral_f():
    d = desc(b.DivisionAlgebra(4, 1), (1, 1), [fac("A", 1, 1, Fraction(1, 2))] * 2, allow_nonintegral_f=True)
    assert b.ss_decompose(d).factors == ((2, 2),)
    d = desc(ALG2, (1, 1, 1), [fac("A", 1, 1, Fraction(1, 2))] * 3, allow_nonintegral_f=True)
    (r, z), = b.ss_decompose(d).factors
    assert isinstance(z, b.QPower) and str(z) == "2^(1/2)"
    assert str(b.morita_tag(d)) == "{Ar(3,2^(-1/2))}"
    assert b.q_power(8, Fraction(2, 3)) == 4


def test_census_small_grid_and_unsupported():
    shapes = b.gl2_shape_grid([1, 2])
    rep = b.census_compare(shapes, ALG2, b.DivisionAlgebra(3, 2))
    assert rep.passed and len(rep.rows) == 12
    gl3 = b.ClassShape("GL3", (1, 1, 1), ("A", "A", "A"), (("A", 1, to_rat(1)),))
    rep = b.census_compare(shapes + [gl3], ALG2, ALG2)
    assert rep.passed and rep.unsupported == ["GL3"]
    assert rep.to_json()["multiplicity"] == "countably-infinite"


def test_json_round_trip(fixtures):
    data = json.loads((fixtures / "gl2_eqv.json").read_text())
    out = b.decompose_report(b.descriptor_from_json(data))
    assert out["presentation"]["kind"] == "DihedralQuotient"
    assert out["ss"] == [{"indices": [1, 2], "label": "A", "r": 2, "f": "2", "z": "4"}]
    with pytest.raises(InvalidDescriptor):
        b.descriptor_from_json(json.loads((fixtures / "bad_schema.json").read_text()))
