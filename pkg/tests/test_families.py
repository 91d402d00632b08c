import logging

import pytest

from freeness_lab import GF, QQ, CurveClass, HomPoly, analyze, parse_poly
from freeness_lab.algebra import DivisionNotExact, gradient
from freeness_lab.families import (
    C49_PRIME,
    FAMILIES,
    base_curve,
    golden_syzygies,
    make_family,
    stated_axis_discrepancies,
    twisted_syzygy_table,
)
from freeness_lab.gb import second_syzygy_relation
from freeness_lab.kummer import AXIS_NAMES

P = GF(32003)


@pytest.mark.parametrize("name, k, degree", [
    ("c5k", 1, 5), ("c5k", 4, 20), ("c4k", 3, 12), ("c2k", 7, 14),
    ("d5", 1, 5), ("c49", 1, 49), ("c49gen", 1, 49),
])
def test_degrees(name, k, degree):
    fam = make_family(name, k)
    assert fam.degree == degree and fam.k == k


def test_conic_pullback_k3():
    assert make_family("c2k", 3).poly == parse_poly("x^6+y^6+z^6-2*(x^3*y^3+x^3*z^3+y^3*z^3)")


def test_invalid_requests():
    with pytest.raises(ValueError):
        make_family("c7k")
    with pytest.raises(ValueError):
        make_family("c5k", 0)
    with pytest.raises(ValueError):
        make_family("d5", 2)


def test_degree_49_construction():
    x, y, z = HomPoly.variables(QQ)
    f1 = x ** 3 * z + y ** 4
    f13 = f1 ** 3 * y + x ** 13
    f49 = make_family("c49").poly
    assert f49 * x ** 3 == f13 ** 4 - f1 ** 13
    gen = make_family("c49gen").poly
    assert gen - f49 == (f13 * f1 ** 9).scale(13)
    with pytest.raises(DivisionNotExact):
        (f13 ** 4).divide_monomial((0, 0, 3))
    assert make_family("c49gen", field=GF(C49_PRIME)).poly.field.p == C49_PRIME
    assert any("multiplicity sequence" in n for n in make_family("c49").notes)


def test_expected_closed_forms():
    assert make_family("c5k", 3).expected.tau == 148
    assert make_family("c4k", 3).expected.tau == 90
    assert make_family("c2k", 5).expected.tau == 60
    e = make_family("c49gen").expected
    assert (e.curve_class, e.exponents, e.tau, e.relation_multidegree) == \
        (CurveClass.NEARLY_FREE, (24, 25, 25), 1727, (2, 1, 1))


@pytest.mark.parametrize("name", ["c5k", "c4k", "c2k", "d5"])
def test_axis_data_is_bezout_complete(name):
    """Every intersection of the base curve with each axis is listed."""
    curve = base_curve(name)
    for axis in AXIS_NAMES:
        total = sum(m for p in curve.points for a, m in zip(p.location.axes, p.axis_mults) if a == axis)
        assert total == curve.degree


def test_computed_axis_data():
    pts = {p.label: p for p in base_curve("c5k").points}
    a4, e8 = pts["A4 vertex"], pts["E8 vertex"]
    assert dict(zip(a4.location.axes, a4.axis_mults)) == {"L_x": 2, "L_z": 4}
    assert dict(zip(e8.location.axes, e8.axis_mults)) == {"L_x": 3, "L_y": 5}


def test_stated_axis_number_disagrees_and_is_logged(caplog):
    from freeness_lab import families
    families._warned.clear()
    with caplog.at_level(logging.WARNING, logger="freeness_lab.families"):
        diffs = stated_axis_discrepancies(base_curve("c5k"))
    assert diffs == [("A4 vertex", "L_z", 5, 4)]
    assert "computed 4" in caplog.text


@pytest.mark.parametrize("name", ["c2k", "c4k"])
@pytest.mark.parametrize("k", range(1, 11))
def test_golden_syzygies(name, k):
    fam = make_family(name, k)
    g = golden_syzygies(name, k)
    partials = gradient(fam.poly)
    for v in g.vectors:
        assert v.dot(partials) == 0
    zero = HomPoly.zero(QQ)
    total = [zero, zero, zero]
    for coef, v in zip(g.relation, g.vectors):
        total = [t + coef * c for t, c in zip(total, v.components)]
    assert not any(total)


def test_golden_quintic_vectors():
    partials = gradient(make_family("c5k").poly)
    vecs = golden_syzygies("c5k").vectors
    assert [v.degree for v in vecs] == [2, 2]
    assert all(v.dot(partials) == 0 for v in vecs)
    with pytest.raises(ValueError):
        golden_syzygies("c5k", 2)


def test_twisted_table():
    x, y, z = HomPoly.variables(QQ)
    fx, fy, fz = gradient(make_family("c5k").poly)
    table = twisted_syzygy_table()
    assert len(table) == 8
    for name, ((u, v, w), vectors) in table.items():
        gens = (u * fx, v * fy, w * fz)
        for vec in vectors:
            assert sum((a * b for a, b in zip(vec, gens)), HomPoly.zero(QQ)) == 0, name


def test_relation_of_golden_quartic_syzygies_matches():
    g = golden_syzygies("c4k", 2, P)
    rel = second_syzygy_relation(list(g.vectors))
    assert rel.multidegree == (1, 1, 1)


@pytest.mark.parametrize("name, k", [("c5k", 1), ("c4k", 1), ("c2k", 1), ("c2k", 2), ("c2k", 3), ("d5", 1)])
def test_expected_over_rationals(name, k):
    fam = make_family(name, k)
    r = analyze(fam.poly)
    e = fam.expected
    assert (r.curve_class, r.exponents, r.tau) == (e.curve_class, e.exponents, e.tau)
    if e.relation_multidegree:
        assert r.relation_multidegree == e.relation_multidegree


def test_all_families_listed():
    assert set(FAMILIES) == {"c5k", "c4k", "c2k", "c49", "c49gen", "d5"}
