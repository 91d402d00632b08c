import pytest
from hypothesis import given, strategies as st

from freeness_lab import GF, QQ, CurveClass, analyze, parse_poly
from freeness_lab.algebra import ZeroPolynomial, gradient
from freeness_lab.families import make_family
from freeness_lab.freeness import (
    CurveReport,
    InconsistentResolution,
    NonReducedInput,
    RoutesDisagree,
    classify_dpw,
    classify_resolution,
    classify_torsion,
    exponents_from_dpw,
    nearly_free_multidegree,
    tau_max,
    torsion_profile,
)
from freeness_lab.gb import GradedDims, buchberger, hilbert_function, syzygy_generators

from corpus import CORPUS

P = GF(32003)


# --- du Plessis-Wall --------------------------------------------------------

@pytest.mark.parametrize("d, r, value", [(5, 2, 12), (4, 2, 7), (7, 0, 36), (49, 24, 1728)])
def test_tau_max(d, r, value):
    assert tau_max(d, r) == value


def test_tau_max_range():
    with pytest.raises(ValueError):
        tau_max(4, 4)


@pytest.mark.parametrize("d, r, tau, cls", [
    (5, 2, 12, CurveClass.FREE),
    (5, 1, 12, CurveClass.NEARLY_FREE),
    (49, 24, 1727, CurveClass.NEARLY_FREE),
    (3, 2, 0, CurveClass.NEITHER),
    (4, 2, 7, CurveClass.NEITHER),  # 2r = d: the free clause is strict
    (4, 2, 6, CurveClass.NEARLY_FREE),
])
def test_classify_dpw_examples(d, r, tau, cls):
    assert classify_dpw(d, r, tau) is cls


def test_classify_dpw_exhaustive_free():
    for d in range(2, 13):
        for r in range(1, d):
            top = tau_max(d, r)
            got = classify_dpw(d, r, top)
            assert (got is CurveClass.FREE) == (2 * r < d)
            if 2 * r <= d:
                assert classify_dpw(d, r, top - 1) is CurveClass.NEARLY_FREE
            for tau in range(0, top - 1):
                assert classify_dpw(d, r, tau) is CurveClass.NEITHER


@given(st.integers(2, 60), st.data())
def test_dpw_exponents_satisfy_identities(d, data):
    r = data.draw(st.integers(1, d // 2))
    if 2 * r < d:
        d1, d2 = exponents_from_dpw(d, r, CurveClass.FREE)
        assert d1 + d2 == d - 1 and tau_max(d, r) == (d - 1) ** 2 - d1 * d2
    d1, d2, d3 = exponents_from_dpw(d, r, CurveClass.NEARLY_FREE)
    assert d1 + d2 == d and d2 == d3
    assert tau_max(d, r) - 1 == (d - 1) ** 2 - d1 * (d2 - 1) - 1


def test_multidegree_examples():
    assert nearly_free_multidegree(4, 2, 2) == (1, 1, 1)
    assert nearly_free_multidegree(5, 1, 4) == (4, 1, 1)
    assert nearly_free_multidegree(49, 24, 25) == (2, 1, 1)


# --- single routes ----------------------------------------------------------

def test_resolution_route_examples():
    cls, exps, rel = classify_resolution(make_family("c5k").poly)
    assert (cls, exps, rel) == (CurveClass.FREE, (2, 2), None)
    cls, exps, rel = classify_resolution(make_family("c4k", 2, P).poly)
    assert (cls, exps, rel.multidegree) == (CurveClass.NEARLY_FREE, (4, 4, 4), (1, 1, 1))
    cls, exps, _ = classify_resolution(make_family("c2k", 5, P).poly)
    assert (cls, exps) == (CurveClass.NEARLY_FREE, (5, 5, 5))


def test_resolution_route_rejects_inconsistent_generators():
    # a repeated generator fits the three-degree shape but not the relation
    f = make_family("c4k").poly
    g = syzygy_generators(f)
    with pytest.raises(InconsistentResolution):
        classify_resolution(f, [g[0], g[1], g[0]])


def test_torsion_route():
    assert classify_torsion(4, GradedDims.from_mapping({})) == (CurveClass.FREE, None)
    assert classify_torsion(4, GradedDims.from_mapping({3: 1})) == (CurveClass.NEARLY_FREE, (2, 2, 2))
    assert classify_torsion(3, GradedDims.from_mapping({1: 3}))[0] is CurveClass.NEITHER


@pytest.mark.parametrize("name, k", [("c4k", 1), ("c2k", 3), ("d5", 1), ("c5k", 2)])
def test_saturation_methods_agree(name, k):
    f = make_family(name, k, P).poly
    assert torsion_profile(f, method="kernel") == torsion_profile(f, method="initial")


# --- analyze ----------------------------------------------------------------

def test_quintic_report():
    r = analyze(make_family("c5k").poly)
    assert (r.degree, r.mdr, r.tau, r.curve_class, r.exponents) == (5, 2, 12, CurveClass.FREE, (2, 2))
    assert not r.n_profile and r.rigid is True and r.b is None


def test_quartic_report():
    r = analyze(make_family("c4k").poly)
    assert (r.degree, r.mdr, r.tau, r.curve_class, r.exponents) == (4, 2, 6, CurveClass.NEARLY_FREE, (2, 2, 2))
    assert r.n_profile.as_dict() == {3: 1}
    assert r.rigid is False
    assert r.relation_multidegree == (1, 1, 1) and r.b == 0


def test_rigidity_rule_and_definition():
    """For d2 <= 2 the nearly free curves here satisfy (I_f)_d = (J_f)_d, yet the
    reported flag follows d1 >= 4; the definition is reported separately."""
    low = analyze(make_family("c2k", 2, P).poly)
    assert low.rigid is False and low.rigid_by_definition is True
    for k, want in [(3, False), (4, True), (5, True)]:
        r = analyze(make_family("c2k", k, P).poly)
        assert r.rigid is want and r.rigid_by_definition is want


def test_pencil():
    r = analyze(parse_poly("x*y*(x+y)"))
    assert r.curve_class is CurveClass.PENCIL and r.mdr == 0 and r.tau == 4
    assert analyze(parse_poly("x")).curve_class is CurveClass.PENCIL


def test_terao_pair():
    c5, d5 = analyze(make_family("c5k").poly), analyze(make_family("d5").poly)
    assert (c5.degree, c5.tau) == (d5.degree, d5.tau) == (5, 12)
    assert c5.curve_class is CurveClass.FREE and d5.curve_class is CurveClass.NEARLY_FREE
    assert d5.exponents == (1, 4, 4) and d5.relation_multidegree == (4, 1, 1)


@pytest.mark.parametrize("text", ["x^2*y", "x^2*(x+y+z)", "(x^2+y*z)^2"])
def test_non_reduced_rejected(text):
    with pytest.raises(NonReducedInput):
        analyze(parse_poly(text))


def test_zero_and_constant_rejected():
    with pytest.raises(ZeroPolynomial):
        analyze(parse_poly("x-x", allow_zero=True))
    with pytest.raises(ValueError):
        analyze(parse_poly("7"))


@pytest.mark.parametrize("label, build, cls, exps", CORPUS, ids=[c[0] for c in CORPUS])
def test_corpus_reports(label, build, cls, exps):
    f = build(P)
    r = analyze(f)
    assert r.curve_class is cls
    if exps is not None:
        assert r.exponents == exps
    if cls is CurveClass.NEARLY_FREE:
        assert r.n_profile.total() == exps[1] - exps[0] + 1
    if cls is CurveClass.FREE:
        gb = buchberger([g for g in gradient(f) if g])
        d = f.degree
        assert all(hilbert_function(gb, m) == r.tau for m in range(3 * d - 6, 3 * d))


def test_report_invariants_enforced():
    with pytest.raises(AssertionError):
        CurveReport(5, 2, 13, CurveClass.FREE, (2, 2), GradedDims.from_mapping({}), rigid=True)
    with pytest.raises(AssertionError):
        CurveReport(4, 2, 6, CurveClass.NEARLY_FREE, (2, 2, 2), GradedDims.from_mapping({3: 1, 4: 1}),
                    rigid=False, b=0)


def test_routes_disagree_carries_verdicts():
    exc = RoutesDisagree("x", {"A": 1}, {"tau": 2})
    assert exc.verdicts == {"A": 1} and exc.data == {"tau": 2}


def test_threads_do_not_change_result(monkeypatch):
    f = make_family("c4k", 2, P).poly
    monkeypatch.setenv("FREENESS_LAB_THREADS", "1")
    one = analyze(f)
    monkeypatch.setenv("FREENESS_LAB_THREADS", "3")
    three = analyze(f)
    assert one == three


def test_boundary_case_is_logged(caplog):
    import logging
    with caplog.at_level(logging.INFO, logger="freeness_lab.freeness"):
        assert classify_dpw(6, 3, tau_max(6, 3)) is CurveClass.NEITHER
    assert "2r = d" in caplog.text
