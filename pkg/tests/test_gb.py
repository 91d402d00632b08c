from math import comb

import pytest
from hypothesis import given, settings, strategies as st

from freeness_lab import GF, QQ, HomPoly, parse_poly
from freeness_lab.algebra import gradient, kummer_pullback
from freeness_lab.families import golden_syzygies, make_family
from freeness_lab.gb import (
    GradedDims,
    NoRelation,
    RankTooHigh,
    buchberger,
    hilbert_function,
    make_vector,
    minimal_generator_degrees,
    minimal_generators,
    module_normal_form,
    normal_form,
    s_polynomials_reduce_to_zero,
    second_syzygy_relation,
    syzygy_generators,
)

from strategies import hom_polys

F2 = "x^2+y^2+z^2-2*(x*y+x*z+y*z)"
F4 = "(y*z-x^2)^2-x^3*y"
F5 = "(y*z-x^2)^2*y-x^5"


def _jac(text, field=QQ):
    return buchberger(list(gradient(parse_poly(text, field))))


def _same_module(a, b):
    ma, mb = buchberger(a), buchberger(b)
    return all(not any(module_normal_form(v, mb)) for v in a) and \
        all(not any(module_normal_form(v, ma)) for v in b)


# --- ideals -----------------------------------------------------------------

def test_maximal_ideal():
    x, y, z = HomPoly.variables()
    gb = buchberger([x, y, z])
    assert set(gb.gens) == {x, y, z}
    assert normal_form(x ** 3, gb) == 0
    assert hilbert_function(gb, 4) == 0


def test_zero_ideal():
    gb = buchberger([])
    assert hilbert_function(gb, 5) == 21
    f = parse_poly(F5)
    assert normal_form(f, gb) == f


def test_smooth_conic_jacobian_is_maximal():
    gb = _jac(F2)
    assert len(gb.gens) == 3 and all(g.degree == 1 for g in gb.gens)
    assert [hilbert_function(gb, m) for m in range(4)] == [1, 0, 0, 0]


@pytest.mark.parametrize("field", [QQ, GF(32003)], ids=["Q", "Fp"])
def test_quintic_tjurina_plateau(field):
    gb = _jac(F5, field)
    assert [hilbert_function(gb, m) for m in range(12, 16)] == [12] * 4


def test_members_reduce_to_zero():
    f = parse_poly(F5)
    gb = _jac(F5)
    for g in gradient(f):
        assert normal_form(g, gb) == 0
    assert normal_form(f.scale(5), gb) == 0


@pytest.mark.parametrize("text", [F2, F4, F5, "x^3+y^3+z^3", "y^3*z^2-x^5"])
def test_buchberger_certificate(text):
    assert s_polynomials_reduce_to_zero(_jac(text))
    rel = syzygy_generators(parse_poly(text))
    assert s_polynomials_reduce_to_zero(buchberger(rel))


@settings(max_examples=25, deadline=None)
@given(st.data())
def test_normal_form_linear_and_idempotent(data):
    field = GF(101)
    gens = data.draw(st.lists(hom_polys(field=field, min_degree=1, max_degree=3), min_size=1, max_size=3))
    gb = buchberger(gens)
    f = data.draw(hom_polys(field=field, min_degree=2, max_degree=5))
    g = data.draw(hom_polys(field=field, min_degree=f.degree, max_degree=f.degree))
    nf = lambda h: normal_form(h, gb)
    assert nf(nf(f)) == nf(f)
    assert nf(f + g) == nf(nf(f) + nf(g))
    assert s_polynomials_reduce_to_zero(gb)


@settings(max_examples=25, deadline=None)
@given(st.data())
def test_ideal_members_have_zero_normal_form(data):
    field = GF(101)
    gens = data.draw(st.lists(hom_polys(field=field, min_degree=1, max_degree=3), min_size=1, max_size=3))
    top = max(g.degree for g in gens) + 1
    member = HomPoly.zero(field)
    for g in gens:
        c = data.draw(hom_polys(field=field, min_degree=top - g.degree, max_degree=top - g.degree))
        member = member + c * g
    assert normal_form(member, buchberger(gens)) == 0


@settings(max_examples=20, deadline=None)
@given(st.data())
def test_hilbert_function_matches_dense_rank(data):
    from freeness_lab.oracle import quotient_dim_linear
    field = data.draw(st.sampled_from([GF(101), QQ]))
    gens = data.draw(st.lists(hom_polys(field=field, min_degree=1, max_degree=3), min_size=1, max_size=3))
    gb = buchberger(gens)
    for m in range(7):
        assert hilbert_function(gb, m) == quotient_dim_linear(gens, m)


# --- relations --------------------------------------------------------------

def test_conic_relations_match_explicit_basis():
    f = parse_poly(F2)
    rel = syzygy_generators(f)
    assert [v.degree for v in rel] == [1, 1, 1]
    assert _same_module(rel, list(golden_syzygies("c2k", 1).vectors))


def test_quintic_relations_match_table():
    f = parse_poly(F5)
    rel = syzygy_generators(f)
    assert minimal_generator_degrees(rel) == [2, 2]
    assert _same_module(rel, list(golden_syzygies("c5k", 1).vectors))


def test_quartic_relations_match_explicit_basis():
    rel = syzygy_generators(parse_poly(F4))
    assert minimal_generator_degrees(rel) == [2, 2, 2]
    assert _same_module(rel, list(golden_syzygies("c4k", 1).vectors))


def test_sextic_degrees():
    f = make_family("c2k", 3).poly
    assert minimal_generator_degrees(syzygy_generators(f)) == [3, 3, 3]


@pytest.mark.parametrize("text", [F2, F4, F5, "x^3+y^3+z^3", "x*y*(x+y)", "y^3*z^2-x^5"])
def test_every_relation_vanishes(text):
    f = parse_poly(text)
    for v in syzygy_generators(f):
        assert v.dot(gradient(f)) == 0


@pytest.mark.parametrize("name, k, expected", [("c5k", 1, [2, 2]), ("c5k", 2, [4, 5]),
                                               ("c4k", 1, [2, 2, 2]), ("c4k", 2, [4, 4, 4]),
                                               ("c2k", 2, [2, 2, 2]), ("d5", 1, [1, 4, 4])])
def test_degree_identities(name, k, expected):
    fam = make_family(name, k, GF(32003))
    degs = minimal_generator_degrees(syzygy_generators(fam.poly))
    assert degs == expected
    d = fam.degree
    if len(degs) == 2:
        assert sum(degs) == d - 1
    else:
        assert degs[1] == degs[2] == d - degs[0]


@settings(max_examples=15, deadline=None)
@given(st.permutations(range(3)), st.lists(st.integers(1, 100), min_size=3, max_size=3))
def test_minimal_degrees_invariant_under_permutation_and_scaling(perm, scalars):
    vecs = list(golden_syzygies("c4k", 1).vectors)
    f5 = list(golden_syzygies("c5k", 1).vectors)
    pool = [vecs[i] for i in perm] + [make_vector([c.scale(s) for c in v.components]) for v, s in zip(f5, scalars)]
    base = minimal_generator_degrees(list(golden_syzygies("c4k", 1).vectors) + f5)
    assert minimal_generator_degrees(pool) == base


def test_redundant_generators_dropped():
    vecs = list(golden_syzygies("c2k", 2).vectors)
    x, _, _ = HomPoly.variables()
    extra = make_vector([c * x for c in vecs[0].components])
    combo = make_vector([a + b for a, b in zip(vecs[1].components, vecs[2].components)])
    kept = minimal_generators(vecs + [extra, combo])
    assert [v.degree for v in kept] == [2, 2, 2]


# --- second syzygy ----------------------------------------------------------

def _proportional(rel, expected):
    pairs = [(a, b) for a, b in zip(rel, expected) if a or b]
    a0, b0 = pairs[0]
    c = a0.leading_term()[1] / b0.leading_term()[1]
    return all(a == b.scale(c) for a, b in pairs)


def test_quartic_relation():
    g = golden_syzygies("c4k", 1)
    rel = second_syzygy_relation(list(g.vectors))
    assert rel.multidegree == (1, 1, 1)
    assert _proportional(rel.components, g.relation)


@pytest.mark.parametrize("k", [1, 2, 3])
def test_conic_pullback_relation(k):
    g = golden_syzygies("c2k", k)
    rel = second_syzygy_relation(list(g.vectors))
    assert _proportional(rel.components, g.relation)
    first = next(c for c in rel.components if c)
    assert first.leading_term()[1] == 1


def test_relation_errors():
    x, y, z = HomPoly.variables()
    zero = HomPoly.zero()
    e = [make_vector([x, zero, zero]), make_vector([zero, x, zero]), make_vector([zero, zero, x])]
    with pytest.raises(NoRelation):
        second_syzygy_relation(e)
    dup = [make_vector([x, y, z]), make_vector([x, y, z]), make_vector([x, y, z])]
    with pytest.raises(RankTooHigh):
        second_syzygy_relation(dup)


def test_graded_dims():
    g = GradedDims.from_mapping({3: 1, 4: 0, 5: 2})
    assert g[3] == 1 and g[4] == 0 and g[99] == 0
    assert g.support() == [3, 5] and g.total() == 3
    assert not GradedDims.from_mapping({})
