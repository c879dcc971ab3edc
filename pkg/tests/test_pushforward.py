from fractions import Fraction as F
from itertools import product

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from orient_rr.errors import BadMapKind, ShapeMismatch
from orient_rr.orientation import preset_orientation
from orient_rr.projective import (
    CohElement,
    KElement,
    RingShape,
    SplitBundle,
    chern_character,
    euler_class,
    o_bundle,
    substitute,
    tangent_bundle,
    todd_class,
)
from orient_rr.pushforward import (
    ProjectiveMap,
    PushforwardProblem,
    chi_hrr,
    chi_oracle,
    external_class,
    integrate,
    k_integrate,
    push,
    pushforward,
)

from oracles import binomial_poly, chi_by_cohomology

NAMES = ("additive", "ku", "ku-alt")


def t(caps, i=0):
    return CohElement.hyperplane(RingShape(caps), i)


def classes(shape):
    shape = RingShape(shape)
    coeff = st.fractions(-4, 4, max_denominator=3)
    return st.fixed_dictionaries({e: coeff for e in shape.monomials()}).map(lambda d: CohElement(shape, d))


# -- integration -----------------------------------------------------------------


@pytest.mark.parametrize("n", range(6))
def test_additive_integral_is_top_coefficient(n):
    shape = (n,)
    assert integrate("additive", shape, t(shape) ** n) == 1
    for k in range(n):
        assert integrate("additive", shape, t(shape) ** k) == 0


@pytest.mark.parametrize("n", range(9))
def test_ku_integral_of_one(n):
    assert integrate("ku", (n,), CohElement.one((n,))) == 1


def test_hand_expansion_on_p2():
    shape = RingShape((2,))
    td = todd_class("ku", "additive", tangent_bundle(shape))
    assert integrate("additive", shape, chern_character(o_bundle(2, 1)) * td) == 3


def test_integrate_shape_mismatch():
    with pytest.raises(ShapeMismatch):
        integrate("ku", (3,), CohElement.one((2,)))


def test_integral_of_point_class_is_one_for_every_orientation():
    for name in NAMES:
        for n in range(5):
            assert integrate(name, (n,), euler_class(name, SplitBundle(RingShape((n,)), ((1, (1,)),) * n))) == 1


# -- pushforward examples -----------------------------------------------------------


def test_inclusion_additive_of_one():
    assert push("additive", ProjectiveMap.inclusion((1,), (2,)), CohElement.one((1,))) == t((2,))


def test_inclusion_ku_of_one():
    assert push("ku", ProjectiveMap.inclusion((1,), (2,)), CohElement.one((1,))) == CohElement(
        (2,), {(1,): 1, (2,): F(-1, 2)}
    )


def test_projection_additive():
    a = t((1, 1), 0) * t((1, 1), 1)
    assert push("additive", ProjectiveMap.projection((1, 1), 1), a) == t((1,))


def test_problem_wrapper():
    f = ProjectiveMap.to_point((2,))
    prob = PushforwardProblem(preset_orientation("ku"), f)
    assert (prob.kind, prob.source, prob.target) == ("point", RingShape((2,)), RingShape(()))
    assert pushforward(prob, CohElement.one((2,))) == 1


@pytest.mark.parametrize("name", NAMES)
@pytest.mark.parametrize("m,n", [(m, n) for n in range(1, 6) for m in range(n)])
def test_self_intersection(name, m, n):
    i = ProjectiveMap.inclusion((m,), (n,))
    pulled = i.pullback(push(name, i, CohElement.one((m,))))
    V = SplitBundle(RingShape((m,)), ((1, (1,)),) * (n - m))
    assert pulled == euler_class(name, V)
    s = preset_orientation(name).series(n + 1)
    assert push(name, i, CohElement.one((m,))) == substitute(s, t((n,))) ** (n - m)


# -- map validation -------------------------------------------------------------------


def test_bad_maps():
    with pytest.raises(BadMapKind):
        ProjectiveMap("inclusion", RingShape((3,)), RingShape((2,)))
    with pytest.raises(BadMapKind):
        ProjectiveMap("inclusion", RingShape((1, 1)), RingShape((2,)))
    with pytest.raises(BadMapKind):
        ProjectiveMap("projection", RingShape((1, 2)), RingShape((1,)), 0)
    with pytest.raises(BadMapKind):
        ProjectiveMap("projection", RingShape((1, 2)), RingShape((1,)))
    with pytest.raises(BadMapKind):
        ProjectiveMap("point", RingShape((1,)), RingShape((1,)))
    with pytest.raises(BadMapKind):
        ProjectiveMap("veronese", RingShape((1,)), RingShape((2,)))


def test_push_shape_mismatch():
    with pytest.raises(ShapeMismatch):
        push("ku", ProjectiveMap.inclusion((1,), (2,)), CohElement.one((2,)))


def test_relative_tangent_of_inclusion():
    T = ProjectiveMap.inclusion((1,), (3,)).relative_tangent()
    # TP^1 - TP^3|P^1 = 2O(1) - 4O(1) = -2O(1)
    assert T.root_degrees == ((-1, (1,)), (-1, (1,)))


def test_composite_maps():
    i = ProjectiveMap.inclusion((1,), (2,))
    j = ProjectiveMap.inclusion((2,), (4,))
    assert i.then(j) == ProjectiveMap.inclusion((1,), (4,))
    assert i.then(ProjectiveMap.to_point((2,))) == ProjectiveMap.to_point((1,))
    with pytest.raises(ShapeMismatch):
        i.then(ProjectiveMap.to_point((3,)))


# -- identities -------------------------------------------------------------------------


MAPS = [
    ProjectiveMap.to_point((3,)),
    ProjectiveMap.to_point((2, 1)),
    ProjectiveMap.inclusion((1,), (3,)),
    ProjectiveMap.inclusion((1, 0), (2, 2)),
    ProjectiveMap.projection((2, 2), 1),
    ProjectiveMap.projection((1, 3), 0),
]


@pytest.mark.parametrize("f", MAPS, ids=lambda f: f"{f.kind}{f.source.caps}")
@pytest.mark.parametrize("a_name,b_name", list(product(NAMES, NAMES)))
def test_change_of_orientation(f, a_name, b_name):
    @settings(max_examples=15)
    @given(classes(f.source.caps))
    def check(a):
        td = todd_class(a_name, b_name, f.relative_tangent())
        assert push(a_name, f, a) == push(b_name, f, a * td)

    check()


@pytest.mark.parametrize("f", [m for m in MAPS if m.kind != "point"], ids=lambda f: f"{f.kind}{f.source.caps}")
@pytest.mark.parametrize("name", NAMES)
def test_projection_formula(f, name):
    @settings(max_examples=15)
    @given(classes(f.target.caps), classes(f.source.caps))
    def check(a, x):
        assert push(name, f, f.pullback(a) * x) == a * push(name, f, x)

    check()


@pytest.mark.parametrize("name", NAMES)
@settings(max_examples=25)
@given(a=classes((2,)))
def test_functoriality_through_inclusion(name, a):
    i = ProjectiveMap.inclusion((2,), (4,))
    assert integrate(name, (4,), push(name, i, a)) == integrate(name, (2,), a)


@pytest.mark.parametrize("name", NAMES)
@settings(max_examples=25)
@given(a=classes((2,)), b=classes((1,)))
def test_fubini(name, a, b):
    ab = external_class([a, b])
    assert integrate(name, (2, 1), ab) == integrate(name, (2,), a) * integrate(name, (1,), b)
    pushed = push(name, ProjectiveMap.projection((2, 1), 1), ab)
    assert pushed == a * integrate(name, (1,), b)


# -- Riemann-Roch on P^n ---------------------------------------------------------------------


def test_chi_examples():
    assert chi_hrr(2, 1) == 3
    assert chi_hrr(1, -1) == 0
    assert chi_oracle(2, 2) == 6
    assert chi_oracle(2, -2) == 0
    for n in range(7):
        assert chi_hrr(n, 0) == chi_oracle(n, 0) == 1


@pytest.mark.parametrize("n", range(7))
def test_chi_grid(n):
    for d in range(-6, 7):
        value = chi_hrr(n, d)
        assert isinstance(value, int)
        assert value == chi_oracle(n, d) == binomial_poly(n, d) == chi_by_cohomology(n, d)
        assert k_integrate(o_bundle(n, d)) == value


def test_chi_rejects_negative_dimension():
    with pytest.raises(ValueError):
        chi_hrr(-1, 0)
    with pytest.raises(ValueError):
        chi_oracle(-1, 0)


def test_k_integrate_of_powers_of_bott_class():
    y = KElement(4, (0, 1)) * o_bundle(4, -1)
    for j in range(5):
        assert k_integrate(y ** j) == 1
