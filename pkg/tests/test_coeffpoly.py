"""Exact polynomial layer: coefficients in Q[p], sparse monomials,
tensor squares.  Randomized checks draw from a fixed seed."""

import random

import pytest

from zipchow.coeffpoly import (
    MultiPoly,
    NotDivisible,
    ParamPoly,
    TensorPoly,
    VarSpace,
    identity_actions,
)
from zipchow.rationals import QQ

SP2 = VarSpace(("x1", "x2"))
SP3 = VarSpace(("x1", "x2", "x3"))


def rand_poly(rng, space=SP3, n_terms=5, max_deg=4, max_p=2):
    f = MultiPoly.zero(space)
    for _ in range(n_terms):
        expo = [0] * len(space)
        for _ in range(rng.randint(0, max_deg)):
            expo[rng.randrange(len(space))] += 1
        num = rng.randint(-6, 6)
        if not num:
            continue
        coeff = QQ(num, rng.randint(1, 4))
        f = f + MultiPoly.monomial(space, tuple(expo), coeff, rng.randint(0, max_p))
    return f


def test_parampoly_arithmetic():
    p = ParamPoly.p()
    assert (p + 1) * (p - 1) == p**2 - 1
    assert (p**2 - 1).divide_exact(p - 1) == p + 1
    assert (p**4 - 1).divide_exact(p**2 - 1) == p**2 + 1
    assert (p - p).is_zero()
    assert (p + 1) ** 0 == ParamPoly.one()
    assert 1 - p == -(p - 1)
    assert (2 * p + 1) == (p * 2 + 1)
    assert (p**3).evaluate(2) == QQ(8)
    assert ((p + 1) ** 2).evaluate(QQ(1, 2)) == QQ(9, 4)


def test_parampoly_divide_rejects_inexact():
    p = ParamPoly.p()
    with pytest.raises(NotDivisible):
        (p**2 + 1).divide_exact(p + 1)
    with pytest.raises(ZeroDivisionError):
        (p + 1).divide_exact(ParamPoly.zero())


def test_parampoly_render():
    p = ParamPoly.p()
    assert (p**2 - 1).render() == "p^2-1"
    assert (-p).render() == "-p"
    assert (2 * p + 1).render() == "2*p+1"
    assert ParamPoly.zero().render() == "0"
    assert ParamPoly.const(QQ(1, 2)).render() == "1/2"
    assert ParamPoly.one().is_one()
    assert (p**5).degree() == 5


def test_multipoly_ring_axioms_seeded():
    rng = random.Random(7)
    for _ in range(40):
        f, g, h = (rand_poly(rng) for _ in range(3))
        assert f + g == g + f
        assert f * g == g * f
        assert (f + g) + h == f + (g + h)
        assert (f * g) * h == f * (g * h)
        assert f * (g + h) == f * g + f * h
        assert f + MultiPoly.zero(SP3) == f
        assert f * MultiPoly.one(SP3) == f
        assert (f - f).is_zero()


def test_multipoly_scalar_embedding():
    x1 = MultiPoly.variable(SP2, "x1")
    p = MultiPoly.p(SP2)
    assert 1 - x1 == -(x1 - 1)
    assert x1 * QQ(-1, 3) == -x1 * QQ(1, 3)
    assert (p**2 - 1) * MultiPoly.one(SP2) == p * p - 1
    assert MultiPoly.const(SP2, QQ(5)).render() == "5"


def test_divide_exact_roundtrip_seeded():
    rng = random.Random(11)
    trials = 0
    while trials < 30:
        f = rand_poly(rng)
        g = rand_poly(rng, n_terms=3, max_deg=2, max_p=1)
        if g.is_zero():
            continue
        trials += 1
        assert (f * g).divide_exact(g) == f


def test_divide_exact_rejects_inexact():
    x1 = MultiPoly.variable(SP2, "x1")
    x2 = MultiPoly.variable(SP2, "x2")
    with pytest.raises(NotDivisible):
        (x1 + x2).divide_exact(x1)
    with pytest.raises(ZeroDivisionError):
        x1.divide_exact(MultiPoly.zero(SP2))
    assert MultiPoly.zero(SP2).divide_exact(x1).is_zero()


def test_divide_exact_linear_root_shapes():
    x1 = MultiPoly.variable(SP2, "x1")
    x2 = MultiPoly.variable(SP2, "x2")
    f = (x1 - x2) * (x1 + x2) * x2
    assert f.divide_exact(x1 - x2) == (x1 + x2) * x2
    assert f.divide_exact(x1 + x2) == (x1 - x2) * x2
    assert f.divide_exact(2 * x2) == (x1 - x2) * (x1 + x2) * QQ(1, 2)


def test_render_parse_roundtrip_seeded():
    rng = random.Random(13)
    for _ in range(30):
        f = rand_poly(rng)
        assert MultiPoly.parse(SP3, f.render()) == f
    assert MultiPoly.parse(SP3, "0").is_zero()


def test_parse_golden_forms():
    x1 = MultiPoly.variable(SP2, "x1")
    x2 = MultiPoly.variable(SP2, "x2")
    p = MultiPoly.p(SP2)
    assert MultiPoly.parse(SP2, "p*x1 - x2") == p * x1 - x2
    assert MultiPoly.parse(SP2, "(p-1)/2*x1") == x1 * (p - 1) * QQ(1, 2)
    assert MultiPoly.parse(SP2, "(p^2+2*p+1)") == (p + 1) ** 2 * MultiPoly.one(SP2)
    # unicode minus is accepted on input; output is always ASCII
    assert MultiPoly.parse(SP2, "p*x1 − x2").render() == "p*x1 - x2"
    with pytest.raises(ValueError):
        MultiPoly.parse(SP2, "x1 + qq")


def test_json_roundtrip_seeded():
    rng = random.Random(17)
    for _ in range(20):
        f = rand_poly(rng)
        assert MultiPoly.from_json(SP3, f.to_json()) == f
    t = TensorPoly.of(
        MultiPoly.variable(SP2, "x1"), MultiPoly.variable(SP2, "x2")
    )
    assert TensorPoly.from_json(SP2, t.to_json()) == t


def test_evaluate_p():
    x1 = MultiPoly.variable(SP2, "x1")
    p = MultiPoly.p(SP2)
    f = (p**2 - 1) * x1
    assert f.evaluate_p(3) == 8 * x1
    assert f.evaluate_p(1).is_zero()
    assert f.evaluate_p(QQ(1, 2)) == x1 * QQ(-3, 4)


def test_degrees_and_coefficients():
    x1 = MultiPoly.variable(SP2, "x1")
    x2 = MultiPoly.variable(SP2, "x2")
    p = MultiPoly.p(SP2)
    f = x1 * x2 + x1**2
    assert f.homogeneous_degree() == 2
    assert (x1 + x1 * x2).homogeneous_degree() is None
    comps = (x1 + x1 * x2).homogeneous_components()
    assert comps[1] == x1 and comps[2] == x1 * x2
    assert ((p + 1) * x1).coefficient((1, 0)) == ParamPoly.p() + 1
    assert ((p + 1) * x1).coefficient((0, 1)).is_zero()
    g = p**3 * x1 * x2**2
    assert g.var_degree() == 3 and g.p_degree() == 3
    assert g.n_terms() == 1
    assert set(((p + 1) * x1 + x2).coeff_map()) == {(1, 0), (0, 1)}


def test_map_slots_signed_substitution():
    x1 = MultiPoly.variable(SP2, "x1")
    x2 = MultiPoly.variable(SP2, "x2")
    p = MultiPoly.p(SP2)
    f = x1**2 - x1 * x2
    # x1 -> -x2, x2 -> p*x1
    g = f.map_slots([(1, -1, 0), (0, 1, 1)])
    assert g == x2**2 + p * x2 * x1
    assert f.map_slots(identity_actions(2)) == f


def test_substitute_linear_is_a_homomorphism():
    rng = random.Random(19)
    images = {
        "x1": MultiPoly.variable(SP3, "x2") - MultiPoly.variable(SP3, "x3"),
        "x2": MultiPoly.p(SP3) * MultiPoly.variable(SP3, "x1"),
        "x3": -MultiPoly.variable(SP3, "x1") + 2 * MultiPoly.variable(SP3, "x2"),
    }
    for _ in range(15):
        f = rand_poly(rng, n_terms=3)
        g = rand_poly(rng, n_terms=3)
        sf = f.substitute_linear(images)
        sg = g.substitute_linear(images)
        assert (f * g).substitute_linear(images) == sf * sg
        assert (f + g).substitute_linear(images) == sf + sg


def test_substitute_linear_rejects_bad_images():
    x1 = MultiPoly.variable(SP2, "x1")
    with pytest.raises(KeyError):
        x1.substitute_linear({"x1": x1})
    with pytest.raises(ValueError):
        x1.substitute_linear({"x1": x1 * x1, "x2": x1})


def test_tensor_factors_and_contract():
    x1 = MultiPoly.variable(SP2, "x1")
    x2 = MultiPoly.variable(SP2, "x2")
    t = TensorPoly.of(x1 + x2, x1 * x2)
    assert t == TensorPoly.left(x1 + x2) * TensorPoly.right(x1 * x2)
    # contract with identity on the left, p*(identity) on the right
    left = identity_actions(2)
    right = [(0, 1, 1), (1, 1, 1)]
    p = MultiPoly.p(SP2)
    assert t.contract(left, right) == (x1 + x2) * p**2 * x1 * x2
    swapped = t.apply_left([(1, 1, 0), (0, 1, 0)])
    assert swapped == TensorPoly.of(x1 + x2, x1 * x2)  # symmetric left factor
    u = TensorPoly.of(x1, x2).apply_left([(1, 1, 0), (0, 1, 0)])
    assert u == TensorPoly.of(x2, x2)
    v = TensorPoly.of(x1, x1).apply_right([(1, -1, 0), (0, 1, 0)])
    assert v == -TensorPoly.of(x1, x2)


def test_tensor_render_uses_y_for_right_factor():
    x1 = MultiPoly.variable(SP2, "x1")
    x2 = MultiPoly.variable(SP2, "x2")
    t = TensorPoly.of(x1, x2) + TensorPoly.left(MultiPoly.p(SP2) * x1)
    assert t.render() == "x1*y2 + p*x1"
    assert TensorPoly.parse(SP2, t.render()) == t


def test_space_mismatch_rejected():
    x1 = MultiPoly.variable(SP2, "x1")
    z1 = MultiPoly.variable(SP3, "x1")
    with pytest.raises(ValueError):
        x1 + z1
    with pytest.raises(ValueError):
        VarSpace(("x1", "x1"))
    with pytest.raises(KeyError):
        SP2.index("x9")
