"""Root data and Weyl groups, checked against independent oracles:
roots by reflection closure, lengths by inversion counting, cosets and
Bruhat order by brute force over the full group."""

import pytest

from zipchow.coeffpoly import MultiPoly
from zipchow.rootweyl import (
    CartanComponent,
    RootDatum,
    WeylElt,
    bruhat_leq,
    element_from_string,
    enumerate_weyl,
    longest_element,
    min_coset_reps,
    parabolic_elements,
    positive_roots_of_subset,
    root_is_positive,
    root_poly,
    word_from_string,
)

A2 = RootDatum((CartanComponent("A", 3),))
B2 = RootDatum((CartanComponent("B", 2),))
C2 = RootDatum((CartanComponent("C", 2),))
B3 = RootDatum((CartanComponent("B", 3),))
C3 = RootDatum((CartanComponent("C", 3),))
D3 = RootDatum((CartanComponent("D", 3),))


# -- oracles ------------------------------------------------------------------


def reflect(root, alpha):
    """s_alpha(root) for the classical normalizations used here."""
    num = 2 * sum(a * b for a, b in zip(root, alpha))
    den = sum(a * a for a in alpha)
    assert num % den == 0
    return tuple(r - (num // den) * a for r, a in zip(root, alpha))


def roots_by_closure(datum):
    """All roots as the closure of the simples under simple reflections."""
    roots = set(datum.simple_roots)
    frontier = set(roots)
    while frontier:
        new = set()
        for root in frontier:
            for alpha in datum.simple_roots:
                img = reflect(root, alpha)
                if img not in roots:
                    new.add(img)
        roots |= new
        frontier = new
    return roots


def inversion_count(w):
    return sum(
        1
        for root in w.datum.positive_roots
        if not root_is_positive(w.apply_root(root))
    )


def brute_min_reps(datum, labels):
    """Unique shortest element of each coset W_K w, by full enumeration."""
    sub = parabolic_elements(datum, labels)
    seen = set()
    reps = []
    for w in enumerate_weyl(datum):
        coset = frozenset((u * w).images for u in sub)
        if coset in seen:
            continue
        seen.add(coset)
        shortest = [v for v in (u * w for u in sub) if v.length == min((u * w).length for u in sub)]
        assert len(shortest) == 1
        reps.append(shortest[0])
    return set(reps)


def bruhat_by_covers(datum):
    """u <= w as the reflexive-transitive closure of length-1 reflection
    covers; independent of any subword argument."""
    elements = enumerate_weyl(datum)
    reflections = [datum.reflection(root) for root in datum.positive_roots]
    leq = {(w.images, w.images) for w in elements}
    covers = []
    for u in elements:
        for t in reflections:
            w = u * t
            if w.length == u.length + 1:
                covers.append((u.images, w.images))
                leq.add((u.images, w.images))
    changed = True
    while changed:
        changed = False
        for a, b in covers:
            for c, d in list(leq):
                if d == a and (c, b) not in leq:
                    leq.add((c, b))
                    changed = True
    return leq


# -- root data ----------------------------------------------------------------


def test_simple_roots_golden():
    assert B2.simple_roots == ((1, -1), (0, 1))
    assert C2.simple_roots == ((1, -1), (0, 2))
    assert A2.simple_roots == ((1, -1, 0), (0, 1, -1))
    assert D3.simple_roots == ((1, -1, 0), (0, 1, -1), (0, 1, 1))
    assert B3.simple_root(3) == (0, 0, 1)


@pytest.mark.parametrize("datum", [A2, B2, C2, B3, C3, D3])
def test_positive_roots_match_reflection_closure(datum):
    closure = roots_by_closure(datum)
    positives = {r for r in closure if root_is_positive(r)}
    assert set(datum.positive_roots) == positives
    assert closure == positives | {tuple(-c for c in r) for r in positives}


def test_positive_root_counts():
    assert len(A2.positive_roots) == 3
    assert len(B2.positive_roots) == 4
    assert len(C2.positive_roots) == 4
    assert len(B3.positive_roots) == 9
    assert len(D3.positive_roots) == 6


def test_component_validation():
    with pytest.raises(ValueError):
        CartanComponent("E", 6)
    with pytest.raises(ValueError):
        CartanComponent("A", 0)
    with pytest.raises(ValueError):
        RootDatum(())
    with pytest.raises(ValueError):
        RootDatum((CartanComponent("A", 2),), frobenius_perm=(1,))
    with pytest.raises(ValueError):
        RootDatum(
            (CartanComponent("A", 2), CartanComponent("A", 3)),
            frobenius_perm=(1, 0),
        )


def test_root_poly():
    f = root_poly(C2, (0, 2))
    assert f == 2 * MultiPoly.variable(C2.space, "x2")
    g = root_poly(B2, (1, -1))
    x1 = MultiPoly.variable(B2.space, "x1")
    x2 = MultiPoly.variable(B2.space, "x2")
    assert g == x1 - x2


# -- Weyl elements --------------------------------------------------------


def test_group_orders():
    assert len(enumerate_weyl(A2)) == 6
    assert len(enumerate_weyl(B2)) == 8
    assert len(enumerate_weyl(C2)) == 8
    assert len(enumerate_weyl(B3)) == 48
    assert len(enumerate_weyl(D3)) == 24
    hb2 = RootDatum((CartanComponent("A", 2), CartanComponent("A", 2)))
    assert len(enumerate_weyl(hb2)) == 4


def test_composition_convention():
    s1 = B2.simple_reflection(1)
    s2 = B2.simple_reflection(2)
    assert s1.images == (2, 1)
    assert s2.images == (1, -2)
    # (u*w)(x) = u(w(x)): x1 -> s1(s2(x1)) = x2, x2 -> s1(-x2) = -x1
    assert (s1 * s2).images == (2, -1)
    assert (s2 * s1).images == (-2, 1)
    assert (s1 * s2) * (s1 * s2).inverse() == B2.identity()


@pytest.mark.parametrize("datum", [A2, B2, C2, B3, D3])
def test_length_matches_inversion_count(datum):
    for w in enumerate_weyl(datum):
        assert w.length == inversion_count(w)
        assert w.sign() == (-1) ** w.length
        assert w.inverse().length == w.length


@pytest.mark.parametrize("datum", [A2, B2, C2, B3, D3])
def test_reduced_words_multiply_back(datum):
    for w in enumerate_weyl(datum):
        word = w.reduced_word()
        assert len(word) == w.length
        assert datum.weyl_word(word) == w


def test_descents():
    w = B2.weyl_word((2, 1))  # s2*s1
    assert w.is_left_descent(2) and not w.is_left_descent(1)
    assert w.is_right_descent(1) and not w.is_right_descent(2)


@pytest.mark.parametrize("datum", [A2, B2, C2, B3, D3])
def test_longest_element(datum):
    w0 = longest_element(datum)
    assert w0.length == len(datum.positive_roots)
    for root in datum.positive_roots:
        assert not root_is_positive(w0.apply_root(root))
    assert w0 * w0 == datum.identity()


def test_longest_element_of_subset():
    w0I = longest_element(C3, (1, 2))
    assert w0I.length == 3  # A2 parabolic inside C3
    sub = positive_roots_of_subset(C3, (1, 2))
    assert set(sub) == {(1, -1, 0), (0, 1, -1), (1, 0, -1)}


def test_act_commutes_with_apply_root():
    for datum in (B2, C2):
        for w in enumerate_weyl(datum):
            for root in datum.positive_roots:
                assert w.act(root_poly(datum, root)) == root_poly(
                    datum, w.apply_root(root)
                )


@pytest.mark.parametrize(
    "datum,labels",
    [
        (B2, (1,)),
        (C2, (1,)),
        (B3, (2, 3)),
        (C3, (1, 2)),
        (A2, (1,)),
        (D3, (1, 3)),
    ],
)
def test_min_coset_reps_against_brute_force(datum, labels):
    reps = min_coset_reps(datum, labels)
    assert set(reps) == brute_min_reps(datum, labels)
    keys = [(w.length, w.reduced_word()) for w in reps]
    assert keys == sorted(keys)
    for w in reps:
        assert not any(w.is_left_descent(s) for s in labels)


@pytest.mark.parametrize("datum", [A2, B2, C2])
def test_bruhat_order_against_cover_closure(datum):
    oracle = bruhat_by_covers(datum)
    for u in enumerate_weyl(datum):
        for w in enumerate_weyl(datum):
            assert bruhat_leq(u, w) == ((u.images, w.images) in oracle)


def test_bruhat_order_spot_checks_b3():
    oracle = bruhat_by_covers(B3)
    elements = enumerate_weyl(B3)
    for u in elements[::5]:
        for w in elements[::7]:
            assert bruhat_leq(u, w) == ((u.images, w.images) in oracle)


def test_parabolic_elements_sizes():
    assert len(parabolic_elements(C3, (1, 2))) == 6
    assert len(parabolic_elements(B3, (2, 3))) == 8
    assert len(parabolic_elements(B3, ())) == 1


# -- Frobenius bookkeeping ------------------------------------------------


def test_frobenius_cyclic_shift():
    d = 3
    datum = RootDatum(
        tuple(CartanComponent("A", 2) for _ in range(d)),
        frobenius_perm=(1, 2, 0),
    )
    assert datum.frobenius_label(1) == 2
    assert datum.frobenius_label(3) == 1
    assert datum.frobenius_var(0) == 2
    assert datum.frobenius_var(5) == 1
    root = datum.simple_root(1)
    assert datum.frobenius_root(root) == datum.simple_root(2)
    actions = datum.frobenius_actions()
    assert actions[0] == (2, 1, 0) and actions[4] == (0, 1, 0)


def test_frobenius_trivial_by_default():
    assert B2.frobenius_perm == (0,)
    assert B2.frobenius_label(2) == 2
    assert B2.frobenius_root((1, -1)) == (1, -1)


# -- parsing ----------------------------------------------------------------


def test_word_from_string():
    assert word_from_string("s2,s1,s2") == (2, 1, 2)
    assert word_from_string("e") == ()
    assert word_from_string("") == ()
    with pytest.raises(ValueError):
        word_from_string("t1,s2")


def test_element_from_string_words_and_images():
    w = element_from_string(B2, "s2,s1")
    assert w == B2.weyl_word((2, 1))
    assert element_from_string(B2, "e") == B2.identity()
    assert element_from_string(B2, "[2,-1]") == B2.weyl_word((1, 2))
    with pytest.raises(ValueError):
        element_from_string(B2, "[2,2]")
    with pytest.raises(ValueError):
        element_from_string(B2, "[1,-2")
    with pytest.raises(ValueError):
        element_from_string(B2, "s7")
    with pytest.raises(ValueError):
        element_from_string(A2, "[1,-2,3]")  # no sign flips in type A
    with pytest.raises(ValueError):
        element_from_string(D3, "[-1,2,3]")  # odd flip count in type D


def test_word_string_and_images_string():
    w = B2.weyl_word((1, 2, 1))
    assert w.word_string() == "s1,s2,s1"
    assert B2.identity().word_string() == "e"
    # s1*s2*s1 is the reflection negating x1
    assert w.images_string() == "[-1,2]"
