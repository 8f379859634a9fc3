"""Bruhat-stack classes: diagonal formulas, divided differences,
Schubert classes, fixed-point evaluations, and the Chevalley relation.

The class of the diagonal lives in the tensor square S (x) S and is
given by determinantal formulas: the staircase product
Phi = prod_{i<j}(x_i (x) 1 - 1 (x) x_j) alone in type A, and
Phi * Gamma_k(c_*) in types B/C/D, where Gamma_k is the Schur-like
determinant det(c_{k+1+j-2i}) and the c_i are symmetrized elementary
symmetric classes (halved in types B and D, with c_0 = 2 in type C and
c_0 = 1 in types B/D; type D stops at c_{n-1}).  Products of
components multiply their diagonals.

Divided differences act on the Left tensor factor; delta_w composes
along a reduced word with the rightmost letter applied first, and
[Brh_w] = delta_w([Brh_e]).  The evaluation i_w multiplies the Right
factor through w onto the Left one; the tuple of all i_w values is a
faithful normal form for classes of the Bruhat ring, which is how the
Chevalley relation is checked.
"""

from __future__ import annotations

from functools import lru_cache
from itertools import permutations
from typing import Iterable, Sequence

from zipchow.coeffpoly import MultiPoly, TensorPoly, identity_actions
from zipchow.rationals import QQ
from zipchow.rootweyl import (
    RootDatum,
    Root,
    WeylElt,
    enumerate_weyl,
    pairing,
    root_poly,
)


def _elementary_symmetric(vars_: Sequence[TensorPoly], one: TensorPoly) -> list[TensorPoly]:
    """e_0..e_k of the given degree-1 classes, by the (1 + v t) product."""
    es = [one]
    for v in vars_:
        new = [es[0]]
        for i in range(1, len(es)):
            new.append(es[i] + es[i - 1] * v)
        new.append(es[-1] * v)
        es = new
    return es


def _det(matrix: list[list[TensorPoly]], zero: TensorPoly) -> TensorPoly:
    k = len(matrix)
    total = zero
    for perm in permutations(range(k)):
        sign = 1
        for i in range(k):
            for j in range(i + 1, k):
                if perm[i] > perm[j]:
                    sign = -sign
        prod = matrix[0][perm[0]]
        for i in range(1, k):
            prod = prod * matrix[i][perm[i]]
        total = total + (prod if sign > 0 else -prod)
    return total


def _component_diagonal(datum: RootDatum, comp_index: int) -> TensorPoly:
    comp = datum.components[comp_index]
    base = datum.space
    off = datum.offsets[comp_index]
    n = comp.n
    xs = [MultiPoly.variable(base, base.names[off + i]) for i in range(n)]
    left = [TensorPoly.left(x) for x in xs]
    right = [TensorPoly.right(x) for x in xs]
    one = TensorPoly.one(base)

    total = one
    for i in range(n):
        for j in range(i + 1, n):
            total = total * (left[i] - right[j])
    if comp.letter == "A":
        return total

    sigma_l = _elementary_symmetric(left, one)
    sigma_r = _elementary_symmetric(right, one)
    if comp.letter == "C":
        k = n
        top = n
        c0 = QQ(2)
        half = QQ(1)
    elif comp.letter == "B":
        k = n
        top = n
        c0 = QQ(1)
        half = QQ(1, 2)
    else:  # D
        # Same halved c_i as type B (including c_n: sigma_n is invariant
        # under even sign changes, so dropping it breaks the off-diagonal
        # vanishing); only the determinant size shrinks to n - 1.
        k = n - 1
        top = n
        c0 = QQ(1)
        half = QQ(1, 2)

    def c(i: int) -> TensorPoly:
        if i == 0:
            return TensorPoly.const(base, c0)
        if 1 <= i <= top:
            return (sigma_l[i] + sigma_r[i]) * half
        return TensorPoly.zero(base)

    matrix = [[c(k + 1 + (j + 1) - 2 * (i + 1)) for j in range(k)] for i in range(k)]
    return total * _det(matrix, TensorPoly.zero(base))


@lru_cache(maxsize=None)
def diagonal_class(datum: RootDatum) -> TensorPoly:
    """[Brh_e]: the class of the diagonal, componentwise product."""
    total = TensorPoly.one(datum.space)
    for c in range(len(datum.components)):
        total = total * _component_diagonal(datum, c)
    return total


def divided_difference(datum: RootDatum, label: int, f):
    """delta_i(f) = (f - s_i f) / alpha_i, with s_i acting on the Left
    factor when f is a tensor class."""
    alpha = root_poly(datum, datum.simple_root(label))
    action = datum.simple_reflection(label).poly_action()
    if isinstance(f, TensorPoly):
        g = f - f.apply_left(action)
        return g.divide_exact(TensorPoly.left(alpha))
    g = f - f.map_slots(action)
    return g.divide_exact(alpha)


def delta_word(datum: RootDatum, word: Iterable[int], f):
    """Compose divided differences along a word, rightmost letter first."""
    for label in reversed(tuple(word)):
        f = divided_difference(datum, label, f)
    return f


def delta_w(datum: RootDatum, w: WeylElt, f):
    return delta_word(datum, w.reduced_word(), f)


@lru_cache(maxsize=None)
def schubert_class(datum: RootDatum, w: WeylElt) -> TensorPoly:
    """[Brh_w] = delta_w([Brh_e]).  Treat the result as immutable."""
    return delta_w(datum, w, diagonal_class(datum))


def i_w_eval(datum: RootDatum, w: WeylElt, f: TensorPoly) -> MultiPoly:
    """Evaluation r (x) r' -> r * w(r') at the fixed point indexed by w."""
    return f.contract(identity_actions(datum.nvars), w.poly_action())


def bruhat_tuple(datum: RootDatum, f: TensorPoly) -> tuple[MultiPoly, ...]:
    """All fixed-point evaluations, in enumerate_weyl order.  Two
    classes of the Bruhat ring are equal iff their tuples agree."""
    return tuple(i_w_eval(datum, w, f) for w in enumerate_weyl(datum))


def positive_root_product(datum: RootDatum) -> MultiPoly:
    total = MultiPoly.one(datum.space)
    for root in datum.positive_roots:
        total = total * root_poly(datum, root)
    return total


def descent_E_w(datum: RootDatum, w: WeylElt) -> list[Root]:
    """E_w: positive roots alpha with l(s_alpha w) = l(w) - 1.

    Covers act on the left because composition here is (u*w)(x) = u(w(x));
    with words built rightmost-letter-first this is the side on which
    multiplying by a reflection peels one divided difference off [Brh_w].
    """
    target = w.length - 1
    return [
        root
        for root in datum.positive_roots
        if (datum.reflection(root) * w).length == target
    ]


def chevalley_sides(
    datum: RootDatum, w: WeylElt, lam: Sequence[int]
) -> tuple[TensorPoly, TensorPoly]:
    """Both sides of the Chevalley relation for the weight lam:

        (lam (x) 1 - 1 (x) w^{-1} lam) * [Brh_w]
            = sum_{alpha in E_w} <lam, alpha^vee> [Brh_{s_alpha w}]

    Equality holds in the Bruhat ring, i.e. after bruhat_tuple.
    """
    lam_poly = _vector_poly(datum, lam)
    pulled = _vector_poly(datum, w.inverse().apply_root(tuple(lam)))
    c1 = TensorPoly.left(lam_poly) - TensorPoly.right(pulled)
    lhs = c1 * schubert_class(datum, w)
    rhs = TensorPoly.zero(datum.space)
    for root in descent_E_w(datum, w):
        coeff = pairing(lam, root)
        rhs = rhs + schubert_class(datum, datum.reflection(root) * w) * coeff
    return lhs, rhs


def _vector_poly(datum: RootDatum, vec: Sequence) -> MultiPoly:
    total = MultiPoly.zero(datum.space)
    for i, v in enumerate(vec):
        if v:
            total = total + MultiPoly.variable(datum.space, datum.space.names[i]) * QQ(v)
    return total
