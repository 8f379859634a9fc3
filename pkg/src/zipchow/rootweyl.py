"""Root data and Weyl groups of the classical types.

A RootDatum is a product of classical components (A means the full
general linear group GL_n, so an A component of size n carries n
variables and n-1 simple reflections; B_n, C_n, D_n carry n variables
and n simple reflections).  Roots are integer coordinate vectors over
the concatenated variables; Weyl group elements are signed
permutations of those variables.

Conventions used throughout:

* Variables are named x1..xn for a single component and x{i}_{c} for
  component c (0-based) in a product.
* Simple reflections carry 1-based labels, numbered component by
  component.
* A root vector is positive iff its first nonzero coordinate is
  positive.
* WeylElt.images[i] = +-(j+1) means the element sends variable i
  (0-based) to +-variable j.  Composition (u*w)(x) = u(w(x)).
* An optional Frobenius permutation of the components twists products;
  it permutes variables and simple labels without changing local
  indices.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from functools import lru_cache, cached_property
from typing import Iterable, Iterator, Sequence

from zipchow.coeffpoly import MultiPoly, VarSpace
from zipchow.rationals import QQ

Root = tuple  # integer coordinate vector over the datum's variables


@dataclass(frozen=True)
class CartanComponent:
    """One classical factor: letter in "ABCD" and its variable count."""

    letter: str
    n: int

    def __post_init__(self):
        if self.letter not in ("A", "B", "C", "D"):
            raise ValueError("unknown Cartan letter %r" % self.letter)
        minimum = {"A": 1, "B": 2, "C": 2, "D": 3}[self.letter]
        if self.n < minimum:
            raise ValueError(
                "type %s needs at least %d variables, got %d"
                % (self.letter, minimum, self.n)
            )

    @property
    def simple_count(self) -> int:
        return self.n - 1 if self.letter == "A" else self.n

    def local_simple_roots(self) -> list[tuple[int, ...]]:
        n = self.n
        roots = []
        for i in range(n - 1):
            vec = [0] * n
            vec[i], vec[i + 1] = 1, -1
            roots.append(tuple(vec))
        if self.letter == "B":
            roots.append(tuple([0] * (n - 1) + [1]))
        elif self.letter == "C":
            roots.append(tuple([0] * (n - 1) + [2]))
        elif self.letter == "D":
            vec = [0] * n
            vec[n - 2] = vec[n - 1] = 1
            roots.append(tuple(vec))
        return roots

    def local_positive_roots(self) -> list[tuple[int, ...]]:
        n = self.n
        roots = []
        for i in range(n):
            for j in range(i + 1, n):
                vec = [0] * n
                vec[i], vec[j] = 1, -1
                roots.append(tuple(vec))
        if self.letter in ("B", "C", "D"):
            for i in range(n):
                for j in range(i + 1, n):
                    vec = [0] * n
                    vec[i] = vec[j] = 1
                    roots.append(tuple(vec))
        if self.letter == "B":
            for i in range(n):
                vec = [0] * n
                vec[i] = 1
                roots.append(tuple(vec))
        elif self.letter == "C":
            for i in range(n):
                vec = [0] * n
                vec[i] = 2
                roots.append(tuple(vec))
        return roots


@dataclass(frozen=True)
class RootDatum:
    """Product of classical components with an optional Frobenius
    permutation of the components."""

    components: tuple[CartanComponent, ...]
    frobenius_perm: tuple[int, ...] = None  # type: ignore[assignment]

    def __post_init__(self):
        if not self.components:
            raise ValueError("datum needs at least one component")
        if self.frobenius_perm is None:
            object.__setattr__(
                self, "frobenius_perm", tuple(range(len(self.components)))
            )
        perm = self.frobenius_perm
        if sorted(perm) != list(range(len(self.components))):
            raise ValueError("frobenius_perm is not a permutation of components")
        for c, image in enumerate(perm):
            if self.components[c] != self.components[image]:
                raise ValueError("frobenius_perm must map a component to an equal one")

    # -- layout ------------------------------------------------------------

    @cached_property
    def offsets(self) -> tuple[int, ...]:
        out, total = [], 0
        for comp in self.components:
            out.append(total)
            total += comp.n
        return tuple(out)

    @property
    def nvars(self) -> int:
        return self.offsets[-1] + self.components[-1].n

    @cached_property
    def space(self) -> VarSpace:
        if len(self.components) == 1:
            names = tuple("x%d" % (i + 1) for i in range(self.components[0].n))
        else:
            names = tuple(
                "x%d_%d" % (i + 1, c)
                for c, comp in enumerate(self.components)
                for i in range(comp.n)
            )
        return VarSpace(names)

    def _globalize(self, comp_index: int, local_vec: Sequence[int]) -> Root:
        vec = [0] * self.nvars
        off = self.offsets[comp_index]
        for i, v in enumerate(local_vec):
            vec[off + i] = v
        return tuple(vec)

    # -- roots and labels ----------------------------------------------------

    @cached_property
    def simple_roots(self) -> tuple[Root, ...]:
        """Simple roots indexed by 1-based label minus one."""
        out = []
        for c, comp in enumerate(self.components):
            for vec in comp.local_simple_roots():
                out.append(self._globalize(c, vec))
        return tuple(out)

    @property
    def simple_labels(self) -> range:
        return range(1, len(self.simple_roots) + 1)

    @cached_property
    def label_component(self) -> tuple[int, ...]:
        out = []
        for c, comp in enumerate(self.components):
            out.extend([c] * comp.simple_count)
        return tuple(out)

    @cached_property
    def positive_roots(self) -> tuple[Root, ...]:
        out = []
        for c, comp in enumerate(self.components):
            for vec in comp.local_positive_roots():
                out.append(self._globalize(c, vec))
        return tuple(out)

    def simple_root(self, label: int) -> Root:
        return self.simple_roots[label - 1]

    # -- Weyl elements -------------------------------------------------------

    def identity(self) -> "WeylElt":
        return WeylElt(self, tuple(range(1, self.nvars + 1)))

    def simple_reflection(self, label: int) -> "WeylElt":
        return self.reflection(self.simple_root(label))

    def reflection(self, root: Root) -> "WeylElt":
        """Reflection in a (long or short) root of the classical shapes:
        x_i - x_j swaps, x_i + x_j swaps with negation, x_i or 2x_i
        negates."""
        support = [i for i, v in enumerate(root) if v]
        images = list(range(1, self.nvars + 1))
        if len(support) == 1:
            i = support[0]
            images[i] = -(i + 1)
        elif len(support) == 2:
            i, j = support
            if root[i] * root[j] < 0:
                images[i], images[j] = j + 1, i + 1
            else:
                images[i], images[j] = -(j + 1), -(i + 1)
        else:
            raise ValueError("not a root of a classical component: %r" % (root,))
        return WeylElt(self, tuple(images))

    def weyl_word(self, word: Iterable[int]) -> "WeylElt":
        w = self.identity()
        for label in word:
            w = w * self.simple_reflection(label)
        return w

    # -- Frobenius -----------------------------------------------------------

    def frobenius_label(self, label: int) -> int:
        """Image of a simple label under the component permutation."""
        comp = self.label_component[label - 1]
        first = sum(self.components[c].simple_count for c in range(comp))
        local = label - 1 - first
        image_comp = self.frobenius_perm[comp]
        first_image = sum(self.components[c].simple_count for c in range(image_comp))
        return first_image + local + 1

    def frobenius_var(self, slot: int) -> int:
        """Image of a 0-based variable slot under the component permutation."""
        comp = 0
        while comp + 1 < len(self.components) and slot >= self.offsets[comp + 1]:
            comp += 1
        local = slot - self.offsets[comp]
        return self.offsets[self.frobenius_perm[comp]] + local

    def frobenius_root(self, root: Root) -> Root:
        vec = [0] * self.nvars
        for i, v in enumerate(root):
            if v:
                vec[self.frobenius_var(i)] = v
        return tuple(vec)

    def frobenius_actions(self) -> list[tuple[int, int, int]]:
        """Slot actions of the plain variable permutation (no p factor)."""
        return [(self.frobenius_var(i), 1, 0) for i in range(self.nvars)]


def root_is_positive(root: Root) -> bool:
    for v in root:
        if v:
            return v > 0
    return False


def root_poly(datum: RootDatum, root: Root) -> MultiPoly:
    terms = {}
    for i, v in enumerate(root):
        if v:
            key = [0] * (datum.nvars + 1)
            key[i + 1] = 1
            terms[tuple(key)] = QQ(v)
    return MultiPoly(datum.space, terms)


def pairing(lam: Sequence, root: Root):
    """Coroot pairing <lam, root^vee> = 2 (lam, root) / (root, root)."""
    num = sum(QQ(a) * b for a, b in zip(lam, root))
    den = sum(b * b for b in root)
    return 2 * num / QQ(den)


@dataclass(frozen=True)
class WeylElt:
    """Signed permutation: images[i] = +-(j+1) sends variable i to +-x_j."""

    datum: RootDatum
    images: tuple[int, ...]

    def __mul__(self, other: "WeylElt") -> "WeylElt":
        """(u*w)(x) = u(w(x))."""
        if other.datum != self.datum:
            raise ValueError("mismatched data in Weyl composition")
        out = []
        for img in other.images:
            u_img = self.images[abs(img) - 1]
            out.append(u_img if img > 0 else -u_img)
        return WeylElt(self.datum, tuple(out))

    def inverse(self) -> "WeylElt":
        out = [0] * len(self.images)
        for i, img in enumerate(self.images):
            j = abs(img) - 1
            out[j] = i + 1 if img > 0 else -(i + 1)
        return WeylElt(self.datum, tuple(out))

    def is_identity(self) -> bool:
        return self.images == tuple(range(1, len(self.images) + 1))

    def apply_root(self, root: Root) -> Root:
        vec = [0] * len(self.images)
        for i, v in enumerate(root):
            if v:
                img = self.images[i]
                j = abs(img) - 1
                vec[j] += v if img > 0 else -v
        return tuple(vec)

    @property
    def length(self) -> int:
        return _length(self)

    def sign(self) -> int:
        return -1 if self.length & 1 else 1

    def is_left_descent(self, label: int) -> bool:
        """l(s_label * w) < l(w), i.e. w^{-1}(alpha) is negative."""
        return not root_is_positive(self.inverse().apply_root(self.datum.simple_root(label)))

    def is_right_descent(self, label: int) -> bool:
        """l(w * s_label) < l(w), i.e. w(alpha) is negative."""
        return not root_is_positive(self.apply_root(self.datum.simple_root(label)))

    def reduced_word(self) -> tuple[int, ...]:
        """Lexicographically minimal reduced word, built by repeatedly
        stripping the smallest left descent."""
        return _reduced_word(self)

    def word_string(self) -> str:
        word = self.reduced_word()
        return "e" if not word else ",".join("s%d" % i for i in word)

    def images_string(self) -> str:
        return "[" + ",".join(str(i) for i in self.images) + "]"

    def poly_action(self) -> list[tuple[int, int, int]]:
        """Slot actions of the substitution x_i -> w(x_i)."""
        return [(abs(img) - 1, 1 if img > 0 else -1, 0) for img in self.images]

    def act(self, f: MultiPoly) -> MultiPoly:
        return f.map_slots(self.poly_action())

    def __str__(self) -> str:
        return self.word_string()


@lru_cache(maxsize=None)
def _length(w: WeylElt) -> int:
    return sum(
        1 for root in w.datum.positive_roots if not root_is_positive(w.apply_root(root))
    )


@lru_cache(maxsize=None)
def _reduced_word(w: WeylElt) -> tuple[int, ...]:
    word = []
    cur = w
    while True:
        for label in cur.datum.simple_labels:
            if cur.is_left_descent(label):
                word.append(label)
                cur = cur.datum.simple_reflection(label) * cur
                break
        else:
            break
    if cur.length != 0 or not cur.is_identity():
        raise AssertionError("descent stripping did not reach the identity")
    return tuple(word)


@lru_cache(maxsize=None)
def enumerate_weyl(datum: RootDatum) -> tuple[WeylElt, ...]:
    """All of W, ordered by (length, reduced word)."""
    return _enumerate_subgroup(datum, tuple(datum.simple_labels))


@lru_cache(maxsize=None)
def _enumerate_subgroup(datum: RootDatum, labels: tuple[int, ...]) -> tuple[WeylElt, ...]:
    seen = {datum.identity()}
    frontier = list(seen)
    gens = [datum.simple_reflection(i) for i in labels]
    while frontier:
        new = []
        for w in frontier:
            for s in gens:
                ws = w * s
                if ws not in seen:
                    seen.add(ws)
                    new.append(ws)
        frontier = new
    return tuple(sorted(seen, key=lambda w: (w.length, w.reduced_word())))


def parabolic_elements(datum: RootDatum, labels: Iterable[int]) -> tuple[WeylElt, ...]:
    """Elements of the standard parabolic subgroup W_K."""
    return _enumerate_subgroup(datum, tuple(sorted(set(labels))))


def longest_element(datum: RootDatum, labels: Iterable[int] | None = None) -> WeylElt:
    """Longest element of W_K (K = all simple labels if omitted),
    built greedily: append any simple of K that still lifts length."""
    if labels is None:
        labels = list(datum.simple_labels)
    labels = sorted(set(labels))
    w = datum.identity()
    while True:
        for label in labels:
            if not w.is_right_descent(label):
                w = w * datum.simple_reflection(label)
                break
        else:
            return w


def positive_roots_of_subset(datum: RootDatum, labels: Iterable[int]) -> tuple[Root, ...]:
    """Positive roots of the standard parabolic root subsystem: those
    sent negative by its longest element."""
    w0k = longest_element(datum, labels)
    return tuple(
        root
        for root in datum.positive_roots
        if not root_is_positive(w0k.apply_root(root))
    )


def min_coset_reps(datum: RootDatum, labels: Iterable[int]) -> tuple[WeylElt, ...]:
    """Minimal-length representatives of the right cosets W_K w, i.e.
    the elements with no left descent in K, sorted by (length, word)."""
    key = tuple(sorted(set(labels)))
    return _min_coset_reps(datum, key)


@lru_cache(maxsize=None)
def _min_coset_reps(datum: RootDatum, labels: tuple[int, ...]) -> tuple[WeylElt, ...]:
    reps = [
        w
        for w in enumerate_weyl(datum)
        if not any(w.is_left_descent(i) for i in labels)
    ]
    return tuple(sorted(reps, key=lambda w: (w.length, w.reduced_word())))


def bruhat_leq(u: WeylElt, w: WeylElt) -> bool:
    """Bruhat order via the subword property: u <= w iff u appears in
    the length-increasing subword closure of a reduced word for w."""
    if u.datum != w.datum:
        raise ValueError("mismatched data in Bruhat comparison")
    if u.length > w.length:
        return False
    datum = u.datum
    reachable = {datum.identity()}
    for label in w.reduced_word():
        s = datum.simple_reflection(label)
        new = set()
        for v in reachable:
            vs = v * s
            if vs.length > v.length and vs not in reachable:
                new.add(vs)
        reachable |= new
    return u in reachable


# -- parsing and rendering of element descriptions ---------------------------

_WORD_RE = re.compile(r"s(\d+)$")


def word_from_string(text: str) -> tuple[int, ...]:
    """Parse "s2,s1,s2" (or "e" / "" for the identity) into labels."""
    text = text.strip()
    if text in ("", "e", "1"):
        return ()
    labels = []
    for piece in text.split(","):
        m = _WORD_RE.match(piece.strip())
        if m is None:
            raise ValueError("bad Weyl word %r (expected like 's2,s1')" % text)
        labels.append(int(m.group(1)))
    return tuple(labels)


def element_from_string(datum: RootDatum, text: str) -> WeylElt:
    """Parse either a word "s2,s1" or a signed permutation "[2,-1]"."""
    text = text.strip()
    if text.startswith("["):
        if not text.endswith("]"):
            raise ValueError("unterminated signed permutation %r" % text)
        body = text[1:-1].strip()
        images = tuple(int(tok) for tok in body.split(",")) if body else ()
        if sorted(abs(i) for i in images) != list(range(1, datum.nvars + 1)):
            raise ValueError("%r is not a signed permutation of 1..%d" % (text, datum.nvars))
        w = WeylElt(datum, images)
        # reject sign patterns outside the group (A: none; D: even count)
        for c, comp in enumerate(datum.components):
            off = datum.offsets[c]
            block = images[off : off + comp.n]
            if sorted(abs(i) for i in block) != list(range(off + 1, off + comp.n + 1)):
                raise ValueError("signed permutation must preserve components")
            negs = sum(1 for i in block if i < 0)
            if comp.letter == "A" and negs:
                raise ValueError("type A elements cannot flip signs")
            if comp.letter == "D" and negs % 2:
                raise ValueError("type D elements flip an even number of signs")
        return w
    for label in word_from_string(text):
        if label not in datum.simple_labels:
            raise ValueError("label s%d out of range" % label)
    return datum.weyl_word(word_from_string(text))
