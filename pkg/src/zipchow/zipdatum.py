"""Zip data attached to a cocharacter: the parabolic type I, the frame
element z = w_{0,I} w_0, the opposite type I-circ and its Frobenius
image J, the twisted stabilizer subsets I_w, and the stratum
multiplicities gamma(w).

For w in the minimal-coset transversal, sigma_w acts on roots by
alpha -> w(phi(z(alpha))) with phi the Frobenius permutation of
components.  I_w is the greatest subset K of I on which sigma_w
restricts to a bijection of simple reflections; gamma(w) is a product
over sigma_w-orbits of connected components of I_w:

  * if sigma^l fixes the component pointwise (split case), the factor
    is the Poincare polynomial of the component's Weyl group at p^l;
  * if the component is an equal-length chain and sigma^l reverses it,
    the factor is the involution-orbit sum over the symmetric group,
    counting a flipped pair once at doubled exponent;
  * anything else raises UnsupportedTwistedForm.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property, lru_cache
from typing import Iterable, Mapping, Sequence

from zipchow.coeffpoly import ParamPoly
from zipchow.rootweyl import (
    CartanComponent,
    Root,
    RootDatum,
    WeylElt,
    enumerate_weyl,
    longest_element,
    min_coset_reps,
    parabolic_elements,
    positive_roots_of_subset,
)


class NonDominantCocharacter(ValueError):
    """The cocharacter pairs negatively with a simple root."""


class UnsupportedTwistedForm(Exception):
    """gamma(w) involves a twisted component with no closed form here."""


class NotInIW(ValueError):
    """The element is not minimal in its W_I-coset."""

    def __init__(self, element: WeylElt, corrected: WeylElt):
        self.element = element
        self.corrected = corrected
        super().__init__(
            f"element {element.word_string()} is not minimal in its coset; "
            f"use {corrected.word_string()}"
        )


def _dot(u: Sequence, v: Sequence):
    return sum(a * b for a, b in zip(u, v))


@lru_cache(maxsize=None)
def _pm_simple_index(datum: RootDatum) -> Mapping[Root, int]:
    table: dict[Root, int] = {}
    for label in datum.simple_labels:
        alpha = datum.simple_root(label)
        table[alpha] = label
        table[tuple(-c for c in alpha)] = label
    return table


@dataclass(frozen=True)
class ZipDatum:
    datum: RootDatum
    mu: tuple
    I: frozenset
    z: WeylElt
    I_circ: frozenset
    J: frozenset
    d: int
    # Optional explicit assignment w -> I_w as a sorted tuple of
    # (WeylElt, frozenset) pairs.  The generic fixpoint below sees only
    # the reflection-level action of sigma_w; families whose descended
    # Levi types are finer than that carry them here in closed form.
    type_overrides: tuple = None

    @cached_property
    def coset_reps(self) -> tuple[WeylElt, ...]:
        """The transversal ^I W, sorted by (length, reduced word)."""
        return min_coset_reps(self.datum, self.I)

    @cached_property
    def parabolic_circ(self) -> tuple[WeylElt, ...]:
        return parabolic_elements(self.datum, self.I_circ)

    @cached_property
    def positive_roots_circ(self) -> tuple[Root, ...]:
        return positive_roots_of_subset(self.datum, self.I_circ)

    @cached_property
    def longest_circ(self) -> WeylElt:
        return longest_element(self.datum, self.I_circ)

    def sigma_root(self, w: WeylElt, root: Root) -> Root:
        return w.apply_root(self.datum.frobenius_root(self.z.apply_root(root)))

    def minimal_rep(self, w: WeylElt) -> WeylElt:
        """Strip left descents in I to reach the coset representative."""
        changed = True
        while changed:
            changed = False
            for s in sorted(self.I):
                if w.is_left_descent(s):
                    w = self.datum.simple_reflection(s) * w
                    changed = True
                    break
        return w

    def require_min_rep(self, w: WeylElt) -> WeylElt:
        corrected = self.minimal_rep(w)
        if corrected != w:
            raise NotInIW(w, corrected)
        return w

    def element_by_length_index(self, length: int, index: int) -> WeylElt:
        """The index-th transversal element of the given length (0-based,
        in (length, word) order)."""
        matches = [w for w in self.coset_reps if w.length == length]
        if not 0 <= index < len(matches):
            raise ValueError(
                f"no transversal element of length {length} at index {index}"
                f" (have {len(matches)})"
            )
        return matches[index]

    def twist_map(self, w: WeylElt) -> dict[int, int]:
        """The greatest subset K of I on which sigma_w restricts to a
        bijection of simple reflections (matching at the reflection
        level, so either sign of the root counts), with its action."""
        table = _pm_simple_index(self.datum)
        current = set(self.I)
        while True:
            image = {}
            for s in current:
                t = table.get(self.sigma_root(w, self.datum.simple_root(s)))
                if t is not None and t in current:
                    image[s] = t
            if set(image) == current:
                mapped = set(image.values())
                if mapped != current:
                    raise AssertionError(
                        "sigma_w is not a bijection on the fixpoint subset"
                    )
                return image
            current = set(image)

    @cached_property
    def _type_table(self):
        if self.type_overrides is None:
            return None
        return dict(self.type_overrides)

    def I_w(self, w: WeylElt) -> frozenset:
        """The type of w: the subset of I whose Levi descends along
        sigma_w.  Taken from the explicit table when the datum carries
        one, else computed as the reflection-level fixpoint."""
        if self._type_table is not None:
            return self._type_table[w]
        return frozenset(self.twist_map(w))

    def _sigma_action(self, w: WeylElt, subset: frozenset) -> dict[int, int]:
        """sigma_w restricted to a stable subset, as a label bijection."""
        table = _pm_simple_index(self.datum)
        action = {}
        for s in subset:
            t = table.get(self.sigma_root(w, self.datum.simple_root(s)))
            if t is None or t not in subset:
                raise AssertionError(
                    f"sigma_w does not stabilize the type subset at s{s}"
                )
            action[s] = t
        if set(action.values()) != set(subset):
            raise AssertionError("sigma_w is not a bijection on the type subset")
        return action

    def orbit_analysis(self, w: WeylElt) -> "OrbitReport":
        smap = self._sigma_action(w, self.I_w(w))
        comps = _dynkin_components(self.datum, frozenset(smap))
        comp_index = {c: i for i, c in enumerate(comps)}
        image = []
        for c in comps:
            img = frozenset(smap[s] for s in c)
            if img not in comp_index:
                raise AssertionError("sigma_w does not permute the components")
            image.append(comp_index[img])
        seen: set[int] = set()
        infos = []
        for start, comp in enumerate(comps):
            if start in seen:
                continue
            cycle = [start]
            seen.add(start)
            nxt = image[start]
            while nxt != start:
                cycle.append(nxt)
                seen.add(nxt)
                nxt = image[nxt]
            ell = len(cycle)
            tau = {}
            for s in comp:
                t = s
                for _ in range(ell):
                    t = smap[t]
                tau[s] = t
            if set(tau.values()) != set(comp):
                raise AssertionError("orbit return map is not a bijection")
            if all(tau[s] == s for s in comp):
                kind = "linear"
                contribution = _poincare_factor(self.datum, comp, ell)
            else:
                _require_reversed_chain(self.datum, comp, tau, w)
                kind = "unitary"
                contribution = _unitary_factor(len(comp), ell)
            infos.append(
                OrbitInfo(
                    labels=tuple(sorted(comp)),
                    orbit_length=ell,
                    size=len(comp),
                    kind=kind,
                    contribution=contribution,
                )
            )
        gamma = ParamPoly.one()
        for info in infos:
            gamma = gamma * info.contribution
        return OrbitReport(
            w=w,
            subset=tuple(sorted(smap)),
            orbits=tuple(infos),
            gamma=gamma,
        )

    def gamma(self, w: WeylElt) -> ParamPoly:
        return self.orbit_analysis(w).gamma


@dataclass(frozen=True)
class OrbitInfo:
    labels: tuple[int, ...]
    orbit_length: int
    size: int
    kind: str
    contribution: ParamPoly


@dataclass(frozen=True)
class OrbitReport:
    w: WeylElt
    subset: tuple[int, ...]
    orbits: tuple["OrbitInfo", ...]
    gamma: ParamPoly


def build_zipdatum(datum: RootDatum, mu: Sequence[int]) -> ZipDatum:
    """Assemble the zip datum of a dominant cocharacter (one weight per
    variable slot)."""
    weights = tuple(mu)
    if len(weights) != datum.nvars:
        raise ValueError(
            f"cocharacter has {len(weights)} weights for {datum.nvars} variables"
        )
    I = set()
    for label in datum.simple_labels:
        val = _dot(weights, datum.simple_root(label))
        if val < 0:
            raise NonDominantCocharacter(
                f"cocharacter pairs to {val} with simple root s{label}"
            )
        if val == 0:
            I.add(label)
    w0 = longest_element(datum)
    w0I = longest_element(datum, I)
    z = w0I * w0
    table = _pm_simple_index(datum)
    # z itself throws the simple roots of I out of the parabolic in
    # general (first seen for GL_n with an asymmetric weight); its
    # inverse always lands on simple roots, and both agree whenever z
    # is an involution, which covers every other family here.
    z_inv = z.inverse()
    I_circ = set()
    for s in I:
        t = table.get(z_inv.apply_root(datum.simple_root(s)))
        if t is None:
            raise AssertionError("z does not carry I to a set of simple roots")
        I_circ.add(t)
    if len(I_circ) != len(I):
        raise AssertionError("z is not injective on the simple roots of I")
    J = frozenset(datum.frobenius_label(t) for t in I_circ)
    d = len(datum.positive_roots) - len(positive_roots_of_subset(datum, I))
    return ZipDatum(
        datum=datum,
        mu=weights,
        I=frozenset(I),
        z=z,
        I_circ=frozenset(I_circ),
        J=J,
        d=d,
    )


def type_of_w(Z: ZipDatum, w: WeylElt) -> frozenset:
    """The type I_w of a transversal element (see ZipDatum.I_w)."""
    return Z.I_w(w)


def _dynkin_components(datum: RootDatum, labels: frozenset) -> list[frozenset]:
    """Connected components of the sub-diagram, sorted by smallest label."""
    remaining = set(labels)
    comps = []
    while remaining:
        seed = min(remaining)
        stack = [seed]
        comp = {seed}
        remaining.discard(seed)
        while stack:
            s = stack.pop()
            alpha = datum.simple_root(s)
            for t in list(remaining):
                if _dot(alpha, datum.simple_root(t)) != 0:
                    comp.add(t)
                    remaining.discard(t)
                    stack.append(t)
        comps.append(frozenset(comp))
    comps.sort(key=min)
    return comps


def _poincare_factor(datum: RootDatum, comp: frozenset, ell: int) -> ParamPoly:
    """Sum of p^(l * length) over the component's parabolic subgroup."""
    total = ParamPoly.zero()
    for v in parabolic_elements(datum, sorted(comp)):
        total = total + ParamPoly.p(ell * v.length)
    return total


@lru_cache(maxsize=None)
def _unitary_factor(m: int, ell: int) -> ParamPoly:
    """Orbit sum over S_{m+1} under conjugation by the longest element:
    a fixed permutation contributes p^(l*length), a flipped pair
    contributes p^(2*l*length) once."""
    sym = RootDatum((CartanComponent("A", m + 1),))
    w0 = longest_element(sym)
    counted: set[tuple[int, ...]] = set()
    total = ParamPoly.zero()
    for pi in enumerate_weyl(sym):
        if pi.images in counted:
            continue
        flipped = w0 * pi * w0
        if flipped == pi:
            total = total + ParamPoly.p(ell * pi.length)
        else:
            counted.add(flipped.images)
            total = total + ParamPoly.p(2 * ell * pi.length)
    return total


def _require_reversed_chain(
    datum: RootDatum, comp: frozenset, tau: dict[int, int], w: WeylElt
) -> None:
    """The twisted case is only evaluated for an equal-length chain
    reversed end to end; reject anything else."""
    labels = sorted(comp)
    norms = {_dot(datum.simple_root(s), datum.simple_root(s)) for s in labels}
    describe = (
        f"w={w.word_string()}, component {labels}, "
        f"return map {dict(sorted(tau.items()))}"
    )
    if len(norms) != 1:
        raise UnsupportedTwistedForm(
            f"twisted component has roots of unequal length: {describe}"
        )
    adjacency = {
        s: [
            t
            for t in labels
            if t != s and _dot(datum.simple_root(s), datum.simple_root(t)) != 0
        ]
        for s in labels
    }
    if any(len(nbrs) > 2 for nbrs in adjacency.values()):
        raise UnsupportedTwistedForm(
            f"twisted component is not a chain: {describe}"
        )
    ends = [s for s in labels if len(adjacency[s]) <= 1]
    if len(ends) != 2:
        raise UnsupportedTwistedForm(
            f"twisted component is not a chain: {describe}"
        )
    path = [min(ends)]
    while len(path) < len(labels):
        nxt = [t for t in adjacency[path[-1]] if t not in path]
        path.append(nxt[0])
    if any(tau[path[i]] != path[len(path) - 1 - i] for i in range(len(path))):
        raise UnsupportedTwistedForm(
            f"twist is neither trivial nor the chain reversal: {describe}"
        )


def siegel_frame_element(datum: RootDatum, f: int) -> WeylElt:
    """The distinguished length-filtered representatives u_f of the
    symplectic transversal: u_g equals z and u_0 is the longest simple
    generator; explicitly, as a signed permutation,

        u_f(i) = -(g+1-i)  for i <= f,
        u_f(f+1) = 1,
        u_f(i) = -(g+2-i)  for i > f+1.
    """
    g = datum.nvars
    if not 0 <= f <= g:
        raise ValueError(f"f must lie in 0..{g}")
    images = []
    for i in range(1, g + 1):
        if i <= f:
            images.append(-(g + 1 - i))
        elif i == f + 1:
            images.append(1)
        else:
            images.append(-(g + 2 - i))
    return WeylElt(datum, tuple(images))
