"""Exact polynomial arithmetic over Q with a formal parameter p.

Three layers live here:

* ParamPoly -- polynomials in the single symbol p with rational
  coefficients.  These are the scalars of the theory: every cycle class
  has ParamPoly coefficients because the prime is kept symbolic.
* MultiPoly -- sparse multivariate polynomials over Q[p] in a fixed
  ordered set of variables (a VarSpace).  Internally a term dict maps
  flat exponent keys (p_exp, e_1, ..., e_n) to nonzero rationals, so p
  is just slot 0 and all heavy lifting runs through zipchow.kernels.
* TensorPoly -- an element of S (x) S for S the MultiPoly ring of a
  base space: a MultiPoly over the doubled space whose first n slots
  are the Left factor (names x...) and last n slots the Right factor
  (same names with the leading "x" turned into "y").

Everything is exact; division is exact division and raises
NotDivisible when the quotient does not exist.  Rendering and parsing
use a canonical ASCII grammar ("^" for powers, "*" for products,
coefficients like "(p^2-1)/4"); the parser additionally accepts the
unicode minus sign.
"""

from __future__ import annotations

import fractions
import math
import re
from dataclasses import dataclass
from functools import cached_property, lru_cache
from typing import Iterable, Mapping, Sequence

from zipchow import kernels
from zipchow.rationals import QQ, QQ_ONE, QQ_ZERO, rational_to_string

_SCALAR_TYPES = (int, fractions.Fraction, type(QQ_ZERO))


class NotDivisible(ArithmeticError):
    """Exact division left a nonzero remainder."""


# ---------------------------------------------------------------------------
# ParamPoly: Q[p]


class ParamPoly:
    """Polynomial in the formal prime p with rational coefficients.

    coeffs maps p-exponents to nonzero rationals.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Mapping[int, object] | None = None):
        clean = {}
        if coeffs:
            for k, c in coeffs.items():
                q = c if isinstance(c, type(QQ_ZERO)) else QQ(c)
                if q:
                    clean[int(k)] = q
        self.coeffs = clean

    @classmethod
    def const(cls, value) -> "ParamPoly":
        return cls({0: QQ(value)})

    @classmethod
    def zero(cls) -> "ParamPoly":
        return cls()

    @classmethod
    def one(cls) -> "ParamPoly":
        return cls({0: QQ_ONE})

    @classmethod
    def p(cls, exponent: int = 1) -> "ParamPoly":
        return cls({exponent: QQ_ONE})

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_one(self) -> bool:
        return self.coeffs == {0: QQ_ONE}

    def degree(self) -> int:
        """Degree in p; the zero polynomial has degree -1."""
        return max(self.coeffs) if self.coeffs else -1

    @staticmethod
    def _coerce(other) -> "ParamPoly | None":
        if isinstance(other, ParamPoly):
            return other
        if isinstance(other, _SCALAR_TYPES):
            return ParamPoly({0: QQ(other)})
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        out = dict(self.coeffs)
        for k, c in o.coeffs.items():
            s = out.get(k, QQ_ZERO) + c
            if s:
                out[k] = s
            else:
                out.pop(k, None)
        return ParamPoly(out)

    __radd__ = __add__

    def __neg__(self):
        return ParamPoly({k: -c for k, c in self.coeffs.items()})

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        out: dict[int, object] = {}
        for ka, ca in self.coeffs.items():
            for kb, cb in o.coeffs.items():
                k = ka + kb
                s = out.get(k, QQ_ZERO) + ca * cb
                if s:
                    out[k] = s
                else:
                    out.pop(k, None)
        return ParamPoly(out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative power of a polynomial")
        result = ParamPoly.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self.coeffs == o.coeffs

    def __hash__(self):
        return hash(frozenset(self.coeffs.items()))

    def divide_exact(self, other: "ParamPoly") -> "ParamPoly":
        o = self._coerce(other)
        if o is None or o.is_zero():
            raise ZeroDivisionError("division of ParamPoly by zero")
        dg = max(o.coeffs)
        lead = o.coeffs[dg]
        rem = dict(self.coeffs)
        quo: dict[int, object] = {}
        while rem:
            dr = max(rem)
            if dr < dg:
                raise NotDivisible("nonzero remainder in Q[p] division")
            c = rem[dr] / lead
            quo[dr - dg] = c
            for k, v in o.coeffs.items():
                kk = k + dr - dg
                s = rem.get(kk, QQ_ZERO) - c * v
                if s:
                    rem[kk] = s
                else:
                    rem.pop(kk, None)
        return ParamPoly(quo)

    def evaluate(self, p0):
        """Value at the rational p0."""
        q0 = QQ(p0)
        total = QQ_ZERO
        for k, c in self.coeffs.items():
            total += c * q0**k
        return total

    def render(self) -> str:
        return _param_string(self.coeffs, embed=False)

    def __str__(self) -> str:
        return self.render()

    def __repr__(self) -> str:
        return "ParamPoly(%s)" % self.render()


def _param_pieces(coeffs: Mapping[int, object]) -> tuple[list[str], int]:
    """Integer-numerator monomial strings (descending in p) and the lcm
    denominator they were scaled by."""
    lcd = 1
    for c in coeffs.values():
        lcd = lcd * c.denominator // math.gcd(lcd, int(c.denominator))
    pieces = []
    for k in sorted(coeffs, reverse=True):
        a = coeffs[k] * lcd
        a_int = int(a.numerator)
        if k == 0:
            pieces.append(str(a_int))
            continue
        core = "p" if k == 1 else "p^%d" % k
        if a_int == 1:
            pieces.append(core)
        elif a_int == -1:
            pieces.append("-" + core)
        else:
            pieces.append("%d*%s" % (a_int, core))
    return pieces, lcd


def _param_string(coeffs: Mapping[int, object], embed: bool) -> str:
    """Canonical string for an element of Q[p].

    With embed=True the result is safe to prefix to "*monomial": a
    multi-term numerator gets parentheses and an all-negative numerator
    is rendered as a leading minus on a parenthesized positive part.
    """
    if not coeffs:
        return "0"
    negate = all(c < 0 for c in coeffs.values()) and len(coeffs) > 1
    work = {k: -c for k, c in coeffs.items()} if negate else coeffs
    pieces, lcd = _param_pieces(work)
    joined = pieces[0]
    for piece in pieces[1:]:
        joined += piece if piece.startswith("-") else "+" + piece
    if len(pieces) > 1 and (embed or lcd != 1 or negate):
        joined = "(" + joined + ")"
    if negate:
        joined = "-" + joined
    if lcd != 1:
        joined = joined + "/%d" % lcd
    return joined


# ---------------------------------------------------------------------------
# Variable spaces


@dataclass(frozen=True)
class VarSpace:
    """Ordered tuple of variable names; identity of a polynomial ring."""

    names: tuple[str, ...]

    def __post_init__(self):
        if len(set(self.names)) != len(self.names):
            raise ValueError("duplicate variable names")
        for name in self.names:
            if name == "p" or not re.fullmatch(r"[A-Za-z_][A-Za-z_0-9]*", name):
                raise ValueError("bad variable name %r" % name)

    @cached_property
    def _index(self) -> dict[str, int]:
        return {name: i for i, name in enumerate(self.names)}

    def index(self, name: str) -> int:
        """0-based position of a variable."""
        try:
            return self._index[name]
        except KeyError:
            raise KeyError("unknown variable %r" % name) from None

    def __len__(self) -> int:
        return len(self.names)

    def __contains__(self, name: str) -> bool:
        return name in self._index


@lru_cache(maxsize=None)
def _doubled_space(base: VarSpace) -> VarSpace:
    for name in base.names:
        if not name.startswith("x"):
            raise ValueError("tensor base variables must start with 'x'")
    return VarSpace(base.names + tuple("y" + n[1:] for n in base.names))


# ---------------------------------------------------------------------------
# MultiPoly


class MultiPoly:
    """Sparse polynomial over Q[p] in the variables of a VarSpace.

    terms maps flat keys (p_exp, e_1, ..., e_n) to nonzero rationals.
    Instances are treated as immutable: no method mutates terms.
    """

    __slots__ = ("space", "terms")

    def __init__(self, space: VarSpace, terms: dict):
        self.space = space
        self.terms = terms

    def _new(self, terms: dict) -> "MultiPoly":
        return MultiPoly(self.space, terms)

    # -- constructors ------------------------------------------------------

    @classmethod
    def zero(cls, space: VarSpace) -> "MultiPoly":
        return cls(space, {})

    @classmethod
    def const(cls, space: VarSpace, value) -> "MultiPoly":
        if isinstance(value, ParamPoly):
            n = len(space)
            return cls(space, {(k,) + (0,) * n: c for k, c in value.coeffs.items()})
        q = QQ(value)
        if not q:
            return cls(space, {})
        return cls(space, {(0,) * (len(space) + 1): q})

    @classmethod
    def one(cls, space: VarSpace) -> "MultiPoly":
        return cls.const(space, 1)

    @classmethod
    def variable(cls, space: VarSpace, name: str) -> "MultiPoly":
        key = [0] * (len(space) + 1)
        key[space.index(name) + 1] = 1
        return cls(space, {tuple(key): QQ_ONE})

    @classmethod
    def p(cls, space: VarSpace) -> "MultiPoly":
        return cls(space, {(1,) + (0,) * len(space): QQ_ONE})

    @classmethod
    def monomial(cls, space: VarSpace, expo: Sequence[int], coeff=1, p_exp: int = 0) -> "MultiPoly":
        if len(expo) != len(space):
            raise ValueError("exponent length does not match space")
        q = QQ(coeff)
        if not q:
            return cls(space, {})
        return cls(space, {(p_exp,) + tuple(expo): q})

    # -- basic queries -----------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def n_terms(self) -> int:
        return len(self.terms)

    def var_degree(self) -> int:
        """Total degree in the variables (p excluded); -1 for zero."""
        if not self.terms:
            return -1
        return max(sum(k[1:]) for k in self.terms)

    def p_degree(self) -> int:
        if not self.terms:
            return -1
        return max(k[0] for k in self.terms)

    def homogeneous_degree(self) -> int | None:
        """Common variable degree of all terms, or None if mixed/zero."""
        degs = {sum(k[1:]) for k in self.terms}
        return degs.pop() if len(degs) == 1 else None

    def homogeneous_components(self) -> dict[int, "MultiPoly"]:
        comps: dict[int, dict] = {}
        for k, c in self.terms.items():
            comps.setdefault(sum(k[1:]), {})[k] = c
        return {d: self._new(t) for d, t in sorted(comps.items())}

    def coeff_map(self) -> dict[tuple[int, ...], ParamPoly]:
        """View as {variable exponent vector: ParamPoly coefficient}."""
        out: dict[tuple[int, ...], dict] = {}
        for k, c in self.terms.items():
            out.setdefault(k[1:], {})[k[0]] = c
        return {e: ParamPoly(d) for e, d in out.items()}

    def coefficient(self, expo: Sequence[int]) -> ParamPoly:
        """ParamPoly coefficient of the given variable monomial."""
        e = tuple(expo)
        found = {k[0]: c for k, c in self.terms.items() if k[1:] == e}
        return ParamPoly(found)

    # -- ring operations ---------------------------------------------------

    def _check_compat(self, other: "MultiPoly"):
        if type(other) is not type(self) or other.space != self.space:
            raise ValueError("variable-space mismatch between operands")

    def __add__(self, other):
        if isinstance(other, MultiPoly):
            self._check_compat(other)
            return self._new(kernels.add_terms(self.terms, other.terms))
        if isinstance(other, _SCALAR_TYPES) or isinstance(other, ParamPoly):
            return self + self._embed_scalar(other)
        return NotImplemented

    __radd__ = __add__

    def __sub__(self, other):
        if isinstance(other, MultiPoly):
            self._check_compat(other)
            return self._new(kernels.sub_terms(self.terms, other.terms))
        if isinstance(other, _SCALAR_TYPES) or isinstance(other, ParamPoly):
            return self - self._embed_scalar(other)
        return NotImplemented

    def __rsub__(self, other):
        return (-self) + other

    def __neg__(self):
        return self._new(kernels.neg_terms(self.terms))

    def _embed_scalar(self, value) -> "MultiPoly":
        n = len(self.space)
        if isinstance(value, ParamPoly):
            terms = {(k,) + (0,) * n: c for k, c in value.coeffs.items()}
        else:
            q = QQ(value)
            terms = {(0,) * (n + 1): q} if q else {}
        return self._new(terms)

    def __mul__(self, other):
        if isinstance(other, MultiPoly):
            self._check_compat(other)
            return self._new(kernels.mul_terms(self.terms, other.terms))
        if isinstance(other, _SCALAR_TYPES):
            return self._new(kernels.scale_terms(self.terms, QQ(other)))
        if isinstance(other, ParamPoly):
            return self._new(kernels.mul_terms(self.terms, self._embed_scalar(other).terms))
        return NotImplemented

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative power of a polynomial")
        result = self._new(self._embed_scalar(1).terms)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, MultiPoly):
            return (
                type(other) is type(self)
                and self.space == other.space
                and self.terms == other.terms
            )
        if isinstance(other, _SCALAR_TYPES) or isinstance(other, ParamPoly):
            return self.terms == self._embed_scalar(other).terms
        return NotImplemented

    __hash__ = None  # mutable-ish container semantics

    # -- substitution ------------------------------------------------------

    def map_slots(
        self,
        actions: Sequence[tuple[int, int, int]],
        space_out: VarSpace | None = None,
    ) -> "MultiPoly":
        """Signed monomial substitution, one action per variable slot.

        actions[i] = (target, sign, p_shift) sends variable i (0-based)
        to sign * p**p_shift * (variable target of the output space).
        """
        out_space = space_out or self.space
        if len(actions) != len(self.space):
            raise ValueError("need one action per variable")
        target = (0,) + tuple(a[0] + 1 for a in actions)
        sign = (1,) + tuple(a[1] for a in actions)
        pshift = (0,) + tuple(a[2] for a in actions)
        terms = kernels.map_terms(self.terms, target, sign, pshift, len(out_space) + 1)
        return MultiPoly(out_space, terms)

    def substitute_linear(
        self,
        images: Mapping[str, "MultiPoly"],
        space_out: VarSpace | None = None,
    ) -> "MultiPoly":
        """Substitute a homogeneous degree-1 image for every variable.

        Images may carry p factors (keys of any p-exponent) but must be
        degree 1 in the variables.  p itself passes through unchanged.
        """
        imgs = []
        for name in self.space.names:
            if name not in images:
                raise KeyError("no image for variable %r" % name)
            imgs.append(images[name])
        out_space = space_out
        for im in imgs:
            if out_space is None:
                out_space = im.space
            elif im.space != out_space:
                raise ValueError("variable-space mismatch among images")
            if not im.is_zero() and im.homogeneous_degree() != 1:
                raise ValueError("image of %r is not homogeneous of degree 1" % name)
        if out_space is None:
            out_space = self.space

        # Fast path: every image is a single +/- p^k * variable.
        simple = []
        for im in imgs:
            if len(im.terms) != 1:
                simple = None
                break
            (key, c), = im.terms.items()
            if c != QQ_ONE and c != -QQ_ONE:
                simple = None
                break
            slot = next(i for i, e in enumerate(key) if i > 0 and e == 1)
            simple.append((slot - 1, 1 if c == QQ_ONE else -1, key[0]))
        if simple is not None:
            return self.map_slots(simple, out_space)

        n_out = len(out_space)
        pow_cache: list[dict[int, dict]] = [{} for _ in imgs]
        total: dict = {}
        for k, c in self.terms.items():
            acc = {(k[0],) + (0,) * n_out: c}
            for i, e in enumerate(k[1:]):
                if not e:
                    continue
                pw = pow_cache[i].get(e)
                if pw is None:
                    pw = imgs[i].terms
                    for _ in range(e - 1):
                        pw = kernels.mul_terms(pw, imgs[i].terms)
                    pow_cache[i][e] = pw
                acc = kernels.mul_terms(acc, pw)
            total = kernels.add_terms(total, acc)
        return MultiPoly(out_space, total)

    def evaluate_p(self, p0) -> "MultiPoly":
        """Specialize the parameter p to a rational value."""
        q0 = QQ(p0)
        out: dict = {}
        for k, c in self.terms.items():
            key = (0,) + k[1:]
            v = c * q0 ** k[0]
            s = out.get(key, QQ_ZERO) + v
            if s:
                out[key] = s
            else:
                out.pop(key, None)
        return self._new(out)

    # -- exact division ----------------------------------------------------

    def divide_exact(self, other: "MultiPoly") -> "MultiPoly":
        """Exact quotient self/other; raises NotDivisible otherwise."""
        self._check_compat(other)
        if other.is_zero():
            raise ZeroDivisionError("division of MultiPoly by zero")
        if self.is_zero():
            return self._new({})
        lin = _linear_divisor(other.terms)
        if lin is not None:
            return self._new(_divide_linear(self.terms, *lin))
        return self._new(_divide_generic(self.terms, other.terms))

    # -- rendering ---------------------------------------------------------

    def render(self) -> str:
        return _render_terms(self.terms, self.space.names)

    def __str__(self) -> str:
        return self.render()

    def __repr__(self) -> str:
        return "%s(%s)" % (type(self).__name__, self.render())

    def to_json(self) -> list:
        return _terms_to_json(self.terms)

    @classmethod
    def from_json(cls, space: VarSpace, data: list) -> "MultiPoly":
        return cls(space, _terms_from_json(data, len(space)))

    @classmethod
    def parse(cls, space: VarSpace, text: str) -> "MultiPoly":
        return cls(space, _parse_terms(text, space.names))


# ---------------------------------------------------------------------------
# TensorPoly


class TensorPoly(MultiPoly):
    """Element of S (x) S over the MultiPoly ring S of a base space.

    Stored as a MultiPoly over the doubled space: slots 1..n are the
    Left tensor factor, slots n+1..2n the Right one.  Right variables
    render with the leading "x" of their name replaced by "y".
    """

    __slots__ = ("base",)

    def __init__(self, base: VarSpace, terms: dict):
        super().__init__(_doubled_space(base), terms)
        self.base = base

    def _new(self, terms: dict) -> "TensorPoly":
        return TensorPoly(self.base, terms)

    @classmethod
    def zero(cls, base: VarSpace) -> "TensorPoly":
        return cls(base, {})

    @classmethod
    def const(cls, base: VarSpace, value) -> "TensorPoly":
        n2 = 2 * len(base)
        if isinstance(value, ParamPoly):
            return cls(base, {(k,) + (0,) * n2: c for k, c in value.coeffs.items()})
        q = QQ(value)
        return cls(base, {(0,) * (n2 + 1): q} if q else {})

    @classmethod
    def one(cls, base: VarSpace) -> "TensorPoly":
        return cls.const(base, 1)

    @classmethod
    def left(cls, f: MultiPoly) -> "TensorPoly":
        """f (x) 1."""
        n = len(f.space)
        pad = (0,) * n
        return cls(f.space, {k + pad: c for k, c in f.terms.items()})

    @classmethod
    def right(cls, f: MultiPoly) -> "TensorPoly":
        """1 (x) f."""
        n = len(f.space)
        return cls(f.space, {(k[0],) + (0,) * n + k[1:]: c for k, c in f.terms.items()})

    @classmethod
    def of(cls, f: MultiPoly, g: MultiPoly) -> "TensorPoly":
        """f (x) g."""
        if f.space != g.space:
            raise ValueError("variable-space mismatch between tensor factors")
        return cls.left(f) * cls.right(g)

    @classmethod
    def parse(cls, base: VarSpace, text: str) -> "TensorPoly":
        names = _doubled_space(base).names
        return cls(base, _parse_terms(text, names))

    @classmethod
    def from_json(cls, base: VarSpace, data: list) -> "TensorPoly":
        return cls(base, _terms_from_json(data, 2 * len(base)))

    def apply_left(self, actions: Sequence[tuple[int, int, int]]) -> "TensorPoly":
        """map_slots on the Left factor only (actions target base slots)."""
        n = len(self.base)
        full = list(actions) + [(n + i, 1, 0) for i in range(n)]
        return self._new(self.map_slots(full).terms)

    def apply_right(self, actions: Sequence[tuple[int, int, int]]) -> "TensorPoly":
        """map_slots on the Right factor only (actions target base slots)."""
        n = len(self.base)
        full = [(i, 1, 0) for i in range(n)]
        full += [(n + a[0], a[1], a[2]) for a in actions]
        return self._new(self.map_slots(full).terms)

    def contract(
        self,
        left: Sequence[tuple[int, int, int]],
        right: Sequence[tuple[int, int, int]],
    ) -> MultiPoly:
        """Multiply the factors together after mapping each into the
        base space: Left slot i by left[i], Right slot i by right[i]."""
        n = len(self.base)
        if len(left) != n or len(right) != n:
            raise ValueError("need one action per base variable on each side")
        target = (0,) + tuple(a[0] + 1 for a in left) + tuple(a[0] + 1 for a in right)
        sign = (1,) + tuple(a[1] for a in left) + tuple(a[1] for a in right)
        pshift = (0,) + tuple(a[2] for a in left) + tuple(a[2] for a in right)
        terms = kernels.map_terms(self.terms, target, sign, pshift, n + 1)
        return MultiPoly(self.base, terms)


def identity_actions(n: int) -> list[tuple[int, int, int]]:
    """Slot actions of the identity substitution."""
    return [(i, 1, 0) for i in range(n)]


# ---------------------------------------------------------------------------
# division helpers (flat term dicts)


def _linear_divisor(terms: dict):
    """Recognize c_a*x_a (+ c_b*x_b) with p-free rational coefficients;
    return (slot_a, c_a, slot_b, c_b) with slots 1-based, else None."""
    if not 1 <= len(terms) <= 2:
        return None
    found = []
    for k, c in terms.items():
        if k[0] != 0 or sum(k[1:]) != 1:
            return None
        slot = next(i for i, e in enumerate(k) if i > 0 and e == 1)
        found.append((slot, c))
    found.sort()
    if len(found) == 1:
        return (found[0][0], found[0][1], None, None)
    return (found[0][0], found[0][1], found[1][0], found[1][1])


def _divide_linear(terms: dict, sa: int, ca, sb, cb) -> dict:
    """Exact division by ca*x_{sa} + cb*x_{sb} via synthetic (Horner)
    division in the variable x_{sa}."""
    if sb is None:
        out = {}
        for k, c in terms.items():
            if k[sa] == 0:
                raise NotDivisible("monomial divisor does not divide a term")
            key = k[:sa] + (k[sa] - 1,) + k[sa + 1 :]
            out[key] = c / ca
        return out

    buckets: dict[int, dict] = {}
    for k, c in terms.items():
        stripped = k[:sa] + (0,) + k[sa + 1 :]
        buckets.setdefault(k[sa], {})[stripped] = c
    top = max(buckets)
    if top == 0:
        raise NotDivisible("dividend has no occurrence of the pivot variable")
    # g = ca*(x_a - t) with t = -(cb/ca)*x_b; multiply by t = shift sb, scale.
    t_scale = -cb / ca
    quotient: dict = {}
    h = buckets.get(top, {})
    for k in range(top - 1, -1, -1):
        for key, c in h.items():
            qkey = key[:sa] + (k,) + key[sa + 1 :]
            quotient[qkey] = c / ca
        th = {}
        for key, c in h.items():
            kk = key[:sb] + (key[sb] + 1,) + key[sb + 1 :]
            v = c * t_scale
            s = th.get(kk)
            th[kk] = v if s is None else s + v
        h = kernels.add_terms(buckets.get(k, {}), {kk: v for kk, v in th.items() if v})
    if h:
        raise NotDivisible("nonzero remainder in linear division")
    return quotient


def _grlex_key(key: tuple) -> tuple:
    return (sum(key), key)


def _divide_generic(f_terms: dict, g_terms: dict) -> dict:
    g_lead = max(g_terms, key=_grlex_key)
    g_c = g_terms[g_lead]
    rem = dict(f_terms)
    quo: dict = {}
    while rem:
        r_lead = max(rem, key=_grlex_key)
        diff = tuple(a - b for a, b in zip(r_lead, g_lead))
        if any(d < 0 for d in diff):
            raise NotDivisible("leading term not divisible")
        c = rem[r_lead] / g_c
        quo[diff] = c
        rem = kernels.sub_terms(rem, kernels.mul_terms(g_terms, {diff: c}))
    return quo


# ---------------------------------------------------------------------------
# canonical text form


def _render_terms(terms: dict, names: Sequence[str]) -> str:
    if not terms:
        return "0"
    groups: dict[tuple, dict] = {}
    for k, c in terms.items():
        groups.setdefault(k[1:], {})[k[0]] = c
    parts = []
    for expo in sorted(groups, key=lambda e: (sum(e), e), reverse=True):
        coeff = _param_string(groups[expo], embed=True)
        factors = []
        for name, e in zip(names, expo):
            if e == 1:
                factors.append(name)
            elif e:
                factors.append("%s^%d" % (name, e))
        mono = "*".join(factors)
        if not mono:
            parts.append(coeff)
        elif coeff == "1":
            parts.append(mono)
        elif coeff == "-1":
            parts.append("-" + mono)
        else:
            parts.append(coeff + "*" + mono)
    text = parts[0]
    for part in parts[1:]:
        if part.startswith("-"):
            text += " - " + part[1:]
        else:
            text += " + " + part
    return text


_TOKEN_RE = re.compile(
    r"\s*(?:(?P<int>\d+)|(?P<name>[A-Za-z_][A-Za-z_0-9]*)|(?P<op>\*\*|[%s]))"
    % re.escape("-+*/^()")
)


def _tokenize(text: str) -> list:
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            if text[pos:].strip() == "":
                break
            raise ValueError("cannot tokenize %r" % text[pos : pos + 12])
        pos = m.end()
        if m.group("int") is not None:
            tokens.append(("int", int(m.group("int"))))
        elif m.group("name") is not None:
            tokens.append(("name", m.group("name")))
        else:
            op = m.group("op")
            tokens.append(("op", "^" if op == "**" else op))
    return tokens


class _Parser:
    """Recursive-descent parser for the canonical polynomial grammar."""

    def __init__(self, tokens: list, names: Sequence[str]):
        self.tokens = tokens
        self.pos = 0
        self.names = {name: i for i, name in enumerate(names)}
        self.nvars = len(names)

    def peek(self):
        return self.tokens[self.pos] if self.pos < len(self.tokens) else None

    def take(self):
        tok = self.peek()
        if tok is None:
            raise ValueError("unexpected end of expression")
        self.pos += 1
        return tok

    def expect_op(self, op: str):
        tok = self.take()
        if tok != ("op", op):
            raise ValueError("expected %r, found %r" % (op, tok))

    def expr(self) -> dict:
        tok = self.peek()
        negate = False
        if tok == ("op", "-"):
            self.take()
            negate = True
        elif tok == ("op", "+"):
            self.take()
        acc = self.term()
        if negate:
            acc = kernels.neg_terms(acc)
        while True:
            tok = self.peek()
            if tok == ("op", "+"):
                self.take()
                acc = kernels.add_terms(acc, self.term())
            elif tok == ("op", "-"):
                self.take()
                acc = kernels.sub_terms(acc, self.term())
            else:
                return acc

    def term(self) -> dict:
        acc = self.factor()
        while True:
            tok = self.peek()
            if tok == ("op", "*"):
                self.take()
                acc = kernels.mul_terms(acc, self.factor())
            elif tok == ("op", "/"):
                self.take()
                acc = self._divide(acc, self.factor())
            else:
                return acc

    def _divide(self, num: dict, den: dict) -> dict:
        if not den:
            raise ValueError("division by zero in expression")
        if len(den) == 1:
            (key, c), = den.items()
            if not any(key):
                return kernels.scale_terms(num, QQ_ONE / c)
        return _divide_generic(num, den)

    def factor(self) -> dict:
        base = self.atom()
        tok = self.peek()
        if tok == ("op", "^"):
            self.take()
            etok = self.take()
            if etok[0] != "int":
                raise ValueError("exponent must be a nonnegative integer")
            n = etok[1]
            result = {(0,) * (self.nvars + 1): QQ_ONE}
            while n:
                if n & 1:
                    result = kernels.mul_terms(result, base)
                base = kernels.mul_terms(base, base)
                n >>= 1
            return result
        return base

    def atom(self) -> dict:
        tok = self.take()
        if tok[0] == "int":
            if tok[1] == 0:
                return {}
            return {(0,) * (self.nvars + 1): QQ(tok[1])}
        if tok[0] == "name":
            if tok[1] == "p":
                return {(1,) + (0,) * self.nvars: QQ_ONE}
            if tok[1] not in self.names:
                raise ValueError("unknown variable %r" % tok[1])
            key = [0] * (self.nvars + 1)
            key[self.names[tok[1]] + 1] = 1
            return {tuple(key): QQ_ONE}
        if tok == ("op", "("):
            inner = self.expr()
            self.expect_op(")")
            return inner
        raise ValueError("unexpected token %r" % (tok,))


def _parse_terms(text: str, names: Sequence[str]) -> dict:
    text = text.replace("−", "-")
    parser = _Parser(_tokenize(text), names)
    terms = parser.expr()
    if parser.peek() is not None:
        raise ValueError("trailing input after expression: %r" % (parser.peek(),))
    return terms


# ---------------------------------------------------------------------------
# JSON form


def _terms_to_json(terms: dict) -> list:
    groups: dict[tuple, dict] = {}
    for k, c in terms.items():
        groups.setdefault(k[1:], {})[k[0]] = c
    out = []
    for expo in sorted(groups, key=lambda e: (sum(e), e), reverse=True):
        coeff = [
            [k, rational_to_string(groups[expo][k])]
            for k in sorted(groups[expo], reverse=True)
        ]
        out.append({"coeff": coeff, "expo": list(expo)})
    return out


def _terms_from_json(data: list, nvars: int) -> dict:
    terms: dict = {}
    for entry in data:
        expo = tuple(int(e) for e in entry["expo"])
        if len(expo) != nvars:
            raise ValueError("exponent length does not match space")
        for k, cs in entry["coeff"]:
            q = QQ(cs)
            if q:
                terms[(int(k),) + expo] = q
    return terms
