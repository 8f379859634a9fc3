"""From Schubert classes to stratum classes, plus finite models at a
numeric prime.

The symbolic pipeline for a transversal element w:

  1. [Brh_w] by divided differences of the diagonal;
  2. flag-stratum class psi^*([Brh_w]), where psi^* maps the Left
     tensor factor through the frame element z and the Right factor
     through p times the Frobenius permutation;
  3. pushforward pi_* along the I-circ flag fibration, computed as the
     alternating sum over W_{I-circ} divided by the product of the
     positive roots of I-circ (equivalently the divided-difference
     composite of the longest element, which the verifier checks);
  4. the stratum class gamma(w) * pi_*(psi^*[Brh_w]).

The finite model fixes a numeric prime p0, forms S/(S^W_+) with graded
dimensions certified to sum to |W| and vanish past the top degree, cuts
out the W_{I-circ}-invariant subquotient whose graded dimensions match
the transversal by length, expands classes over the stratum basis with
an exact residual check, evaluates the duality pairings, and
normalizes the Hodge class by positivity of its stratum expansion.
"""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Mapping, Sequence

from zipchow.coeffpoly import MultiPoly, ParamPoly, TensorPoly
from zipchow.rationals import QQ, QQ_ZERO, rational_to_string
from zipchow.rootweyl import WeylElt, enumerate_weyl, root_poly
from zipchow.schubert import schubert_class
from zipchow.zipdatum import UnsupportedTwistedForm, ZipDatum


class NonZeroResidual(ArithmeticError):
    """A class failed to lie in the span of the stratum basis."""


class AmbiguousHodgeClass(Exception):
    """No line of degree-one classes singles out a Hodge generator."""


def psi_star(Z: ZipDatum, c: TensorPoly) -> MultiPoly:
    """Pull back along the zip section: Left factor through z, Right
    factor through p times the Frobenius permutation of slots."""
    left = Z.z.poly_action()
    right = [(Z.datum.frobenius_var(i), 1, 1) for i in range(Z.datum.nvars)]
    return c.contract(left, right)


def pi_star(Z: ZipDatum, f: MultiPoly) -> MultiPoly:
    """Pushforward along the I-circ flag fibration: alternating sum over
    W_{I-circ} divided by the positive roots of I-circ."""
    if not Z.I_circ:
        return f
    total = MultiPoly.zero(Z.datum.space)
    for v in Z.parabolic_circ:
        total = total + v.act(f) * v.sign()
    for root in Z.positive_roots_circ:
        total = total.divide_exact(root_poly(Z.datum, root))
    return total


@dataclass(frozen=True)
class CycleReport:
    """One transversal element's classes; gamma and zip_class are None
    when the twisted multiplicity has no supported closed form, with
    the reason recorded in error."""

    w: WeylElt
    length: int
    degree: int
    flag_class: MultiPoly
    gamma: ParamPoly | None
    zip_class: MultiPoly | None
    error: str | None = None

    def to_json(self, expansions: Mapping[int, Mapping[str, str]] | None = None) -> dict:
        data = {
            "w": self.w.word_string(),
            "length": self.length,
            "degree": self.degree,
            "flag_class": self.flag_class.render(),
            "gamma": None if self.gamma is None else self.gamma.render(),
            "zip_class": None if self.zip_class is None else self.zip_class.render(),
        }
        if self.error is not None:
            data["error"] = self.error
        if expansions is not None:
            data["expansions"] = {str(p0): dict(exp) for p0, exp in expansions.items()}
        return data


@lru_cache(maxsize=None)
def stratum_class(Z: ZipDatum, w: WeylElt) -> CycleReport:
    """The full pipeline for one transversal element."""
    Z.require_min_rep(w)
    flag = psi_star(Z, schubert_class(Z.datum, w))
    degree = Z.d - w.length
    assert flag.is_zero() or flag.homogeneous_degree() == len(
        Z.datum.positive_roots
    ) - w.length
    try:
        gamma = Z.gamma(w)
    except UnsupportedTwistedForm as exc:
        return CycleReport(
            w=w,
            length=w.length,
            degree=degree,
            flag_class=flag,
            gamma=None,
            zip_class=None,
            error=str(exc),
        )
    zclass = pi_star(Z, flag) * gamma
    assert zclass.is_zero() or zclass.homogeneous_degree() == degree
    return CycleReport(
        w=w,
        length=w.length,
        degree=degree,
        flag_class=flag,
        gamma=gamma,
        zip_class=zclass,
    )


def _thread_cap() -> int:
    raw = os.environ.get("ZIPCHOW_THREADS", "").strip()
    if not raw:
        return 1
    try:
        return max(1, int(raw))
    except ValueError:
        return 1


def cycle_classes(Z: ZipDatum, ws: Sequence[WeylElt] | None = None) -> list[CycleReport]:
    """Reports for the whole transversal (or the given representatives),
    in input order.  ZIPCHOW_THREADS caps worker threads."""
    if ws is None:
        ws = Z.coset_reps
    workers = min(_thread_cap(), len(ws)) if ws else 1
    if workers <= 1:
        return [stratum_class(Z, w) for w in ws]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(lambda w: stratum_class(Z, w), ws))


def _monomials(nvars: int, degree: int) -> list[tuple[int, ...]]:
    """Exponent tuples of the given total degree, lexicographically
    descending (matches the rendering order of leading terms)."""
    out: list[tuple[int, ...]] = []

    def rec(prefix: tuple[int, ...], remaining: int, slots: int) -> None:
        if slots == 1:
            out.append(prefix + (remaining,))
            return
        for e in range(remaining, -1, -1):
            rec(prefix + (e,), remaining - e, slots - 1)

    rec((), degree, nvars)
    return out


def _elementary_symmetric_polys(vars_: Sequence[MultiPoly], space) -> list[MultiPoly]:
    es = [MultiPoly.one(space)]
    for v in vars_:
        new = [es[0]]
        for i in range(1, len(es)):
            new.append(es[i] + es[i - 1] * v)
        new.append(es[-1] * v)
        es = new
    return es


def invariant_generators(Z_or_datum) -> list[MultiPoly]:
    """Fundamental invariants of W acting on S, componentwise: the
    elementary symmetric functions of the variables in type A, of their
    squares in types B/C, and of the squares plus the top product in
    type D."""
    datum = getattr(Z_or_datum, "datum", Z_or_datum)
    space = datum.space
    gens: list[MultiPoly] = []
    for c, comp in enumerate(datum.components):
        off = datum.offsets[c]
        xs = [MultiPoly.variable(space, space.names[off + i]) for i in range(comp.n)]
        if comp.letter == "A":
            es = _elementary_symmetric_polys(xs, space)
            gens.extend(es[1:])
            continue
        squares = [x * x for x in xs]
        es = _elementary_symmetric_polys(squares, space)
        if comp.letter == "D":
            gens.extend(es[1 : comp.n])
            prod = xs[0]
            for x in xs[1:]:
                prod = prod * x
            gens.append(prod)
        else:
            gens.extend(es[1:])
    return gens


def _reduce_row(pivots: dict[int, dict[int, QQ]], vec: Mapping[int, QQ]) -> dict:
    """Reduce a sparse row against reduced-echelon pivot rows."""
    vec = dict(vec)
    for col in sorted(vec, reverse=True):
        if col in vec and col in pivots:
            coeff = vec.pop(col)
            for c, q in pivots[col].items():
                if c == col:
                    continue
                nv = vec.get(c, QQ_ZERO) - coeff * q
                if nv:
                    vec[c] = nv
                else:
                    vec.pop(c, None)
    return vec


def _insert_row(pivots: dict[int, dict[int, QQ]], vec: Mapping[int, QQ]) -> int | None:
    """Insert a row, keeping reduced echelon form; return its pivot
    column, or None if it reduced to zero."""
    vec = _reduce_row(pivots, vec)
    if not vec:
        return None
    piv = max(vec)
    inv = 1 / vec[piv]
    row = {c: q * inv for c, q in vec.items()}
    for other in pivots.values():
        if piv in other:
            coeff = other.pop(piv)
            for c, q in row.items():
                if c == piv:
                    continue
                nv = other.get(c, QQ_ZERO) - coeff * q
                if nv:
                    other[c] = nv
                else:
                    other.pop(c, None)
    pivots[piv] = row
    return piv


class CoinvariantModel:
    """S/(S^W_+) at a numeric prime p0, together with the stratum basis
    of the invariant subquotient."""

    def __init__(self, Z: ZipDatum, p0: int):
        self.Z = Z
        self.datum = Z.datum
        self.p0 = int(p0)
        n = self.datum.nvars
        self.top = len(self.datum.positive_roots)
        self._monos: list[list[tuple[int, ...]]] = []
        self._index: list[dict[tuple[int, ...], int]] = []
        for k in range(self.top + 2):
            monos = _monomials(n, k)
            self._monos.append(monos)
            self._index.append({m: i for i, m in enumerate(monos)})
        self._pivots: list[dict[int, dict[int, QQ]]] = [
            {} for _ in range(self.top + 2)
        ]
        self._build_ideal()
        self.dimensions = [
            len(self._monos[k]) - len(self._pivots[k]) for k in range(self.top + 1)
        ]
        order = len(enumerate_weyl(self.datum))
        total = sum(self.dimensions)
        if total != order:
            raise AssertionError(
                f"coinvariant dimensions sum to {total}, expected |W| = {order}"
            )
        beyond = len(self._monos[self.top + 1]) - len(self._pivots[self.top + 1])
        if beyond != 0:
            raise AssertionError(
                f"coinvariant model does not vanish past degree {self.top}"
            )
        self.sub_dimensions = self._build_subquotient()
        self._class_nf: dict[int, tuple[list[WeylElt], list[dict[int, QQ]]]] = {}
        self._numeric_class: dict[WeylElt, MultiPoly] = {}

    def _build_ideal(self) -> None:
        gens = invariant_generators(self.datum)
        gen_terms = []
        for g in gens:
            deg = g.homogeneous_degree()
            assert deg is not None and deg >= 1
            terms = [(key[1:], coeff) for key, coeff in g.terms.items()]
            gen_terms.append((deg, terms))
        for k in range(1, self.top + 2):
            rows: list[dict[int, QQ]] = []
            index = self._index[k]
            for deg, terms in gen_terms:
                if deg > k:
                    continue
                for m in self._monos[k - deg]:
                    row: dict[int, QQ] = {}
                    for expo, coeff in terms:
                        col = index[tuple(a + b for a, b in zip(expo, m))]
                        row[col] = row.get(col, QQ_ZERO) + coeff
                    rows.append({c: q for c, q in row.items() if q})
            rows.sort(key=len)
            pivots = self._pivots[k]
            for row in rows:
                _insert_row(pivots, row)

    def _nf_terms(self, terms: Mapping, degree: int) -> dict[int, QQ]:
        index = self._index[degree]
        vec: dict[int, QQ] = {}
        for key, coeff in terms.items():
            if key[0] != 0:
                raise ValueError("normal form needs the prime evaluated first")
            col = index[key[1:]]
            vec[col] = vec.get(col, QQ_ZERO) + coeff
        return _reduce_row(self._pivots[degree], vec)

    def normal_form(self, f: MultiPoly) -> dict[int, QQ]:
        """Coordinates of a homogeneous class modulo the invariant ideal,
        as a sparse vector over the degree's monomial list."""
        f = f.evaluate_p(self.p0)
        if f.is_zero():
            return {}
        degree = f.homogeneous_degree()
        if degree is None:
            raise ValueError("normal form needs a homogeneous input")
        if degree > self.top:
            return {}
        return self._nf_terms(f.terms, degree)

    def _build_subquotient(self) -> list[int]:
        Z = self.Z
        space = self.datum.space
        dims: list[int] = []
        self._sub_pivots: list[dict[int, dict[int, QQ]]] = []
        self._sub_generators: list[list[MultiPoly]] = []
        by_length: dict[int, int] = {}
        for w in Z.coset_reps:
            by_length[w.length] = by_length.get(w.length, 0) + 1
        for j in range(Z.d + 1):
            pivots: dict[int, dict[int, QQ]] = {}
            generators: list[MultiPoly] = []
            for m in self._monos[j]:
                mono = MultiPoly.monomial(space, m)
                orbit = MultiPoly.zero(space)
                for v in Z.parabolic_circ:
                    orbit = orbit + v.act(mono)
                vec = self.normal_form(orbit)
                if _insert_row(pivots, vec) is not None:
                    generators.append(orbit)
            expected = by_length.get(Z.d - j, 0)
            if len(pivots) != expected:
                raise AssertionError(
                    f"invariant subquotient has dimension {len(pivots)} in degree"
                    f" {j}, expected {expected} transversal classes"
                )
            dims.append(len(pivots))
            self._sub_pivots.append(pivots)
            self._sub_generators.append(generators)
        return dims

    def numeric_class(self, w: WeylElt) -> MultiPoly:
        """The stratum class of w evaluated at p0."""
        if w not in self._numeric_class:
            report = stratum_class(self.Z, w)
            if report.zip_class is None:
                raise UnsupportedTwistedForm(report.error or "")
            self._numeric_class[w] = report.zip_class.evaluate_p(self.p0)
        return self._numeric_class[w]

    def _basis_for_degree(self, degree: int) -> tuple[list[WeylElt], list[dict[int, QQ]]]:
        if degree not in self._class_nf:
            length = self.Z.d - degree
            ws = [w for w in self.Z.coset_reps if w.length == length]
            vectors = [self.normal_form(self.numeric_class(w)) for w in ws]
            self._class_nf[degree] = (ws, vectors)
        return self._class_nf[degree]

    def basis_expand(self, f: MultiPoly) -> dict[WeylElt, QQ]:
        """Write a homogeneous class as a combination of the stratum
        classes of the matching degree; exact, aborts on any residual."""
        f = f.evaluate_p(self.p0)
        if f.is_zero():
            return {}
        degree = f.homogeneous_degree()
        if degree is None:
            raise ValueError("basis expansion needs a homogeneous input")
        if not 0 <= degree <= self.Z.d:
            raise NonZeroResidual(
                f"degree {degree} has no stratum classes (0..{self.Z.d})"
            )
        ws, vectors = self._basis_for_degree(degree)
        target = self.normal_form(f)
        coeffs = _solve_exact(vectors, target, context=f"degree {degree}")
        return {w: c for w, c in zip(ws, coeffs) if c}

    def pairing_matrix(self, j: int) -> list[list[QQ]]:
        """Intersection numbers A^j x A^(d-j) -> A^d = Q * [top class],
        rows indexed by the degree-j stratum basis, columns by the
        complementary one."""
        d = self.Z.d
        if not 0 <= j <= d:
            raise ValueError(f"degree {j} outside 0..{d}")
        ws_a, _ = self._basis_for_degree(j)
        ws_b, _ = self._basis_for_degree(d - j)
        ref_w, = [w for w in self.Z.coset_reps if w.length == 0]
        ref = self.normal_form(self.numeric_class(ref_w))
        if not ref:
            raise AssertionError("top stratum class vanishes in the model")
        ref_col = max(ref)
        matrix: list[list[QQ]] = []
        for wa in ws_a:
            fa = self.numeric_class(wa)
            row = []
            for wb in ws_b:
                prod = fa * self.numeric_class(wb)
                nf = self.normal_form(prod)
                if not nf:
                    row.append(QQ_ZERO)
                    continue
                if ref_col not in nf:
                    raise AssertionError(
                        "top-degree product is not proportional to the top class"
                    )
                scale = nf[ref_col] / ref[ref_col]
                diff = dict(nf)
                for c, q in ref.items():
                    if diff.pop(c, QQ_ZERO) != scale * q:
                        raise AssertionError(
                            "top-degree product is not proportional to the top class"
                        )
                if diff:
                    raise AssertionError(
                        "top-degree product is not proportional to the top class"
                    )
                row.append(scale)
            matrix.append(row)
        return matrix

    def pairing_nondegenerate(self, j: int) -> bool:
        matrix = self.pairing_matrix(j)
        if matrix and len(matrix) != len(matrix[0]):
            return False
        return _det_nonzero(matrix)


def _solve_exact(
    vectors: Sequence[Mapping[int, QQ]], target: Mapping[int, QQ], *, context: str
) -> list[QQ]:
    """Exact coordinates of target in the span of vectors; the vectors
    must be independent, and any residual raises NonZeroResidual."""
    pivots: dict[int, tuple[dict[int, QQ], dict[int, QQ]]] = {}
    for i, v in enumerate(vectors):
        vec = dict(v)
        combo: dict[int, QQ] = {i: QQ(1)}
        for col in sorted(vec, reverse=True):
            if col in vec and col in pivots:
                coeff = vec.pop(col)
                prow, pcombo = pivots[col]
                for c, q in prow.items():
                    if c == col:
                        continue
                    nv = vec.get(c, QQ_ZERO) - coeff * q
                    if nv:
                        vec[c] = nv
                    else:
                        vec.pop(c, None)
                for c, q in pcombo.items():
                    nv = combo.get(c, QQ_ZERO) - coeff * q
                    if nv:
                        combo[c] = nv
                    else:
                        combo.pop(c, None)
        if not vec:
            raise AssertionError(f"stratum classes are dependent ({context})")
        piv = max(vec)
        inv = 1 / vec[piv]
        vec = {c: q * inv for c, q in vec.items()}
        combo = {c: q * inv for c, q in combo.items()}
        for other, ocombo in pivots.values():
            if piv in other:
                coeff = other.pop(piv)
                for c, q in vec.items():
                    if c == piv:
                        continue
                    nv = other.get(c, QQ_ZERO) - coeff * q
                    if nv:
                        other[c] = nv
                    else:
                        other.pop(c, None)
                for c, q in combo.items():
                    nv = ocombo.get(c, QQ_ZERO) - coeff * q
                    if nv:
                        ocombo[c] = nv
                    else:
                        ocombo.pop(c, None)
        pivots[piv] = (vec, combo)
    residual = dict(target)
    solution: dict[int, QQ] = {}
    for col in sorted(residual, reverse=True):
        if col in residual and col in pivots:
            coeff = residual.pop(col)
            prow, pcombo = pivots[col]
            for c, q in prow.items():
                if c == col:
                    continue
                nv = residual.get(c, QQ_ZERO) - coeff * q
                if nv:
                    residual[c] = nv
                else:
                    residual.pop(c, None)
            for c, q in pcombo.items():
                nv = solution.get(c, QQ_ZERO) + coeff * q
                if nv:
                    solution[c] = nv
                else:
                    solution.pop(c, None)
    if residual:
        raise NonZeroResidual(
            f"class does not lie in the stratum span ({context}); "
            f"residual support size {len(residual)}"
        )
    return [solution.get(i, QQ_ZERO) for i in range(len(vectors))]


def _det_nonzero(matrix: list[list[QQ]]) -> bool:
    """Whether a square rational matrix is invertible, by elimination."""
    m = [row[:] for row in matrix]
    size = len(m)
    for col in range(size):
        pivot_row = None
        for r in range(col, size):
            if m[r][col]:
                pivot_row = r
                break
        if pivot_row is None:
            return False
        m[col], m[pivot_row] = m[pivot_row], m[col]
        inv = 1 / m[col][col]
        m[col] = [v * inv for v in m[col]]
        for r in range(col + 1, size):
            factor = m[r][col]
            if factor:
                m[r] = [a - factor * b for a, b in zip(m[r], m[col])]
    return True


@lru_cache(maxsize=None)
def build_coinvariant_model(Z: ZipDatum, p0: int) -> CoinvariantModel:
    return CoinvariantModel(Z, p0)


def hodge_class(model: CoinvariantModel, preset: str | None = None) -> MultiPoly:
    """A degree-one invariant representative of the Hodge line, with the
    sign (and for non-preset data, the generator) normalized so that its
    expansion over the length-(d-1) stratum classes is positive."""
    Z = model.Z
    datum = Z.datum
    space = datum.space
    if preset == "hilbert-blumenthal":
        candidate = MultiPoly.zero(space)
        for c in range(len(datum.components)):
            off = datum.offsets[c]
            candidate = candidate - MultiPoly.variable(space, space.names[off + 1])
    elif preset == "siegel":
        candidate = MultiPoly.zero(space)
        for name in space.names:
            candidate = candidate + MultiPoly.variable(space, name)
    else:
        if Z.d < 1 or model.sub_dimensions[1] != 1:
            raise AmbiguousHodgeClass(
                "no one-dimensional line of degree-one classes"
            )
        candidate = _primitive(model._sub_generators[1][0])
    coeffs = model.basis_expand(candidate)
    values = list(coeffs.values())
    ws, _ = model._basis_for_degree(1)
    if len(values) < len(ws) or not values:
        raise AmbiguousHodgeClass("degree-one expansion has zero coefficients")
    if all(v > 0 for v in values):
        return candidate
    if all(v < 0 for v in values):
        return -candidate
    raise AmbiguousHodgeClass("degree-one expansion has mixed signs")


def _primitive(f: MultiPoly) -> MultiPoly:
    """Scale a nonzero class so its coefficients are coprime integers
    with a positive leading (graded-lex) coefficient."""
    from math import gcd

    nums = []
    dens = []
    for coeff in f.terms.values():
        frac = coeff
        nums.append(int(frac.numerator))
        dens.append(int(frac.denominator))
    g = 0
    for v in nums:
        g = gcd(g, abs(v))
    lcm = 1
    for v in dens:
        lcm = lcm * v // gcd(lcm, v)
    scaled = f * QQ(lcm, g if g else 1)
    lead = max(scaled.terms)
    if scaled.terms[lead] < 0:
        scaled = -scaled
    return scaled


def hodge_power_expand(
    model: CoinvariantModel, lam: MultiPoly, j: int
) -> dict[WeylElt, QQ]:
    """Expand lam^(d-j) over the length-j stratum classes."""
    d = model.Z.d
    if not 0 <= j <= d:
        raise ValueError(f"j must lie in 0..{d}")
    power = lam ** (d - j)
    return model.basis_expand(power)
