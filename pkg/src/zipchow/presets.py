"""Named families of zip data.

Each builder assembles the root datum and dominant cocharacter, then
cross-checks the computed frame element and parabolic type against the
closed forms the family is known to have.
"""

from __future__ import annotations

from dataclasses import dataclass, replace

from zipchow.rootweyl import CartanComponent, RootDatum
from zipchow.zipdatum import ZipDatum, build_zipdatum


@dataclass(frozen=True)
class PresetSpec:
    """A preset name with its integer parameters, e.g. siegel:2."""

    name: str
    params: tuple[int, ...]

    @property
    def key(self) -> str:
        return self.name + ":" + ",".join(str(v) for v in self.params)


#: name -> (number of parameters, inclusive parameter ranges)
PRESET_SIGNATURES = {
    "siegel": ((2, 4),),
    "spin-odd": ((2, 4),),
    "hilbert-blumenthal": ((1, 6),),
    "gl": ((1, 5), (0, 5)),
}


def siegel(g: int) -> ZipDatum:
    """Symplectic group Sp_{2g} with the minuscule cocharacter (1^g)."""
    datum = RootDatum((CartanComponent("C", g),))
    Z = build_zipdatum(datum, (1,) * g)
    assert Z.I == frozenset(range(1, g))
    assert Z.z.images == tuple(-(g + 1 - i) for i in range(1, g + 1))
    assert Z.d == g * (g + 1) // 2
    return Z


def spin_odd(n: int) -> ZipDatum:
    """Odd orthogonal group SO_{2n+1} with cocharacter (1, 0^(n-1))."""
    datum = RootDatum((CartanComponent("B", n),))
    Z = build_zipdatum(datum, (1,) + (0,) * (n - 1))
    assert Z.I == frozenset(range(2, n + 1))
    assert Z.z.images == (-1,) + tuple(range(2, n + 1))
    assert Z.I_circ == Z.I
    assert Z.d == 2 * n - 1
    return replace(Z, type_overrides=_spin_types(Z, n))


def _spin_types(Z: ZipDatum, n: int) -> tuple:
    """Explicit types I_w for the odd orthogonal transversal.

    The length-l element moves exactly the coordinates x_1..x_k in a
    single cycle (k = l+1 unsigned for l < n, k = 2n-l signed for
    l >= n) and fixes the rest pointwise.  For an unsigned cycle the
    descended Levi keeps every generator supported on the fixed
    coordinates, {s_{l+2}, ..., s_n}, which is also what the
    reflection-level fixpoint finds.  For a signed cycle the generator
    s_{k+1} bordering the moved block is lost in the descent although
    sigma_w fixes its root (the length-(2n-1) element *is* z, so
    sigma_w is the identity on I, yet its stratum has the flag point
    count of the shorter chain {s_{k+2}, ..., s_n}).  The fixpoint
    cannot see that distinction, so the subsets are recorded here;
    the gamma values they induce are pinned by the table tests.
    """
    pairs = []
    for w in Z.coset_reps:
        l = w.length
        start = l + 2 if l <= n - 1 else 2 * n - l + 2
        pairs.append((w, frozenset(range(start, n + 1))))
    return tuple(pairs)


def hilbert_blumenthal(d: int) -> ZipDatum:
    """d-fold product of GL_2 with cyclically shifting Frobenius and
    cocharacter (1, 0) on every factor."""
    components = tuple(CartanComponent("A", 2) for _ in range(d))
    perm = tuple((c + 1) % d for c in range(d))
    datum = RootDatum(components, frobenius_perm=perm)
    Z = build_zipdatum(datum, (1, 0) * d)
    assert Z.I == frozenset()
    expected = []
    for c in range(d):
        expected.extend((2 * c + 2, 2 * c + 1))
    assert Z.z.images == tuple(expected)
    assert Z.d == d
    return Z


def gl(n: int, a: int) -> ZipDatum:
    """GL_n with cocharacter (1^a, 0^(n-a))."""
    if not 0 <= a <= n:
        raise ValueError(f"need 0 <= a <= n, got a={a}, n={n}")
    datum = RootDatum((CartanComponent("A", n),))
    Z = build_zipdatum(datum, (1,) * a + (0,) * (n - a))
    assert Z.I == frozenset(l for l in range(1, n) if l != a)
    assert Z.d == a * (n - a)
    return Z


def build_preset(name: str, params: tuple[int, ...]) -> ZipDatum:
    """Build a preset by name, enforcing the documented parameter ranges."""
    if name not in PRESET_SIGNATURES:
        raise ValueError(
            f"unknown preset {name!r}; choose from {sorted(PRESET_SIGNATURES)}"
        )
    ranges = PRESET_SIGNATURES[name]
    if len(params) != len(ranges):
        raise ValueError(
            f"preset {name} takes {len(ranges)} parameter(s), got {len(params)}"
        )
    for value, (lo, hi) in zip(params, ranges):
        if not lo <= value <= hi:
            raise ValueError(
                f"preset {name} parameter {value} outside supported range {lo}..{hi}"
            )
    if name == "siegel":
        return siegel(params[0])
    if name == "spin-odd":
        return spin_odd(params[0])
    if name == "hilbert-blumenthal":
        return hilbert_blumenthal(params[0])
    n, a = params
    if a > n:
        raise ValueError(f"preset gl needs a <= n, got n={n}, a={a}")
    return gl(n, a)
