"""G-Hirzebruch surfaces F_r(a, b) with G = Z/n and their fixed-point data."""
from __future__ import annotations

from dataclasses import dataclass
from math import gcd
from typing import Optional

LABELS = ("x00", "x01", "x10", "x11")
CURVES = ("E0", "E1", "F0", "F1")


class InvalidSurfaceError(ValueError):
    pass


@dataclass(frozen=True, order=True)
class GHirzebruchSurface:
    """F_r(a, b) for the cyclic group of order n.

    ``a`` and ``b`` are residues mod n (normalized to [0, n)); ``r`` is the
    exact Hirzebruch index and is never reduced.
    """

    n: int
    a: int
    b: int
    r: int

    def __post_init__(self):
        if not isinstance(self.n, int) or self.n < 2:
            raise InvalidSurfaceError(f"group order n must be >= 2, got {self.n!r}")
        object.__setattr__(self, "a", self.a % self.n)
        object.__setattr__(self, "b", self.b % self.n)
        if gcd(gcd(self.a, self.b), self.n) != 1:
            raise InvalidSurfaceError("gcd(a,b,n) must be 1")

    @property
    def odd(self) -> bool:
        """True for CP^2 # -CP^2 (r odd), False for S^2 x S^2."""
        return self.r % 2 == 1

    def as_list(self) -> list[int]:
        return [self.n, self.a, self.b, self.r]

    @classmethod
    def from_list(cls, data) -> "GHirzebruchSurface":
        if len(data) != 4:
            raise InvalidSurfaceError("surface must be given as [n, a, b, r]")
        return cls(*(int(v) for v in data))

    def __str__(self):
        return f"F_{self.r}({self.a},{self.b}) mod {self.n}"


@dataclass(frozen=True)
class FixedPointDatum:
    label: str
    transverse_weight: int
    fiber_weight: int

    @property
    def pair(self) -> tuple[int, int]:
        return (self.transverse_weight, self.fiber_weight)


@dataclass(frozen=True)
class FixedPointData:
    """Rotation data at x00, x01, x10, x11 and the isotropy of the invariant curves.

    ``curve_isotropy`` maps each curve to the order of its pointwise
    stabilizer, gcd(w, n) for the weight w tangent to the curve.
    """

    n: int
    points: tuple[FixedPointDatum, ...]
    curve_isotropy: dict
    fixed_curves: frozenset
    pseudo_free: bool

    def isolated_points(self) -> tuple[FixedPointDatum, ...]:
        """Fixed points not lying on a pointwise-fixed curve."""
        on_fixed = set()
        if "F0" in self.fixed_curves:
            on_fixed |= {"x00", "x01"}
        if "F1" in self.fixed_curves:
            on_fixed |= {"x10", "x11"}
        return tuple(p for p in self.points if p.label not in on_fixed)


def symmetric_residue(x: int, n: int) -> int:
    """Representative of x mod n in (-n/2, n/2]; display only."""
    x %= n
    return x - n if 2 * x > n else x


def fixed_point_data(s: GHirzebruchSurface) -> FixedPointData:
    n, a, b, r = s.n, s.a, s.b, s.r
    pairs = ((a, b), (a, -b), (-a, b + r * a), (-a, -b - r * a))
    points = tuple(
        FixedPointDatum(lbl, p % n, q % n) for lbl, (p, q) in zip(LABELS, pairs)
    )
    tangent = {"E0": a, "E1": a, "F0": b, "F1": b + r * a}
    isotropy = {c: gcd(w % n, n) for c, w in tangent.items()}
    fixed = frozenset(c for c, w in tangent.items() if w % n == 0)
    return FixedPointData(
        n=n,
        points=points,
        curve_isotropy=isotropy,
        fixed_curves=fixed,
        pseudo_free=all(v == 1 for v in isotropy.values()),
    )


@dataclass(frozen=True)
class SeifertData:
    n: int
    beta0: int
    beta1: int
    euler_e: int


def inverse_mod(a: int, n: int) -> int:
    if gcd(a, n) != 1:
        raise ValueError(f"{a} is not invertible mod {n}")
    return pow(a, -1, n)


def seifert_data(s: GHirzebruchSurface) -> SeifertData:
    """Seifert invariants of the orbifold circle bundle, after rescaling to a = 1.

    beta0 = b/a, beta1 = -b/a - r (mod n) and the integer e solves
    -r/n = beta0/n + beta1/n + e.
    """
    n = s.n
    if gcd(s.a, n) != 1:
        raise ValueError("seifert_data requires gcd(a,n) = 1")
    b = s.b * inverse_mod(s.a, n) % n
    beta0 = b
    beta1 = (-b - s.r) % n
    e, rem = divmod(-s.r - beta0 - beta1, n)
    assert rem == 0
    return SeifertData(n, beta0, beta1, e)


def _pair_rep(p: int, q: int, n: int) -> tuple[int, int]:
    return min(
        (p % n, q % n), (q % n, p % n), (-p % n, -q % n), (-q % n, -p % n)
    )


def units(n: int) -> list[int]:
    return [u for u in range(1, n) if gcd(u, n) == 1] or [1]


@dataclass(frozen=True)
class Signature:
    """Locally linear invariant of the fixed-point set structure.

    ``rotation`` is the canonical multiset of rotation pairs; ``curves`` is
    the sorted multiset of (stabilizer order, self-intersection) for the
    invariant curves with nontrivial stabilizer.
    """

    rotation: tuple
    curves: tuple

    def to_json(self) -> dict:
        return {"rotation": [list(p) for p in self.rotation], "curves": [list(c) for c in self.curves]}


def rotation_signature(s: GHirzebruchSurface) -> tuple:
    n = s.n
    pairs = [p.pair for p in fixed_point_data(s).points]
    return min(
        tuple(sorted(_pair_rep(u * p, u * q, n) for p, q in pairs)) for u in units(n)
    )


def invariant_signature(s: GHirzebruchSurface) -> Signature:
    data = fixed_point_data(s)
    self_int = {"E0": -s.r, "E1": s.r, "F0": 0, "F1": 0}
    curves = tuple(
        sorted(
            (data.curve_isotropy[c], self_int[c])
            for c in CURVES
            if data.curve_isotropy[c] > 1
        )
    )
    return Signature(rotation_signature(s), curves)


def parse_triple(text: str, n: int) -> GHirzebruchSurface:
    """Parse the CLI's ``a,b,r`` notation."""
    try:
        a, b, r = (int(t) for t in text.split(","))
    except ValueError:
        raise InvalidSurfaceError(f"expected a,b,r but got {text!r}") from None
    return GHirzebruchSurface(n, a, b, r)


def maybe_surface(n: Optional[int], a, b, r) -> GHirzebruchSurface:
    missing = [k for k, v in (("-n", n), ("-a", a), ("-b", b), ("-r", r)) if v is None]
    if missing:
        raise InvalidSurfaceError(f"missing {', '.join(missing)}")
    return GHirzebruchSurface(n, a, b, r)
