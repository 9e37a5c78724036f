"""Equivariant index data: Seiberg-Witten virtual dimensions, orbifold moduli
dimensions of invariant sections, the C0^2 case tables with their congruence
filter, and the invariant (-1)-sphere detector.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from typing import Optional, Sequence

from . import homology
from .cyclotomic import index_contribution
from .surface import GHirzebruchSurface, fixed_point_data, units


@dataclass(frozen=True)
class LineBundleSpec:
    """c1(E)^2, c1(E).K and the fixed points (p, q, w) with nonzero fiber weight w."""

    c1_square: int
    c1_dot_K: int
    weighted_points: tuple
    n: Optional[int] = None

    def __post_init__(self):
        pts = tuple(tuple(int(v) for v in pt) for pt in self.weighted_points)
        if self.n is not None:
            pts = tuple((p % self.n, q % self.n, w % self.n) for p, q, w in pts if w % self.n)
        object.__setattr__(self, "weighted_points", pts)

    @classmethod
    def from_class(cls, c1: homology.HomologyClass, points, n: Optional[int] = None):
        K = homology.canonical_class(c1.manifold)
        return cls(c1.square(), homology.intersect(c1, K), tuple(points), n)


def virtual_dimension(spec: LineBundleSpec, n: int) -> Fraction:
    """d = (c1^2 - c1.K)/n + sum of the fixed-point contributions."""
    d = Fraction(spec.c1_square - spec.c1_dot_K, n)
    for p, q, w in spec.weighted_points:
        if w % n:
            d += index_contribution(n, p, q, w)
    return d


# Rotation numbers at (q1, q2) as functions of a; the bundle weights there are a and a+1.
ASSIGNMENTS = (
    ("matched", lambda a: ((1, a), (-1, a + 1))),
    ("q1-flipped", lambda a: ((-1, -a), (-1, a + 1))),
    ("both-flipped", lambda a: ((-1, -a), (1, -a - 1))),
    ("q2-flipped", lambda a: ((1, a), (1, -a - 1))),
)


def bundle_E(n: int, a: int, rotations) -> LineBundleSpec:
    """The bundle with c1 = e1 and fiber weights a, a+1 at q1, q2."""
    (p1, q1), (p2, q2) = rotations
    e1 = homology.HomologyClass(homology.ODD, 0, 1)
    return LineBundleSpec.from_class(e1, ((p1, q1, a), (p2, q2, a + 1)), n)


def bundle_L(n: int, a: int, q1_prime_rotation=(1, None)) -> LineBundleSpec:
    """The pulled-back bundle with c1 = F, weight 1 at q1 and q1', 0 elsewhere.

    ``q1_prime_rotation`` defaults to (1, -a); pass (-1, a) for the other sign.
    """
    p, q = q1_prime_rotation
    if q is None:
        q = -a
    F = homology.fiber_class(homology.ODD)
    return LineBundleSpec.from_class(F, ((1, a, 1), (p, q, 1)), n)


@dataclass(frozen=True)
class ScanEntry:
    label: str
    rotations: tuple
    d: Fraction

    @property
    def integral(self) -> bool:
        return self.d.denominator == 1


def integrality_table(n: int, a: int) -> list[ScanEntry]:
    """d(E) for each of the four rotation-sign assignments at (q1, q2)."""
    if n % 2 == 0:
        raise ValueError("integrality scan needs n odd")
    if gcd(a, n) != 1 or gcd(a + 1, n) != 1:
        raise ValueError("pseudo-free data needs gcd(a,n) = gcd(a+1,n) = 1")
    out = []
    for label, rot in ASSIGNMENTS:
        rotations = rot(a)
        out.append(ScanEntry(label, rotations, virtual_dimension(bundle_E(n, a, rotations), n)))
    return out


def integrality_scan(n: int, a: int) -> list[ScanEntry]:
    """Assignments whose virtual dimension d(E) is an integer."""
    return [e for e in integrality_table(n, a) if e.integral]


# -- orbifold moduli dimension -------------------------------------------------

def _weight_sum(n: int, pairs) -> int:
    total = 0
    for m1, m2 in pairs:
        if not (0 <= m1 < n and 0 <= m2 < n):
            raise ValueError(f"weights must lie in [0, n): {(m1, m2)}")
        total += m1 + m2
    return total


def moduli_dimension(n: int, K_dot_C0: int, pairs) -> Fraction:
    """d = -K.C0/n + 1 - sum_i (m_i1 + m_i2)/n."""
    return Fraction(-K_dot_C0, n) + 1 - Fraction(_weight_sum(n, pairs), n)


def moduli_dimension_from_square(n: int, C0_square: int, pairs) -> Fraction:
    """Same dimension after adjunction K.C0 = -C0^2 - 2 for an embedded sphere."""
    return Fraction(C0_square + 2, n) + 1 - Fraction(_weight_sum(n, pairs), n)


@dataclass(frozen=True)
class SectionCase:
    """One placement of the section C0 through two fixed points.

    ``offset`` is n*d at C0^2 = 0, so d = (C0^2 + offset)/n and the generic
    value is C0^2 = -offset.  ``c_dot_c0`` is the residue of C.C0 mod n used by
    the congruence filter (None when the case is not filtered).
    """

    label: str
    pairs: tuple
    offset: int
    c0_square: Optional[int]
    contradiction: bool
    c_dot_c0: Optional[int] = None

    def to_json(self) -> dict:
        return {
            "case": self.label,
            "weights": [list(p) for p in self.pairs],
            "d": f"(C0^2 + {self.offset})/n" if self.offset >= 0 else f"(C0^2 - {-self.offset})/n",
            "c0_square": None if self.contradiction else self.c0_square,
            "contradiction": self.contradiction,
        }


@dataclass(frozen=True)
class SectionCaseTable:
    n: int
    variant: str
    params: dict
    cases: tuple = field(default_factory=tuple)

    def to_json(self) -> dict:
        return {"n": self.n, "variant": self.variant, "params": self.params,
                "cases": [c.to_json() for c in self.cases]}


def _case(n: int, label: str, pairs, c_dot_c0=None) -> SectionCase:
    offset = n * moduli_dimension_from_square(n, 0, pairs)
    assert offset.denominator == 1
    offset = int(offset)
    value = -offset
    contradiction = label == "d" and value > 0
    return SectionCase(label, tuple(pairs), offset, None if contradiction else value,
                       contradiction, c_dot_c0)


def section_case_table(n: int, variant: str, a: Optional[int] = None,
                       b: Optional[int] = None, r_prime: Optional[int] = None) -> SectionCaseTable:
    """The four (or, for a fixed fiber, fewer) placements of C0 and their C0^2.

    ``variant`` is ``"pseudo-free"`` (sphere C = e1 with data a) or
    ``"hirzebruch"`` (sphere of square -r' with data b, r').  A fixed invariant
    fiber (a in {0, n-1}, resp. b = 0 or b + r' = n) selects the reduced table.
    """
    if variant == "pseudo-free":
        if a is None:
            raise ValueError("pseudo-free table needs a")
        if 0 < a < n - 1:
            cases = (
                _case(n, "a", ((1, a), (1, n - a - 1))),
                _case(n, "b", ((1, a), (1, a + 1)), c_dot_c0=a % n),
                _case(n, "c", ((1, n - a), (1, n - a - 1)), c_dot_c0=(-a - 1) % n),
                _case(n, "d", ((1, n - a), (1, a + 1))),
            )
        elif a in (0, n - 1):
            cases = (
                _case(n, "a", ((1, 0), (1, n - 1))),
                _case(n, "b", ((1, 0), (1, 1)), c_dot_c0=0),
            )
        else:
            raise ValueError(f"need 0 <= a <= n-1, got a={a}")
        return SectionCaseTable(n, variant, {"a": a}, cases)
    if variant == "hirzebruch":
        if b is None or r_prime is None:
            raise ValueError("hirzebruch table needs b and r'")
        if not 0 <= r_prime < n:
            raise ValueError(f"need 0 <= r' < n, got r'={r_prime}")
        if 0 < b < n - r_prime:
            cases = (
                _case(n, "a", ((1, b), (1, n - b - r_prime))),
                _case(n, "b", ((1, b), (1, b + r_prime)), c_dot_c0=b % n),
                _case(n, "c", ((1, n - b), (1, n - b - r_prime)), c_dot_c0=(-b - r_prime) % n),
                _case(n, "d", ((1, n - b), (1, b + r_prime))),
            )
        elif b == 0 or b + r_prime == n:
            if r_prime > 0:
                cases = (
                    _case(n, "a", ((1, 0), (1, n - r_prime))),
                    _case(n, "b", ((1, 0), (1, r_prime)), c_dot_c0=0),
                )
            else:
                cases = (_case(n, "c", ((1, 0), (1, 0)), c_dot_c0=0),)
        else:
            raise ValueError(f"need 0 <= b <= n - r', got b={b}, r'={r_prime}")
        return SectionCaseTable(n, variant, {"b": b, "r_prime": r_prime}, cases)
    raise ValueError(f"unknown variant {variant!r}")


class NoSurvivorError(ValueError):
    pass


def required_square_residue(n: int, C_square: int, c_dot_c0: int) -> int:
    """C0^2 mod 2n forced by C.C0 = c (mod n) for two fiber-degree-one sections.

    On either manifold C0^2 + C^2 = 2 C.C0, so C0^2 = 2c - C^2 (mod 2n).
    """
    return (2 * c_dot_c0 - C_square) % (2 * n)


def congruence_filter(manifold: str, C_square: int, table: SectionCaseTable) -> int:
    """The unique C0^2 surviving the dimension bound and the mod 2n congruence."""
    n = table.n
    if n % 2 or n <= 2:
        raise ValueError("congruence filter applies to even n > 2")
    if manifold not in homology.MANIFOLDS:
        raise ValueError(f"unknown manifold {manifold!r}")
    if (C_square % 2 == 1) != (manifold == homology.ODD):
        raise ValueError(f"C^2 = {C_square} has the wrong parity for the {manifold} manifold")
    survivors = set()
    for case in table.cases:
        if case.contradiction:
            continue
        if case.c_dot_c0 is not None:
            if case.c0_square % (2 * n) != required_square_residue(n, C_square, case.c_dot_c0):
                continue
        survivors.add(case.c0_square)
    if len(survivors) != 1:
        raise NoSurvivorError(f"expected one surviving C0^2, got {sorted(survivors)}")
    return survivors.pop()


# -- invariant (-1)-sphere detector --------------------------------------------

@dataclass(frozen=True)
class ObstructionVerdict:
    unobstructed: bool
    u: Optional[int] = None
    alpha: Optional[int] = None
    reason: str = ""

    @property
    def status(self) -> str:
        return "unobstructed" if self.unobstructed else "obstructed"

    def to_json(self) -> dict:
        out = {"status": self.status}
        if self.unobstructed:
            out["witness"] = {"u": self.u, "a": self.alpha}
        else:
            out["reason"] = self.reason
        return out


def _same_mod(xs: Sequence[int], ys: Sequence[int], n: int) -> bool:
    return sorted(x % n for x in xs) == sorted(y % n for y in ys)


def minus_one_sphere_obstruction(s: GHirzebruchSurface) -> ObstructionVerdict:
    """Test the rotation data against the pattern (1,a), (-1,a+1), (1,-a), (-1,-a-1).

    After rescaling the generator by a unit u with u*a = +-1, the fiber with
    transverse weight +1 must carry fiber weights {a, -a} and the other fiber
    {a+1, -a-1}.
    """
    n = s.n
    if s.r % 2 == 0:
        return ObstructionVerdict(False, reason="even intersection form: no class of square -1")
    if gcd(s.a, n) != 1:
        return ObstructionVerdict(False, reason="gcd(a,n) != 1: no unit rescales a to +-1")
    pts = fixed_point_data(s).points
    fibers = ((pts[0], pts[1]), (pts[2], pts[3]))
    for u in units(n):
        for plus, minus in (fibers, fibers[::-1]):
            if (u * plus[0].transverse_weight) % n != 1 % n:
                continue
            if (u * minus[0].transverse_weight) % n != (-1) % n:
                continue
            plus_w = [u * p.fiber_weight for p in plus]
            minus_w = [u * p.fiber_weight for p in minus]
            for alpha in range(n):
                if _same_mod(plus_w, (alpha, -alpha), n) and _same_mod(
                    minus_w, (alpha + 1, -alpha - 1), n
                ):
                    return ObstructionVerdict(True, u=u, alpha=alpha)
    return ObstructionVerdict(False, reason="ordered rotation data do not match the (-1)-sphere pattern")
