"""Intersection forms of the two rational ruled 4-manifolds, and the conic bundle obstruction.

Classes are integer pairs (x, y):

* odd manifold CP^2 # -CP^2: x e0 + y e1 with e0^2 = 1, e1^2 = -1, e0.e1 = 0;
* even manifold S^2 x S^2: x e1 + y e2 with e1^2 = e2^2 = 0, e1.e2 = 1.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import isqrt

ODD = "odd"
EVEN = "even"
MANIFOLDS = (ODD, EVEN)

# Recorded only: SW_X(e1) = +-1 (the sign is not determined here).
SW_E1 = (1, -1)


class ManifoldMismatchError(ValueError):
    pass


@dataclass(frozen=True)
class HomologyClass:
    manifold: str
    x: int
    y: int

    def __post_init__(self):
        if self.manifold not in MANIFOLDS:
            raise ValueError(f"manifold must be 'odd' or 'even', got {self.manifold!r}")

    @property
    def coeffs(self) -> tuple[int, int]:
        return (self.x, self.y)

    def __add__(self, other: "HomologyClass") -> "HomologyClass":
        _same(self, other)
        return HomologyClass(self.manifold, self.x + other.x, self.y + other.y)

    def __neg__(self) -> "HomologyClass":
        return HomologyClass(self.manifold, -self.x, -self.y)

    def __sub__(self, other: "HomologyClass") -> "HomologyClass":
        return self + (-other)

    def __rmul__(self, k: int) -> "HomologyClass":
        return HomologyClass(self.manifold, k * self.x, k * self.y)

    def square(self) -> int:
        return intersect(self, self)


def _same(u: HomologyClass, v: HomologyClass) -> None:
    if u.manifold != v.manifold:
        raise ManifoldMismatchError(f"cannot pair classes on {u.manifold} and {v.manifold} manifolds")


def intersect(u: HomologyClass, v: HomologyClass) -> int:
    _same(u, v)
    if u.manifold == ODD:
        return u.x * v.x - u.y * v.y
    return u.x * v.y + u.y * v.x


def canonical_class(manifold: str) -> HomologyClass:
    if manifold == ODD:
        return HomologyClass(ODD, -3, 1)
    return HomologyClass(EVEN, -2, -2)


def fiber_class(manifold: str) -> HomologyClass:
    """F = e0 - e1 on the odd manifold, e2 on the even one."""
    return HomologyClass(manifold, 1, -1) if manifold == ODD else HomologyClass(EVEN, 0, 1)


def enumerate_square_classes(manifold: str, s: int, bound: int = 50) -> list[HomologyClass]:
    """All classes with |x|, |y| <= bound and self-intersection s."""
    if bound < 1:
        raise ValueError("bound must be >= 1")
    out = []
    for x in range(-bound, bound + 1):
        for y in range(-bound, bound + 1):
            c = HomologyClass(manifold, x, y)
            if c.square() == s:
                out.append(c)
    return out


def unimodular_square_solutions(s: int) -> list[tuple[int, int]]:
    """Integer solutions of x^2 - y^2 = s for s = +-1, by factoring (x-y)(x+y) = s.

    Independent of any search bound.
    """
    if s not in (1, -1):
        raise ValueError("only squares +-1 are handled")
    sols = []
    for u in (1, -1):  # u = x - y, v = x + y, u v = s
        v = s * u
        sols.append(((u + v) // 2, (v - u) // 2))
    return sorted(set(sols))


def section_class_from_delta(delta: int, manifold: str) -> tuple[HomologyClass, int]:
    """Section class with fiber degree one and intersection ``delta`` with the reference sphere.

    Odd: (delta + 1) e0 - delta e1, square 2 delta + 1.  Even: e1 + delta e2,
    square 2 delta.
    """
    if manifold == ODD:
        c = HomologyClass(ODD, delta + 1, -delta)
    else:
        c = HomologyClass(EVEN, 1, delta)
    return c, c.square()


# -- conic bundles ---------------------------------------------------------------

@dataclass(frozen=True)
class ConicBundleData:
    """Genus g of the fixed bisection; k = 2 + 2g singular fibers."""

    g: int

    def __post_init__(self):
        if self.g < 1:
            raise ValueError(f"genus must be >= 1 (k = 2+2g >= 4), got g={self.g}")

    @property
    def k(self) -> int:
        return 2 + 2 * self.g


class ConicLattice:
    """Q-span of the bisection Sigma and the fiber F, coordinates (s, f) for s Sigma + f F."""

    def __init__(self, data: ConicBundleData):
        self.data = data
        g = data.g
        self.gram = ((2 + 2 * g, 2), (2, 0))

    def pair(self, u, v):
        (s1, f1), (s2, f2) = u, v
        (a, b), (_, d) = self.gram
        return s1 * s2 * a + (s1 * f2 + f1 * s2) * b + f1 * f2 * d

    def canonical(self):
        return (-1, self.data.g - 1)


def conic_identities(data: ConicBundleData) -> dict:
    """K.F, K^2, and the adjunction value K.Sigma + Sigma^2 + 2 for K = -Sigma + (g-1)F."""
    lat = ConicLattice(data)
    sigma, fib, K = (1, 0), (0, 1), lat.canonical()
    return {
        "K.F": lat.pair(K, fib),
        "K^2": lat.pair(K, K),
        "8-k": 8 - data.k,
        "adjunction": lat.pair(K, sigma) + lat.pair(sigma, sigma) + 2,
        "2g": 2 * data.g,
        "Sigma^2": lat.pair(sigma, sigma),
        "Sigma.F": lat.pair(sigma, fib),
        "F^2": lat.pair(fib, fib),
    }


@dataclass(frozen=True)
class ConicVerdict:
    minimal: bool
    trace: tuple

    @property
    def message(self) -> str:
        return "minimal as topological G-manifold" if self.minimal else "not minimal"


def conic_minimality(data: ConicBundleData) -> ConicVerdict:
    """Search for E = a Sigma + b F with E.Sigma = 0, E^2 = -2 and F.E even.

    E.Sigma = 0 forces b = -a(1+g); then E^2 = -2 becomes a^2 (1+g) = 1, and
    F.E = 2a even forces a to be an integer, which is impossible for g >= 1.
    """
    g = data.g
    lat = ConicLattice(data)
    trace = [
        f"Sigma.Sigma = {lat.gram[0][0]}, Sigma.F = 2, F.F = 0 (k = {data.k} singular fibers)",
        "E.Sigma = 0  =>  b = -a(1+g)",
        f"E^2 = -2  =>  a^2 (1+g) = 1, i.e. a^2 = 1/{1 + g}",
    ]
    a_sq = Fraction(1, 1 + g)
    rational_roots = []
    num, den = a_sq.numerator, a_sq.denominator
    if isqrt(num) ** 2 == num and isqrt(den) ** 2 == den:
        r = Fraction(isqrt(num), isqrt(den))
        rational_roots = [r, -r]
    # sanity: any rational root must satisfy both constraints in the lattice
    for a in rational_roots:
        e = (a, -a * (1 + g))
        assert lat.pair(e, (1, 0)) == 0 and lat.pair(e, e) == -2
    integer_roots = [a for a in rational_roots if a.denominator == 1]
    trace.append(
        f"rational solutions a in {sorted(rational_roots)}" if rational_roots
        else "no rational solution a"
    )
    trace.append("F.E = 2a is even  =>  a is an integer")
    trace.append(
        "integer solutions: " + (", ".join(map(str, integer_roots)) if integer_roots else "none")
    )
    trace.append(
        "no invariant (-1)-sphere either: normal weights satisfy m1 + m2 = -1 mod 2, "
        "forcing an isolated fixed point of the involution"
    )
    return ConicVerdict(minimal=not integer_roots, trace=tuple(trace))
