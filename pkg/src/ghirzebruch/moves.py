"""Canonical equivariant diffeomorphisms c1..c6 and the orbit decision procedure.

The moves act on triples (a, b, r).  Orbits are enumerated over a finite
canonical state space:

* when gcd(a, n) = 1, c5 identifies all r in one class mod 2n, so the state
  stores ``r mod 2n`` (a *residue* state);
* otherwise only c1..c4 apply and r is an invariant up to sign, so the state
  stores r exactly (an *exact* state).

c4 needs r = 0 on the nose; from a residue state with r = 0 mod 2n it is
reached through an implicit c5 to r = 0.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from math import gcd
from typing import NamedTuple, Optional

from .surface import GHirzebruchSurface, invariant_signature, inverse_mod

KINDS = ("c1", "c2", "c3", "c4", "c5", "c6")
DEFAULT_STATE_CAP = 10**6


class InapplicableMoveError(ValueError):
    pass


class StateSpaceOverflow(RuntimeError):
    pass


class OrderMismatchError(ValueError):
    pass


class State(NamedTuple):
    """Canonical orbit state; ``exact`` is 0 for residue states, 1 for exact ones."""

    a: int
    b: int
    exact: int
    rho: int

    def to_json(self) -> dict:
        return {"a": self.a, "b": self.b, "r": self.rho, "r_mode": "exact" if self.exact else "mod_2n"}


@dataclass(frozen=True)
class MoveStep:
    kind: str
    parameter: Optional[int]
    source: GHirzebruchSurface
    target: GHirzebruchSurface

    def to_json(self) -> dict:
        return {"kind": self.kind, "r_target": self.target.r}


def canonical_state(s: GHirzebruchSurface) -> State:
    if gcd(s.a, s.n) == 1:
        return State(s.a, s.b, 0, s.r % (2 * s.n))
    return State(s.a, s.b, 1, s.r)


def _c6_residue(n: int, a: int, b: int, r: int) -> int:
    """The parity-preserving solution of r' a = -2b - r a (mod 2n), as a residue mod 2n."""
    beta0 = b * inverse_mod(a, n) % n
    return (-2 * beta0 - r) % (2 * n)


def c6_targets_valid(s: GHirzebruchSurface, r_new: int) -> bool:
    """Whether r_new is a legal c6 target: the congruence plus the parity guard."""
    n = s.n
    return (r_new * s.a - (-2 * s.b - s.r * s.a)) % (2 * n) == 0 and (r_new - s.r) % 2 == 0


def apply_move(s: GHirzebruchSurface, kind: str, parameter: Optional[int] = None) -> GHirzebruchSurface:
    """Apply one canonical move to the exact triple.

    ``parameter`` is the target r for c5/c6 (defaults to the least
    non-negative admissible value); other moves take no parameter.
    """
    n, a, b, r = s.n, s.a, s.b, s.r
    if kind not in KINDS:
        raise InapplicableMoveError(f"unknown move {kind!r}")
    if kind in ("c1", "c2", "c3", "c4") and parameter is not None:
        raise InapplicableMoveError(f"{kind} takes no parameter")
    if kind == "c1":
        return GHirzebruchSurface(n, -a, -b, r)
    if kind == "c2":
        return GHirzebruchSurface(n, -a, b + r * a, r)
    if kind == "c3":
        return GHirzebruchSurface(n, a, -b, -r)
    if kind == "c4":
        if r != 0:
            raise InapplicableMoveError("c4 requires r = 0")
        return GHirzebruchSurface(n, b, a, 0)
    if gcd(a, n) != 1:
        raise InapplicableMoveError(f"{kind} requires gcd(a,n) = 1")
    if kind == "c5":
        r_new = r if parameter is None else parameter
        if (r_new - r) % (2 * n):
            raise InapplicableMoveError(f"c5 target r'={r_new} must satisfy r' = r mod 2n")
        return GHirzebruchSurface(n, a, b, r_new)
    r_new = _c6_residue(n, a, b, r) if parameter is None else parameter
    if not c6_targets_valid(s, r_new):
        raise InapplicableMoveError(
            f"c6 target r'={r_new} must satisfy r'a = -2b-ra mod 2n and r' = r mod 2"
        )
    return GHirzebruchSurface(n, a, b, r_new)


def _state_of(n: int, a: int, b: int, r: int) -> State:
    a, b = a % n, b % n
    if gcd(a, n) == 1:
        return State(a, b, 0, r % (2 * n))
    return State(a, b, 1, r)


def neighbors(n: int, st: State) -> list[tuple[str, State]]:
    """Moves out of a canonical state, in the fixed order c1..c6."""
    a, b, exact, rho = st
    out = [
        ("c1", _state_of(n, -a, -b, rho)),
        ("c2", _state_of(n, -a, b + rho * a, rho)),
        ("c3", _state_of(n, a, -b, -rho)),
    ]
    if rho == 0:
        out.append(("c4", _state_of(n, b, a, 0)))
    if not exact:
        out.append(("c6", _state_of(n, a, b, _c6_residue(n, a, b, rho))))
    return out


@dataclass
class Orbit:
    """Breadth-first closure of a surface under the moves."""

    source: GHirzebruchSurface
    states: list
    parent: dict = field(repr=False)
    edges: list = field(repr=False)
    complete: bool = True

    def __contains__(self, s) -> bool:
        st = canonical_state(s) if isinstance(s, GHirzebruchSurface) else s
        return st in self.parent

    def __len__(self) -> int:
        return len(self.states)

    def state_path(self, st: State) -> list[str]:
        kinds = []
        while self.parent[st] is not None:
            prev, kind = self.parent[st]
            kinds.append(kind)
            st = prev
        return kinds[::-1]

    def path_to(self, target: GHirzebruchSurface) -> list[MoveStep]:
        """A concrete move sequence from ``source`` to the exact triple ``target``."""
        st = canonical_state(target)
        if st not in self.parent:
            raise KeyError(f"{target} is not in the orbit of {self.source}")
        return realize_path(self.source, self.state_path(st), target)

    def to_json(self) -> dict:
        index = {st: i for i, st in enumerate(self.states)}
        return {
            "source": self.source.as_list(),
            "nodes": [st.to_json() for st in self.states],
            "edges": [
                {"from": index[u], "to": index[v], "kind": k, "parameter": p}
                for u, v, k, p in self.edges
            ],
        }


def orbit(
    s: GHirzebruchSurface,
    cap: int = DEFAULT_STATE_CAP,
    stop_at: Optional[State] = None,
) -> Orbit:
    n = s.n
    start = canonical_state(s)
    parent = {start: None}
    states = [start]
    edges = []
    queue = deque([start])
    while queue:
        st = queue.popleft()
        for kind, nxt in neighbors(n, st):
            param = nxt.rho if kind == "c6" else None
            edges.append((st, nxt, kind, param))
            if nxt in parent:
                continue
            parent[nxt] = (st, kind)
            states.append(nxt)
            if len(states) > cap:
                raise StateSpaceOverflow(f"orbit of {s} exceeded {cap} states")
            if nxt == stop_at:
                return Orbit(s, states, parent, edges, complete=False)
            queue.append(nxt)
    return Orbit(s, states, parent, edges)


def realize_path(source: GHirzebruchSurface, kinds: list[str], target: GHirzebruchSurface) -> list[MoveStep]:
    steps: list[MoveStep] = []
    cur = source

    def push(kind, param=None):
        nonlocal cur
        nxt = apply_move(cur, kind, param)
        steps.append(MoveStep(kind, param, cur, nxt))
        cur = nxt

    for kind in kinds:
        if kind == "c4" and cur.r != 0:
            push("c5", 0)
        if kind == "c6":
            push("c6", _c6_residue(cur.n, cur.a, cur.b, cur.r))
        else:
            push(kind)
    if cur.r != target.r:
        if not steps and (target.r - cur.r) % (2 * cur.n) == 0:
            push("c5", target.r)
        elif steps and steps[-1].kind in ("c5", "c6"):
            last = steps.pop()
            cur = last.source
            push(last.kind, target.r)
        elif gcd(cur.a, cur.n) == 1 and c6_targets_valid(cur, target.r):
            push("c6", target.r)
        else:
            push("c5", target.r)
    assert cur == target, (cur, target)
    return steps


@dataclass(frozen=True)
class EquivVerdict:
    status: str
    path: tuple = ()
    witness: Optional[dict] = None

    @property
    def equivalent(self) -> bool:
        return self.status == "equivalent"

    def to_json(self) -> dict:
        out = {"status": self.status}
        if self.equivalent:
            out["path"] = [step.to_json() for step in self.path]
            out["states"] = [self.path[0].source.as_list()] + [
                step.target.as_list() for step in self.path
            ] if self.path else []
        else:
            out["witness"] = self.witness
        return out


def decide_equivalence(s1: GHirzebruchSurface, s2: GHirzebruchSurface, cap: int = DEFAULT_STATE_CAP) -> EquivVerdict:
    """Decide whether two surfaces are related by a finite sequence of moves."""
    if s1.n != s2.n:
        raise OrderMismatchError(f"group orders differ: {s1.n} vs {s2.n}")
    sig1, sig2 = invariant_signature(s1), invariant_signature(s2)
    if sig1 != sig2:
        return EquivVerdict(
            "inequivalent",
            witness={"kind": "signature-mismatch", "s1": sig1.to_json(), "s2": sig2.to_json()},
        )
    target = canonical_state(s2)
    orb = orbit(s1, cap=cap, stop_at=target)
    if target in orb:
        return EquivVerdict("equivalent", path=tuple(orb.path_to(s2)))
    other = orbit(s2, cap=cap)
    return EquivVerdict(
        "inequivalent",
        witness={"kind": "orbit-exhausted", "orbit_sizes": [len(orb), len(other)]},
    )


def state_surface(n: int, st: State) -> GHirzebruchSurface:
    return GHirzebruchSurface(n, st.a, st.b, st.rho)


def normal_form(s: GHirzebruchSurface, cap: int = DEFAULT_STATE_CAP) -> GHirzebruchSurface:
    """Lexicographically least state of the orbit, as a surface."""
    return state_surface(s.n, min(orbit(s, cap=cap).states))


# -- normalization of the (r, r') pairs with r = r' + n ---------------------------

@dataclass(frozen=True)
class Normalization:
    n: int
    b: int
    r: int
    r_prime: int
    moves: tuple

    def to_json(self) -> dict:
        return {"b": self.b, "r": self.r, "r_prime": self.r_prime, "moves": list(self.moves)}


def prop53_normalize(n: int, b: int, r_prime: int) -> Normalization:
    """Normalize the pair F_{r'+n}(1,b), F_{r'}(1,b) so that 0 <= r' < n and b + r' <= n.

    Only c5 (shift by 2n) and c6 are used; the pair keeps r = r' + n.
    """
    if n < 2:
        raise ValueError("n must be >= 2")
    if not 0 <= 2 * b <= n:
        raise ValueError("need 0 <= 2b <= n")
    moves = []
    rp = r_prime % (2 * n)
    if rp != r_prime:
        moves.append({"surface": "r_prime", "kind": "c5", "r_target": rp})
    r = rp + n
    if rp >= n:
        # the smaller of the pair is the other surface
        rp, r = rp - n, rp
        moves.append({"surface": "swap", "kind": "relabel", "r_target": rp})
    if b + rp > n:
        rt_prime = 2 * n - 2 * b - rp
        rt = 4 * n - 2 * b - r
        moves.append({"surface": "r_prime", "kind": "c6", "r_target": rt_prime})
        moves.append({"surface": "r", "kind": "c6", "r_target": rt})
        rp, r = rt_prime, rt
    if not (0 <= rp < n and b + rp <= n and n <= r == rp + n < 2 * n):
        raise ValueError(f"normalization infeasible for n={n}, b={b}, r'={r_prime}")
    return Normalization(n, b, r, rp, tuple(moves))
