from math import gcd

import pytest

from ghirzebruch.moves import (
    InapplicableMoveError, KINDS, OrderMismatchError, State, StateSpaceOverflow, apply_move,
    canonical_state, decide_equivalence, normal_form, orbit, prop53_normalize,
)
from ghirzebruch.surface import GHirzebruchSurface as S, invariant_signature
from oracles import naive_orbit


def triples(n, rlo=None, rhi=None):
    rlo = -2 * n if rlo is None else rlo
    rhi = 2 * n if rhi is None else rhi
    for a in range(n):
        for b in range(n):
            if gcd(gcd(a, b), n) == 1:
                for r in range(rlo, rhi + 1):
                    yield S(n, a, b, r)


def replay(steps, start):
    cur = start
    for st in steps:
        assert st.source == cur
        cur = apply_move(cur, st.kind, st.parameter)
        assert cur == st.target
    return cur


def test_move_formulas():
    s = S(7, 1, 3, 1)
    assert apply_move(s, "c1") == S(7, 6, 4, 1)
    assert apply_move(s, "c2") == S(7, 6, 4, 1)
    assert apply_move(s, "c3") == S(7, 1, 4, -1)
    assert apply_move(S(7, 1, 3, 0), "c4") == S(7, 3, 1, 0)
    assert apply_move(s, "c5", 15) == S(7, 1, 3, 15)
    assert apply_move(s, "c6") == S(7, 1, 3, 7)


def test_inapplicable_moves():
    with pytest.raises(InapplicableMoveError):
        apply_move(S(7, 1, 3, 1), "c4")
    with pytest.raises(InapplicableMoveError):
        apply_move(S(6, 2, 1, 1), "c5")
    with pytest.raises(InapplicableMoveError):
        apply_move(S(7, 1, 3, 1), "c5", 3)
    with pytest.raises(InapplicableMoveError):
        apply_move(S(7, 1, 3, 1), "c6", 8)
    with pytest.raises(InapplicableMoveError):
        apply_move(S(7, 1, 3, 1), "c1", 2)
    with pytest.raises(InapplicableMoveError):
        apply_move(S(7, 1, 3, 1), "c9")


def test_move_algebra_exhaustive():
    for n in range(2, 9):
        for s in triples(n):
            assert apply_move(apply_move(s, "c1"), "c1") == s
            assert apply_move(apply_move(s, "c3"), "c3") == s
            assert apply_move(apply_move(s, "c2"), "c2") == s
            for kind in KINDS:
                try:
                    t = apply_move(s, kind)
                except InapplicableMoveError:
                    continue
                assert t.r % 2 == s.r % 2


def test_orbits_match_naive_closure():
    for n in range(2, 6):
        for s in triples(n, -n, 2 * n):
            brute = naive_orbit(n, s.a, s.b, s.r, 4 * n)
            assert {canonical_state(S(n, *t)) for t in brute} == set(orbit(s).states)


def test_orbits_partition_exhaustive():
    # reachability is reflexive, symmetric and transitive iff orbits partition the states
    for n in range(2, 7):
        for s in triples(n):
            states = set(orbit(s).states)
            assert canonical_state(s) in states
            for st in list(states)[:6]:
                t = S(n, st.a, st.b, st.rho)
                assert set(orbit(t).states) == states


def test_decide_equivalence_paths_replay():
    n = 5
    sample = list(triples(n, -3, 6))[::7]
    for s1 in sample:
        for s2 in sample[:20]:
            v = decide_equivalence(s1, s2)
            back = decide_equivalence(s2, s1)
            assert v.status == back.status
            if v.equivalent:
                assert replay(v.path, s1) == s2
                assert replay(back.path, s2) == s1


def test_transitivity_sampled():
    n = 6
    sample = list(triples(n, -2, 4))[::5]
    eq = {(x, y): decide_equivalence(x, y).equivalent for x in sample for y in sample}
    for x in sample:
        for y in sample:
            if not eq[x, y]:
                continue
            for z in sample:
                if eq[y, z]:
                    assert eq[x, z]


def test_c5_single_step():
    for n in range(2, 9):
        for s in triples(n, -3, 3):
            if gcd(s.a, n) != 1:
                continue
            v = decide_equivalence(s, S(n, s.a, s.b, s.r + 2 * n))
            assert v.equivalent and [st.kind for st in v.path] == ["c5"]


def test_normal_form_idempotent_and_complete():
    for n in range(2, 9):
        for s in triples(n, -n, n):
            nf = normal_form(s)
            assert normal_form(nf) == nf
            assert invariant_signature(nf) == invariant_signature(s)
            assert decide_equivalence(s, nf).equivalent


def test_orbit_sizes_finite():
    for n in range(2, 9):
        for s in triples(n):
            assert len(orbit(s)) <= 4 * n * n * 2 * n


def test_known_equivalences():
    v = decide_equivalence(S(7, 1, 3, 1), S(7, 1, 3, 7))
    assert v.to_json()["path"] == [{"kind": "c6", "r_target": 7}]
    assert decide_equivalence(S(7, 3, 1, 11), S(7, 3, 1, 7)).equivalent
    v = decide_equivalence(S(7, 1, 3, 7), S(7, 3, 1, 7))
    assert not v.equivalent and v.witness["kind"] == "orbit-exhausted"
    v = decide_equivalence(S(7, 1, 3, 1), S(7, 1, 3, 2))
    assert v.witness["kind"] == "signature-mismatch"


def test_errors():
    with pytest.raises(OrderMismatchError):
        decide_equivalence(S(5, 1, 1, 1), S(7, 1, 1, 1))
    with pytest.raises(StateSpaceOverflow):
        orbit(S(7, 1, 3, 1), cap=3)


def test_gcd_regime_keeps_exact_r():
    # with gcd(a,n) > 1 only c1..c4 apply and |r| is invariant
    s = S(6, 2, 1, 5)
    assert all(st.exact and abs(st.rho) == 5 for st in orbit(s).states)
    assert not decide_equivalence(s, S(6, 2, 1, 17)).equivalent
    assert canonical_state(s) == State(2, 1, 1, 5)


def test_prop53_normalize():
    nm = prop53_normalize(8, 3, 7)
    assert (nm.b, nm.r, nm.r_prime) == (3, 11, 3)
    nm = prop53_normalize(6, 3, 5)
    assert (nm.b, nm.r, nm.r_prime) == (3, 7, 1)
    nm = prop53_normalize(4, 1, 1)
    assert (nm.b, nm.r, nm.r_prime, nm.moves) == (1, 5, 1, ())
    for n in range(2, 13):
        for b in range(0, n // 2 + 1):
            for rp in range(-3 * n, 3 * n):
                nm = prop53_normalize(n, b, rp)
                assert 0 <= nm.r_prime < n and nm.b + nm.r_prime <= n and nm.r == nm.r_prime + n
    with pytest.raises(ValueError):
        prop53_normalize(4, 3, 1)
