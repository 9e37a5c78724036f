"""Command-line front end.

Every command can print a plain table or, with ``--json``, a single JSON
object {"command", "input", "result", "citations"}.  ``--batch`` reads JSON
lines ({"command": ..., "params": {...}}) from stdin and writes one response
line per request, in order.

Exit codes: 0 success, 1 invalid input, 2 internal consistency failure.
"""
from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from typing import Any, Callable, Optional

import mpmath

from . import cyclotomic, homology, moves, surface, swindex

EXIT_OK, EXIT_INPUT, EXIT_INTERNAL = 0, 1, 2
DEFAULT_N_CAP = 64

COMMANDS = (
    "surface", "signature", "seifert", "equiv", "orbit", "normal-form", "index",
    "dimension", "cases", "obstruction", "conic", "sum-oracle", "enumerate", "census",
)


class InputError(ValueError):
    pass


@dataclass
class Request:
    command: str
    params: dict = field(default_factory=dict)
    output_mode: str = "table"


@dataclass
class Response:
    payload: dict
    lines: list
    code: int = EXIT_OK

    def render(self, mode: str) -> str:
        if mode == "json":
            return json.dumps(self.payload, sort_keys=True, separators=(",", ":"))
        return "\n".join(self.lines)


def exact(x: Any) -> Any:
    """JSON form of an exact number: int, or reduced fraction string 'p/q'."""
    if isinstance(x, Fraction):
        return x.numerator if x.denominator == 1 else f"{x.numerator}/{x.denominator}"
    return x


# -- parameter helpers -------------------------------------------------------------

def _int(params: dict, key: str, required: bool = True) -> Optional[int]:
    v = params.get(key)
    if v is None:
        if required:
            raise InputError(f"missing parameter {key!r}")
        return None
    try:
        return int(v)
    except (TypeError, ValueError):
        raise InputError(f"parameter {key!r} must be an integer, got {v!r}") from None


def _int_list(params: dict, key: str, length: int) -> list[int]:
    v = params.get(key)
    if v is None:
        raise InputError(f"missing parameter {key!r}")
    if isinstance(v, str):
        v = v.split(",")
    try:
        out = [int(t) for t in v]
    except (TypeError, ValueError):
        raise InputError(f"parameter {key!r} must be {length} comma-separated integers") from None
    if len(out) != length:
        raise InputError(f"parameter {key!r} must have {length} entries, got {len(out)}")
    return out


def _order(params: dict) -> int:
    n = _int(params, "n")
    if n < 2:
        raise InputError("n must be >= 2")
    return n


def _surface_from(params: dict, key: Optional[str] = None) -> surface.GHirzebruchSurface:
    """Surface from --s1/--s2 style triples, a [n,a,b,r] list, or -a -b -r."""
    if key and params.get(key) is not None:
        v = params[key]
        if isinstance(v, list) and len(v) == 4:
            return surface.GHirzebruchSurface.from_list(v)
        a, b, r = _int_list(params, key, 3)
        return surface.GHirzebruchSurface(_order(params), a, b, r)
    if params.get("surface") is not None:
        return surface.GHirzebruchSurface.from_list(params["surface"])
    if params.get("s1") is not None and key is None:
        return _surface_from(params, "s1")
    n = _order(params)
    return surface.GHirzebruchSurface(n, _int(params, "a"), _int(params, "b"), _int(params, "r"))


def _check_n_cap(params: dict, n: int) -> None:
    cap = _int(params, "cap", required=False) or DEFAULT_N_CAP
    if n > cap:
        raise InputError(f"n={n} exceeds the orbit cap {cap} (raise it with --cap)")


def _pairs_text(pairs) -> str:
    return " ".join(f"({p},{q})" for p, q in pairs)


# -- command handlers: each returns (input, result, citations, table lines) ------------

def cmd_surface(p):
    s = _surface_from(p)
    d = surface.fixed_point_data(s)
    result = {
        "points": [
            {"label": pt.label, "transverse": pt.transverse_weight, "fiber": pt.fiber_weight}
            for pt in d.points
        ],
        "curve_isotropy": d.curve_isotropy,
        "fixed_curves": sorted(d.fixed_curves),
        "pseudo_free": d.pseudo_free,
        "manifold": "odd" if s.odd else "even",
    }
    lines = [str(s)]
    for pt in d.points:
        lines.append(
            f"  {pt.label}: ({surface.symmetric_residue(pt.transverse_weight, s.n)},"
            f" {surface.symmetric_residue(pt.fiber_weight, s.n)})"
        )
    lines.append("  isotropy: " + ", ".join(f"{c}={v}" for c, v in d.curve_isotropy.items()))
    lines.append(f"  fixed curves: {', '.join(sorted(d.fixed_curves)) or 'none'}")
    lines.append(f"  pseudo-free: {'yes' if d.pseudo_free else 'no'}")
    return {"surface": s.as_list()}, result, ["rotation numbers at x00, x01, x10, x11",
                                              "isotropy of E0, E1, F0, F1"], lines


def cmd_signature(p):
    s = _surface_from(p)
    sig = surface.invariant_signature(s)
    lines = [f"{s}", f"  rotation: {_pairs_text(sig.rotation)}",
             f"  curves (stabilizer, self-intersection): {list(sig.curves)}"]
    return {"surface": s.as_list()}, sig.to_json(), ["rotation numbers up to order, sign, generator"], lines


def cmd_seifert(p):
    s = _surface_from(p)
    sd = surface.seifert_data(s)
    result = {"beta0": sd.beta0, "beta1": sd.beta1, "euler_e": sd.euler_e}
    lines = [f"{s}: beta0={sd.beta0} beta1={sd.beta1} e={sd.euler_e}"]
    return {"surface": s.as_list()}, result, ["Seifert invariants beta0 = b, beta1 = -b-r (mod n)"], lines


def cmd_equiv(p):
    s1, s2 = _surface_from(p, "s1"), _surface_from(p, "s2")
    if s1.n != s2.n:
        raise InputError("surfaces must have the same n")
    _check_n_cap(p, s1.n)
    v = moves.decide_equivalence(s1, s2)
    lines = [f"{s1}  vs  {s2}: {v.status}"]
    if v.equivalent:
        for st in v.path:
            param = f" r'={st.parameter}" if st.parameter is not None else ""
            lines.append(f"  {st.kind}{param}: {st.source} -> {st.target}")
    else:
        lines.append(f"  witness: {v.witness['kind']}")
    return ({"s1": s1.as_list(), "s2": s2.as_list()}, v.to_json(),
            ["canonical moves c1-c6", "standard equivariant diffeomorphisms classify"], lines)


def cmd_orbit(p):
    s = _surface_from(p)
    _check_n_cap(p, s.n)
    orb = moves.orbit(s)
    result = orb.to_json()
    lines = [f"orbit of {s}: {len(orb)} states"]
    for st in orb.states:
        mode = "" if st.exact else f" (mod {2 * s.n})"
        lines.append(f"  a={st.a} b={st.b} r={st.rho}{mode}")
    return {"surface": s.as_list()}, result, ["canonical moves c1-c6"], lines


def cmd_normal_form(p):
    s = _surface_from(p)
    _check_n_cap(p, s.n)
    nf = moves.normal_form(s)
    return ({"surface": s.as_list()}, {"normal_form": nf.as_list()},
            ["canonical moves c1-c6"], [f"{s} ~ {nf}"])


def cmd_census(p):
    n = _order(p)
    _check_n_cap(p, n)
    seen = {}
    for a in range(n):
        for b in range(n):
            if gcd(gcd(a, b), n) != 1:
                continue
            for r in range(2 * n):
                s = surface.GHirzebruchSurface(n, a, b, r)
                st = moves.canonical_state(s)
                if any(st in orb for orb in seen.values()):
                    continue
                orb = moves.orbit(s)
                seen[min(orb.states)] = orb
    classes = []
    for st in sorted(seen):
        nf = moves.state_surface(n, st)
        classes.append({"normal_form": nf.as_list(), "orbit_size": len(seen[st])})
    lines = [f"F_{c['normal_form'][3]}({c['normal_form'][1]},{c['normal_form'][2]})"
             f"  orbit size {c['orbit_size']}" for c in classes]
    return {"n": n}, {"classes": classes, "count": len(classes)}, ["canonical moves c1-c6"], lines


def cmd_index(p):
    n = _order(p)
    if p.get("weights") is not None:
        pp, q, w = _int_list(p, "weights", 3)
        val = cyclotomic.index_contribution(n, pp, q, w)
        return ({"n": n, "weights": [pp, q, w]}, {"value": exact(val)},
                ["fixed-point contribution sum over n-th roots of unity"], [f"I = {val}"])
    a = _int(p, "a")
    table = swindex.integrality_table(n, a)
    result = {
        "assignments": [
            {"label": e.label, "rotations": [list(r) for r in e.rotations],
             "d": exact(e.d), "integral": e.integral}
            for e in table
        ],
        "admissible": [e.label for e in table if e.integral],
    }
    lines = [f"{e.label:13s} {_pairs_text(e.rotations):22s} d(E) = {e.d}"
             f"{'' if e.integral else '  (non-integral)'}" for e in table]
    return {"n": n, "a": a}, result, ["virtual dimension d(E) and its integrality"], lines


def cmd_dimension(p):
    n = _order(p)
    m = _int_list(p, "weights", 4)
    pairs = ((m[0], m[1]), (m[2], m[3]))
    if p.get("kdotc0") is not None:
        d = swindex.moduli_dimension(n, _int(p, "kdotc0"), pairs)
        inp = {"n": n, "K_dot_C0": _int(p, "kdotc0"), "weights": m}
    else:
        c0 = _int(p, "c0sq")
        d = swindex.moduli_dimension_from_square(n, c0, pairs)
        inp = {"n": n, "C0_square": c0, "weights": m}
    return inp, {"d": exact(d)}, ["orbifold moduli dimension of invariant sections"], [f"d = {d}"]


def cmd_cases(p):
    n = _order(p)
    if p.get("a") is not None:
        table = swindex.section_case_table(n, "pseudo-free", a=_int(p, "a"))
        manifold, c_sq = homology.ODD, -1
    else:
        rp = _int(p, "rp")
        table = swindex.section_case_table(n, "hirzebruch", b=_int(p, "b"), r_prime=rp)
        manifold, c_sq = (homology.ODD if rp % 2 else homology.EVEN), -rp
    result = table.to_json()
    lines = []
    for c in table.cases:
        val = "contradiction" if c.contradiction else f"C0^2 = {c.c0_square}"
        lines.append(f"({c.label}) {_pairs_text(c.pairs):16s} {val}")
    if n % 2 == 0 and n > 2:
        survivor = swindex.congruence_filter(manifold, c_sq, table)
        result["survivor"] = survivor
        lines.append(f"survivor after congruence filter: C0^2 = {survivor}")
    return {"n": n, **table.params}, result, ["section placements and C0^2 case table",
                                              "C.C0 congruence mod n"], lines


def cmd_obstruction(p):
    s = _surface_from(p)
    v = swindex.minus_one_sphere_obstruction(s)
    line = v.status if not v.unobstructed else f"unobstructed (u={v.u}, a={v.alpha})"
    return {"surface": s.as_list()}, v.to_json(), ["rotation numbers forced by an invariant (-1)-sphere"], [line]


def cmd_conic(p):
    g = _int(p, "g", required=False)
    if g is None:
        k = _int(p, "k", required=False)
        if k is None:
            raise InputError("conic needs -g (genus) or -k (singular fibers)")
        if k % 2:
            raise InputError("k = 2+2g must be even")
        g = (k - 2) // 2
    try:
        data = homology.ConicBundleData(g)
    except ValueError as e:
        raise InputError(str(e)) from None
    v = homology.conic_minimality(data)
    result = {"minimal": v.minimal, "verdict": v.message, "trace": list(v.trace),
              "identities": homology.conic_identities(data)}
    return {"g": g, "k": data.k}, result, ["conic bundle intersection form",
                                           "integer obstruction a^2(1+g) = 1"], [v.message]


def cmd_sum_oracle(p):
    n = _order(p)
    if p.get("weights") is not None:
        pp, q, w = _int_list(p, "weights", 3)
        term = cyclotomic.IndexSum(pp, q, w)
        ex = cyclotomic.index_contribution(n, pp, q, w)
        inp = {"n": n, "weights": [pp, q, w]}
    else:
        k = _int(p, "k")
        term = cyclotomic.ReciprocalSum(k)
        ex = cyclotomic.eval_sum_reciprocal(n, k)
        inp = {"n": n, "k": k}
    approx = cyclotomic.numeric_oracle(n, term)
    with mpmath.workdps(cyclotomic.ORACLE_DPS):
        err = abs(approx - mpmath.mpf(ex.numerator) / ex.denominator)
        text = mpmath.nstr(approx, 40)
        agree = bool(err < mpmath.mpf(10) ** -30)
    if not agree:
        raise AssertionError(f"exact value {ex} disagrees with numeric oracle {text}")
    result = {"exact": exact(ex), "approximate": text, "agree": agree}
    return inp, result, ["numeric summation over n-th roots of unity"], [f"exact {ex}  ~  {text} (approximate)"]


def cmd_enumerate(p):
    manifold = p.get("manifold", homology.ODD)
    if manifold not in homology.MANIFOLDS:
        raise InputError("manifold must be 'odd' or 'even'")
    s = _int(p, "square")
    bound = _int(p, "bound", required=False) or 50
    if bound < 1:
        raise InputError("bound must be >= 1")
    found = homology.enumerate_square_classes(manifold, s, bound)
    result = {"classes": [list(c.coeffs) for c in found], "count": len(found)}
    return ({"manifold": manifold, "square": s, "bound": bound}, result,
            ["intersection form of the rational ruled surfaces"],
            [f"{len(found)} classes"] + [f"  {c.coeffs}" for c in found])


HANDLERS: dict[str, Callable] = {
    "surface": cmd_surface,
    "signature": cmd_signature,
    "seifert": cmd_seifert,
    "equiv": cmd_equiv,
    "orbit": cmd_orbit,
    "normal-form": cmd_normal_form,
    "census": cmd_census,
    "index": cmd_index,
    "dimension": cmd_dimension,
    "cases": cmd_cases,
    "obstruction": cmd_obstruction,
    "conic": cmd_conic,
    "sum-oracle": cmd_sum_oracle,
    "enumerate": cmd_enumerate,
}

INTERNAL_ERRORS = (cyclotomic.NonRationalError, moves.StateSpaceOverflow, AssertionError)


def run(request: Request) -> Response:
    """Dispatch one request; never raises."""
    params = {k: v for k, v in request.params.items() if v is not None}
    base = {"command": request.command}
    handler = HANDLERS.get(request.command)
    try:
        if handler is None:
            raise InputError(f"unknown command {request.command!r}")
        inp, result, citations, lines = handler(params)
    except INTERNAL_ERRORS as e:
        payload = {**base, "input": params, "error": {"kind": "internal", "message": str(e)}}
        return Response(payload, [f"internal error: {e}"], EXIT_INTERNAL)
    except (ValueError, TypeError, ZeroDivisionError) as e:
        payload = {**base, "input": params, "error": {"kind": "input", "message": str(e)}}
        return Response(payload, [f"error: {e}"], EXIT_INPUT)
    payload = {**base, "input": inp, "result": result, "citations": citations}
    return Response(payload, lines)


def batch(lines, out=sys.stdout) -> int:
    """Answer JSON-line requests in order; a bad line yields an error record."""
    worst = EXIT_OK
    for raw in lines:
        raw = raw.strip()
        if not raw:
            continue
        try:
            obj = json.loads(raw)
            if not isinstance(obj, dict) or "command" not in obj:
                raise InputError("request must be an object with a 'command' field")
            params = obj.get("params", {})
            if not isinstance(params, dict):
                raise InputError("'params' must be an object")
            resp = run(Request(obj["command"], params, "json"))
        except (ValueError, InputError) as e:
            resp = Response({"command": None, "input": raw,
                             "error": {"kind": "input", "message": str(e)}}, [], EXIT_INPUT)
        out.write(resp.render("json") + "\n")
        worst = max(worst, resp.code)
    return worst


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="ghirzebruch",
        description="Classification and index computations for cyclic G-Hirzebruch surfaces.",
    )
    ap.add_argument("command", nargs="?", help="one of: " + ", ".join(COMMANDS))
    ap.add_argument("-n", type=int, help="group order")
    ap.add_argument("-a", type=int)
    ap.add_argument("-b", type=int)
    ap.add_argument("-r", type=int, help="Hirzebruch index (exact; negative allowed)")
    ap.add_argument("-g", type=int, help="genus of the fixed bisection (conic)")
    ap.add_argument("-k", type=int, help="weight k (sum-oracle) or singular fibers (conic)")
    ap.add_argument("--s1", help="first surface as a,b,r")
    ap.add_argument("--s2", help="second surface as a,b,r")
    ap.add_argument("--rp", type=int, help="r' for the hirzebruch case table")
    ap.add_argument("--weights", help="comma-separated weights")
    ap.add_argument("--kdotc0", type=int, help="K.C0 for the dimension command")
    ap.add_argument("--c0sq", type=int, help="C0^2 for the dimension command")
    ap.add_argument("--manifold", choices=homology.MANIFOLDS, help="for enumerate")
    ap.add_argument("--square", type=int, help="target self-intersection for enumerate")
    ap.add_argument("--bound", type=int, help="coefficient bound for enumerate (default 50)")
    ap.add_argument("--cap", type=int, help=f"largest n for orbit/census/equiv (default {DEFAULT_N_CAP})")
    ap.add_argument("--json", action="store_true", help="emit JSON")
    ap.add_argument("--batch", action="store_true", help="read JSON-line requests from stdin")
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    if args.batch:
        return batch(sys.stdin)
    if not args.command:
        ap.print_usage(sys.stderr)
        return EXIT_INPUT
    params = {k: v for k, v in vars(args).items() if k not in ("command", "json", "batch")}
    mode = "json" if args.json else "table"
    resp = run(Request(args.command, params, mode))
    stream = sys.stdout if resp.code == EXIT_OK or mode == "json" else sys.stderr
    print(resp.render(mode), file=stream)
    return resp.code


if __name__ == "__main__":
    sys.exit(main())
