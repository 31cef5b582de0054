"""Command-line interface.

Subcommands cover the scalar kernel (eps), the rescaling maps and fans
(xi, fan), dual-monoid Hilbert bases (hilbert), building cones (bt), the
Tate-quotient lab (tate), the boundary atlas (atlas, satake-check), and
self-verification suites that emit TSV reports (verify).

All output is deterministic: JSON is emitted with sorted keys, rays and
cones in canonical sorted order, and rationals as "a/b" strings.  Random
sampling is driven by a seed that is split per suite via
random.Random(f"{seed}:{suite}").

Exit codes: 0 success, 1 a verification failed, 2 usage error.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from fractions import Fraction

from . import epsilon as eps_mod
from .atlas import (chart_monomials, component_graph, division_polynomial_exponents,
                    division_polynomial_is_symmetric, slope_fan,
                    slope_fan_is_smooth, symmetric_identity_holds)
from .bruhat_tits import simplex_cone, standard_simplex_cone
from .cones import Cone, dual_monoid_hilbert_basis
from .drinfeld import (class_point_of_steps, iterate_tate,
                       predicted_torsion_valuations, torsion_valuations)
from .gf import Poly, gf
from .xi import (sigma_k_fan, sigma_kk_map, sigma_upper_fan, xi_eval,
                 xi_eval_coords)

USAGE_ERROR = 2


def _frac(s: str) -> Fraction:
    return Fraction(s)


def _frac_str(x) -> str:
    f = Fraction(x)
    return f"{f.numerator}/{f.denominator}" if f.denominator != 1 \
        else str(f.numerator)


def _parse_vec(s: str) -> list[Fraction]:
    return [Fraction(p) for p in s.split(",") if p != ""]


def _parse_cone(s: str, n: int | None = None) -> Cone:
    rays = [[int(x) for x in part.split(",")]
            for part in s.split(";") if part]
    return Cone.from_rays(rays, n=n or (len(rays[0]) if rays else 1))


def _cone_json(c: Cone) -> dict:
    return {"rays": sorted(list(r) for r in c.rays()),
            "lines": sorted(list(r) for r in c.lines()),
            "dim": c.dim()}


def _fan_json(fan) -> dict:
    cones = sorted((_cone_json(c) for c in fan),
                   key=lambda d: (d["dim"], d["rays"]))
    maximal = sorted((_cone_json(c) for c in fan.maximal_cones()),
                     key=lambda d: (d["dim"], d["rays"]))
    return {"cones": cones, "maximal": maximal, "size": len(cones)}


def _emit(obj, out: str | None) -> None:
    text = json.dumps(obj, sort_keys=True, indent=2) + "\n"
    if out:
        with open(out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _matrix_json(mat) -> list[list[str]]:
    return [[_frac_str(x) for x in row] for row in mat]


# ---------------------------------------------------------------------------
# command implementations


def cmd_eps(args) -> int:
    w = _parse_vec(args.weights) if args.weights else []
    if args.action in ("eval", "closed"):
        x = Fraction(args.x)
        if args.action == "closed" or args.method == "closed":
            v = eps_mod.epsilon_closed(args.q, args.r, w, x)
        elif args.method == "oracle":
            v = eps_mod.epsilon_oracle(args.q, args.r, w, x)
        else:
            v = eps_mod.epsilon(args.q, args.r, w, x)
        print(_frac_str(v))
    elif args.action == "delta":
        v = eps_mod.delta(args.q, args.r, w) if w else Fraction(0)
        print(_frac_str(v))
    elif args.action == "inv":
        print(_frac_str(eps_mod.epsilon_inv(args.q, args.r, w,
                                            Fraction(args.x))))
    return 0


def cmd_xi(args) -> int:
    if args.action == "eval":
        coords = _parse_vec(args.coords)
        out = xi_eval_coords(args.q, args.k, coords)
        _emit({"image": [_frac_str(x) for x in out]}, args.out)
        return 0
    if args.action == "linearize":
        m = sigma_kk_map(args.q, args.d, args.k, args.kprime, seed=args.seed)
        pieces = sorted(
            ({"cone": _cone_json(c), "matrix": _matrix_json(mat)}
             for c, mat in m.pieces),
            key=lambda p: p["cone"]["rays"])
        _emit({"pieces": pieces}, args.out)
        return 0
    return USAGE_ERROR


def cmd_fan(args) -> int:
    if args.action == "sigma-upper":
        fan = sigma_upper_fan(args.q, args.d, args.k)
        _emit(_fan_json(fan), args.out)
        return 0
    if args.action == "sigma-k":
        fan, pieces = sigma_k_fan(args.q, args.d, args.k, seed=args.seed)
        obj = _fan_json(fan)
        obj["pieces"] = sorted(
            ({"source": _cone_json(p["source"]),
              "image": _cone_json(p["image"]),
              "matrix": _matrix_json(p["matrix"])} for p in pieces),
            key=lambda p: p["source"]["rays"])
        _emit(obj, args.out)
        return 0
    if args.action == "sigma-kk":
        m = sigma_kk_map(args.q, args.d, args.k, args.kprime, seed=args.seed)
        pieces = sorted(
            ({"cone": _cone_json(c), "matrix": _matrix_json(mat)}
             for c, mat in m.pieces),
            key=lambda p: p["cone"]["rays"])
        _emit({"pieces": pieces}, args.out)
        return 0
    if args.action == "join":
        left, _ = sigma_k_fan(args.q, args.d, args.k, seed=args.seed)
        right, _ = sigma_k_fan(args.q, args.d, args.kprime, seed=args.seed)
        _emit(_fan_json(left.join(right)), args.out)
        return 0
    if args.action == "refine":
        cone = _parse_cone(args.cone)
        from .cones import Fan
        refined = Fan([cone]).regular_refinement()
        _emit(_fan_json(refined), args.out)
        return 0
    return USAGE_ERROR


def cmd_hilbert(args) -> int:
    cone = _parse_cone(args.cone)
    data = dual_monoid_hilbert_basis(cone)
    _emit({"generators": sorted(list(g) for g in data["generators"]),
           "lineality": sorted(list(g) for g in data["lineality"])},
          args.out)
    return 0


def cmd_bt(args) -> int:
    if args.action == "simplex":
        c = standard_simplex_cone(args.q, args.n, r=args.r)
        _emit(_cone_json(c), args.out)
        return 0
    if args.action == "cone":
        sets = [[int(x) for x in part.split(",")]
                for part in args.sets.split(";") if part]
        c = simplex_cone(sets, args.q, r=args.r)
        _emit(_cone_json(c), args.out)
        return 0
    return USAGE_ERROR


def cmd_tate(args) -> int:
    ms = [int(x) for x in args.ms.split(",")]
    module, steps = iterate_tate(args.q, args.r, ms, args.precision)
    cp = class_point_of_steps(args.q, args.r, ms)
    obj = {
        "rank": module.rank,
        "z_degree": module.phi_T.z_degree(),
        "top_valuations": [s.top_valuation for s in steps],
        "class_point_powers": [_frac_str(v) for v in cp.values],
        "power_exponent": cp.pow_exponent,
    }
    if args.action == "torsion":
        field = gf(args.q)
        ncoeffs = [int(x) for x in args.N.split(",")]
        N = Poly.make(field, ncoeffs)
        actual = torsion_valuations(module, N)
        predicted = predicted_torsion_valuations(args.q, args.r, ms, N)
        obj["torsion_actual"] = [[_frac_str(v), m] for v, m in actual]
        obj["torsion_predicted"] = [[_frac_str(v), m] for v, m in predicted]
        obj["match"] = actual == predicted
        _emit(obj, args.out)
        return 0 if actual == predicted else 1
    _emit(obj, args.out)
    return 0


def cmd_atlas(args) -> int:
    if args.action == "graph":
        comps, edges = component_graph(args.q, args.m)
        obj = {"components": len(comps), "edges": len(edges),
               "by_kind": {
                   "point": sum(1 for c in comps if c[0] == "point"),
                   "line": sum(1 for c in comps if c[0] == "line"),
                   "flag": sum(1 for c in comps if c[0] == "flag")}}
        _emit(obj, args.out)
        if args.dot:
            _write_dot(comps, edges, args.dot)
        return 0
    if args.action == "charts":
        alphas = _parse_vec(args.alphas) if args.alphas else []
        fan = slope_fan(alphas)
        charts = sorted(
            ({"rays": sorted(list(r) for r in c.rays()),
              "monomials": chart_monomials(c)}
             for c in fan.maximal_cones()),
            key=lambda d: d["rays"])
        from .atlas import slope_determinants, slope_fan_is_interior_smooth
        _emit({"smooth": slope_fan_is_smooth(alphas),
               "interior_smooth": slope_fan_is_interior_smooth(alphas),
               "determinants": slope_determinants(alphas),
               "charts": charts}, args.out)
        return 0
    return USAGE_ERROR


def _comp_name(c) -> str:
    if c[0] == "point":
        return "P_" + "".join(str(x) for x in c[1])
    if c[0] == "line":
        return "L_" + "".join(str(x) for x in c[1])
    return ("F_" + "".join(str(x) for x in c[1]) + "_"
            + "".join(str(x) for x in c[2]) + f"_{c[3]}")


def _write_dot(comps, edges, path: str) -> None:
    lines = ["graph boundary {"]
    for c in sorted(comps, key=_comp_name):
        lines.append(f'  "{_comp_name(c)}";')
    for a, b in sorted(edges, key=lambda e: (_comp_name(e[0]),
                                             _comp_name(e[1]))):
        lines.append(f'  "{_comp_name(a)}" -- "{_comp_name(b)}";')
    lines.append("}")
    with open(path, "w") as fh:
        fh.write("\n".join(lines) + "\n")


def cmd_satake_check(args) -> int:
    rows = []
    ok1 = symmetric_identity_holds(2)
    rows.append(("satake", "symmetric-identity", "True", str(ok1),
                 "pass" if ok1 else "FAIL"))
    exps = division_polynomial_exponents(2)
    ok2 = exps == [1, 2, 4, 8]
    rows.append(("satake", "division-exponents", "[1, 2, 4, 8]", str(exps),
                 "pass" if ok2 else "FAIL"))
    ok3 = division_polynomial_is_symmetric(2)
    rows.append(("satake", "gl3-invariance", "True", str(ok3),
                 "pass" if ok3 else "FAIL"))
    _print_tsv(rows)
    return 0 if ok1 and ok2 and ok3 else 1


def _print_tsv(rows) -> None:
    print("suite\tcase\texpected\tgot\tstatus")
    for row in rows:
        print("\t".join(str(x) for x in row))


def _rand_frac(rng: random.Random) -> Fraction:
    return Fraction(rng.randint(1, 64), rng.randint(1, 8))


def cmd_verify(args) -> int:
    if args.suite == "identities":
        return _verify_identities(args)
    if args.suite == "tate":
        return _verify_tate(args)
    if args.suite == "sigk3":
        return _verify_sigk3(args)
    return USAGE_ERROR


def _verify_identities(args) -> int:
    rng = random.Random(f"{args.seed}:identities")
    rows = []
    failures = 0
    count = args.count
    for q in (2, 3):
        for case in range(count):
            r = rng.randint(1, 3)
            n = rng.randint(1, 3)
            w = sorted(_rand_frac(rng) for _ in range(n))
            x = _rand_frac(rng) * max(w)
            got = eps_mod.epsilon_closed(q, r, w, x)
            want = eps_mod.epsilon_oracle(q, r, w, x)
            ok = got == want
            failures += not ok
            if case < 3 or not ok:
                rows.append((f"closed-vs-oracle-q{q}", case,
                             _frac_str(want), _frac_str(got),
                             "pass" if ok else "FAIL"))
        for case in range(count):
            r = rng.randint(1, 3)
            n = rng.randint(1, 3)
            w = sorted(_rand_frac(rng) for _ in range(n))
            x = _rand_frac(rng) * max(w) + max(w)  # x >= s_n
            lhs = eps_mod.epsilon_hat(q, r, w, q ** r * x)
            rhs = q ** (r + n) * eps_mod.epsilon_hat(q, r, w, x)
            ok = lhs == rhs
            failures += not ok
            if case < 3 or not ok:
                rows.append((f"scaling-q{q}", case, _frac_str(rhs),
                             _frac_str(lhs), "pass" if ok else "FAIL"))
        for case in range(count):
            r = rng.randint(1, 3)
            n = rng.randint(2, 3)
            w = sorted(_rand_frac(rng) for _ in range(n))
            lhs = eps_mod.delta(q, r, w)
            s1 = w[0]
            rest = [eps_mod.epsilon_hat1(q, r, s1, t) for t in w[1:]]
            rhs = eps_mod.delta(q, r, [s1]) + eps_mod.delta(q, r + 1, rest)
            ok = lhs == rhs
            failures += not ok
            if case < 3 or not ok:
                rows.append((f"delta-split-q{q}", case, _frac_str(rhs),
                             _frac_str(lhs), "pass" if ok else "FAIL"))
        for case in range(count):
            r = rng.randint(1, 3)
            n = rng.randint(1, 3)
            w = sorted(_rand_frac(rng) for _ in range(n + 1))
            lhs = eps_mod.delta(q, r, w)
            rhs = (eps_mod.delta(q, r, w[:-1])
                   + Fraction(q - 1, q ** (r + n + 1) - 1)
                   * eps_mod.epsilon_hat(q, r, w[:-1], w[-1]))
            ok = lhs == rhs
            failures += not ok
            if case < 3 or not ok:
                rows.append((f"delta-extend-q{q}", case, _frac_str(rhs),
                             _frac_str(lhs), "pass" if ok else "FAIL"))
    _print_tsv(rows)
    print(f"# failures: {failures}")
    return 0 if failures == 0 else 1


def _verify_tate(args) -> int:
    rows = []
    failures = 0
    for (q, r, ms) in [(2, 1, [1]), (2, 1, [2]), (3, 1, [1]), (2, 1, [1, 3])]:
        module, steps = iterate_tate(q, r, ms, args.precision)
        field = gf(q)
        N = Poly.T(field)
        actual = torsion_valuations(module, N)
        predicted = predicted_torsion_valuations(q, r, ms, N)
        ok = actual == predicted
        failures += not ok
        rows.append((f"tate-q{q}-r{r}", ",".join(map(str, ms)),
                     str(predicted), str(actual), "pass" if ok else "FAIL"))
    _print_tsv(rows)
    return 0 if failures == 0 else 1


def _verify_sigk3(args) -> int:
    rows = []
    failures = 0
    for k in (1, 2, 3):
        fan = sigma_upper_fan(args.q, 3, k)
        got = len(fan.maximal_cones())
        ok = got == k
        failures += not ok
        rows.append((f"sigk3-q{args.q}", f"k={k}", k, got,
                     "pass" if ok else "FAIL"))
    _print_tsv(rows)
    return 0 if failures == 0 else 1


# ---------------------------------------------------------------------------
# parser


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="drinfan",
                                description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("eps", help="scalar kernel evaluation")
    sp.add_argument("action", choices=["eval", "closed", "delta", "inv"])
    sp.add_argument("--q", type=int, required=True)
    sp.add_argument("--r", type=int, default=1)
    sp.add_argument("--weights", default="")
    sp.add_argument("--x", default="0")
    sp.add_argument("--method", choices=["auto", "oracle", "closed"],
                    default="auto")
    sp.set_defaults(func=cmd_eps)

    sp = sub.add_parser("xi", help="rescaling maps")
    sp.add_argument("action", choices=["eval", "linearize"])
    sp.add_argument("--q", type=int, required=True)
    sp.add_argument("--k", type=int, default=1)
    sp.add_argument("--kprime", type=int, default=2)
    sp.add_argument("--d", type=int, default=3)
    sp.add_argument("--coords", "--point", dest="coords", default="")
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--out")
    sp.set_defaults(func=cmd_xi)

    sp = sub.add_parser("fan", help="comparison and image fans")
    sp.add_argument("action", choices=["sigma-upper", "sigma-k", "sigma-kk",
                                       "join", "refine"])
    sp.add_argument("--q", type=int, default=2)
    sp.add_argument("--d", type=int, default=3)
    sp.add_argument("--k", type=int, default=1)
    sp.add_argument("--kprime", type=int, default=2)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--cone", default="")
    sp.add_argument("--out")
    sp.set_defaults(func=cmd_fan)

    sp = sub.add_parser("hilbert", help="dual-monoid Hilbert basis")
    sp.add_argument("--cone", required=True,
                    help="rays as 'a,b;c,d;...'")
    sp.add_argument("--out")
    sp.set_defaults(func=cmd_hilbert)

    sp = sub.add_parser("bt", help="building cones")
    sp.add_argument("action", choices=["simplex", "cone"])
    sp.add_argument("--q", type=int, required=True)
    sp.add_argument("--n", type=int, default=2)
    sp.add_argument("--r", type=int, default=1)
    sp.add_argument("--sets", default="",
                    help="diagonal exponent vectors as 'a,b;c,d;...'")
    sp.add_argument("--out")
    sp.set_defaults(func=cmd_bt)

    sp = sub.add_parser("tate", help="Tate-quotient lab")
    sp.add_argument("action", choices=["quotient", "torsion"])
    sp.add_argument("--q", type=int, required=True)
    sp.add_argument("--r", type=int, default=1)
    sp.add_argument("--ms", required=True, help="lattice exponents '1,3'")
    sp.add_argument("--N", default="0,1",
                    help="level polynomial coefficients, lowest first")
    sp.add_argument("--precision", type=int, default=48)
    sp.add_argument("--out")
    sp.set_defaults(func=cmd_tate)

    sp = sub.add_parser("atlas", help="boundary atlas")
    sp.add_argument("action", choices=["graph", "charts"])
    sp.add_argument("--q", type=int, default=2)
    sp.add_argument("--m", type=int, default=0)
    sp.add_argument("--alphas", default="", help="slopes '3/2,2'")
    sp.add_argument("--dot", help="write DOT graph to this path")
    sp.add_argument("--out")
    sp.set_defaults(func=cmd_atlas)

    sp = sub.add_parser("satake-check",
                        help="degree-one symmetric identity checks")
    sp.set_defaults(func=cmd_satake_check)

    sp = sub.add_parser("verify", help="verification suites (TSV report)")
    sp.add_argument("suite", choices=["identities", "tate", "sigk3"])
    sp.add_argument("--q", type=int, default=2)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--count", "--trials", dest="count", type=int,
                    default=200)
    sp.add_argument("--precision", type=int, default=48)
    sp.set_defaults(func=cmd_verify)

    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return USAGE_ERROR if exc.code not in (0,) else 0
    try:
        return args.func(args)
    except (ValueError, ArithmeticError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE_ERROR


if __name__ == "__main__":
    sys.exit(main())
