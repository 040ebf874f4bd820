"""Command-line surface: verification suite, state inspection, transition
probabilities and CHSH evaluation/optimization with machine-readable output.

Exit codes: 0 success, 1 check failure (failed verification, infeasible
optimization, baseline mismatch), 2 input error.  JSON output formats every
float with 17 significant digits so identical runs are byte-identical.
"""

from __future__ import annotations

import argparse
import math
import random
import sys
from dataclasses import dataclass

from . import chsh
from .grassmann import (
    Supernumber,
    berezin,
    inv_sqrt,
    invert,
    modified_rogers,
    pair_product,
    rogers_r1,
)
from .supermatrix import Supermatrix, exp_nilpotent, graded_kron, supertrace
from .superstate import (
    SuperState,
    apply_local,
    compactify,
    grassmann_outcomes,
    grassmann_transition,
    inner_product,
    is_physical,
    measure_real,
    norm_supernumber,
    physical_pair,
    superqubit,
    tensor,
    transition_real,
    upsilon,
)
from .uosp import GroupElementParams, group_element, odd_exponent, s_matrix, u_matrix


@dataclass(frozen=True)
class RunConfig:
    """Optimizer settings as supplied by flags or a JSON config file."""

    seed: int = 0
    restarts: int = 200
    max_iters: int = 2000
    penalty_weight: float = 1000.0
    tolerance: float = 1e-9
    quantum_only: bool = False

    def to_optimize_config(self) -> chsh.OptimizeConfig:
        return chsh.OptimizeConfig(
            seed=self.seed, restarts=self.restarts, max_iters=self.max_iters,
            penalty_weight=self.penalty_weight, tolerance=self.tolerance,
            quantum_only=self.quantum_only,
        )


# -- deterministic JSON ---------------------------------------------------------


def _json_escape(s: str) -> str:
    out = []
    for ch in s:
        if ch == '"':
            out.append('\\"')
        elif ch == "\\":
            out.append("\\\\")
        elif ord(ch) < 0x20:
            out.append(f"\\u{ord(ch):04x}")
        else:
            out.append(ch)
    return '"' + "".join(out) + '"'


def dumps(obj) -> str:
    """Compact JSON with floats fixed to 17 significant digits."""
    if obj is None:
        return "null"
    if isinstance(obj, bool):
        return "true" if obj else "false"
    if isinstance(obj, int):
        return str(obj)
    if isinstance(obj, float):
        return format(obj, ".17g")
    if isinstance(obj, str):
        return _json_escape(obj)
    if isinstance(obj, dict):
        return "{" + ",".join(f"{_json_escape(str(k))}:{dumps(v)}" for k, v in obj.items()) + "}"
    if isinstance(obj, (list, tuple)):
        return "[" + ",".join(dumps(v) for v in obj) + "]"
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def strategy_to_dict(s: chsh.Strategy) -> dict:
    return {
        "pA": s.p_a,
        "pB": s.p_b,
        "r": list(s.r),
        "s": list(s.s),
        "alice": [{"theta": t, "phi": f} for (t, f) in s.alice],
        "bob": [{"theta": t, "phi": f} for (t, f) in s.bob],
    }


def strategy_from_dict(d: dict) -> chsh.Strategy:
    try:
        angles = {}
        for key in ("alice", "bob"):
            pairs = d[key]
            if len(pairs) != 2:
                raise ValueError(f"{key} needs exactly two angle pairs")
            angles[key] = tuple(
                (float(p["theta"]), float(p["phi"])) for p in pairs
            )
        r = d["r"]
        s = d["s"]
        if len(r) != 2 or len(s) != 2:
            raise ValueError("r and s each need exactly two entries")
        return chsh.Strategy(
            p_a=float(d["pA"]), p_b=float(d["pB"]),
            r=(float(r[0]), float(r[1])), s=(float(s[0]), float(s[1])),
            alice=angles["alice"], bob=angles["bob"],
        )
    except (KeyError, TypeError, IndexError) as exc:
        raise ValueError(f"malformed strategy object: {exc}") from exc


def tables_to_dict(tables) -> dict:
    return {
        f"{i}{j}": [float(p) for p in tables[k]]
        for k, (i, j) in enumerate(chsh.SETTINGS)
    }


def write_tables_csv(path: str, tables) -> None:
    import csv

    with open(path, "w", newline="") as fh:
        wr = csv.writer(fh)
        wr.writerow(["i", "j", "outcome", "probability"])
        for k, (i, j) in enumerate(chsh.SETTINGS):
            for m, label in enumerate(chsh.OUTCOME_LABELS):
                wr.writerow([i, j, label, format(float(tables[k][m]), ".17g")])


# -- verification suite ----------------------------------------------------------


def _rand_homog(rng, order, parity):
    terms = {}
    for m in range(1 << order):
        if bin(m).count("1") % 2 == parity and rng.random() < 0.8:
            terms[m] = complex(rng.uniform(-1, 1), rng.uniform(-1, 1))
    return Supernumber(order, terms)


def _rand_super(rng, order):
    terms = {
        m: complex(rng.uniform(-1, 1), rng.uniform(-1, 1))
        for m in range(1 << order)
        if rng.random() < 0.7
    }
    return Supernumber(order, terms)


def _rand_matrix(rng, order, rp, cp, parity):
    ents = [
        [_rand_homog(rng, order, (ri + cj + parity) % 2) for cj in cp]
        for ri in rp
    ]
    return Supermatrix(ents, rp, cp, parity, order=order)


def _resid(sn: Supernumber) -> float:
    return max((abs(c) for c in sn.terms().values()), default=0.0)


def _mat_resid(m: Supermatrix) -> float:
    worst = 0.0
    for i in range(m.shape[0]):
        for j in range(m.shape[1]):
            worst = max(worst, _resid(m[i, j]))
    return worst


def _pairing(u: Supermatrix, v: Supermatrix) -> Supernumber:
    return (u.grade_adjoint() @ v)[0, 0]


def _checks(inject_sign_fault: bool):
    """Yield (name, residual, tolerance) for every verified identity."""
    rng = random.Random(20240917)

    # hash and star involutions
    worst = 0.0
    for order in (2, 4):
        for _ in range(40):
            a = _rand_super(rng, order)
            b = _rand_super(rng, order)
            hh = a.hash().hash()
            expect = a.even_part() - a.odd_part()
            worst = max(worst, _resid(hh - expect))
            worst = max(worst, _resid(a.star().star() - a))
            worst = max(worst, _resid((a * b).hash() - a.hash() * b.hash()))
            worst = max(worst, _resid((a * b).star() - b.star() * a.star()))
    yield "involutions: hash grade-involution, star involution", worst, 1e-12

    # Berezin and Rogers machinery
    worst = 0.0
    for _ in range(50):
        c = complex(rng.uniform(-2, 2), rng.uniform(-2, 2))
        a = Supernumber.one(2) + pair_product(1, 2) * c
        worst = max(worst, abs(modified_rogers(a) - (1 - c)))
        worst = max(worst, abs(rogers_r1(a) - (1 + abs(c))))
    x = Supernumber.generator(1, 2) * 2.5 + Supernumber.one(2)
    worst = max(worst, _resid(berezin(x, 1) - Supernumber.from_complex(2.5, 2)))
    yield "Berezin integral and Rogers norms", worst, 1e-12

    # exact series inverses
    worst = 0.0
    for _ in range(20):
        a = _rand_super(rng, 4)
        body = a.body
        if abs(body) < 0.3:
            a = a + Supernumber.from_complex(1.0, 4)
        worst = max(worst, _resid(invert(a) * a - Supernumber.one(4)))
        pos = a.hash() * a + Supernumber.from_complex(0.5, 4)
        pos = pos.even_part()
        riv = inv_sqrt(pos)
        worst = max(worst, _resid(riv * riv * pos - Supernumber.one(4)))
    yield "invert and inv_sqrt are exact series inverses", worst, 1e-10

    # supertranspose laws
    worst = 0.0
    for _ in range(40):
        rp = tuple(rng.randint(0, 1) for _ in range(3))
        cp = tuple(rng.randint(0, 1) for _ in range(3))
        sp, tp = rng.randint(0, 1), rng.randint(0, 1)
        x = _rand_matrix(rng, 2, rp, cp, sp)
        y = _rand_matrix(rng, 2, cp, rp, tp)
        st4 = x.supertranspose().supertranspose().supertranspose().supertranspose()
        worst = max(worst, _mat_resid(st4 - x))
        lhs = (x @ y).supertranspose()
        rhs = y.supertranspose() @ x.supertranspose()
        if sp * tp:
            rhs = -rhs
        worst = max(worst, _mat_resid(lhs - rhs))
    yield "supertranspose: order four and composition law", worst, 1e-12

    # supertrace graded cyclicity and scalar rules
    worst = 0.0
    for _ in range(40):
        rp = tuple(rng.randint(0, 1) for _ in range(3))
        sp, tp = rng.randint(0, 1), rng.randint(0, 1)
        x = _rand_matrix(rng, 2, rp, rp, sp)
        y = _rand_matrix(rng, 2, rp, rp, tp)
        lhs = supertrace(x @ y)
        rhs = supertrace(y @ x)
        if sp * tp:
            rhs = -rhs
        worst = max(worst, _resid(lhs - rhs))
        zeta = _rand_homog(rng, 2, 1)
        if sp:
            worst = max(worst, _mat_resid(zeta * x + x * zeta))
    yield "supertrace cyclicity; odd scalars anticommute with odd matrices", worst, 1e-12

    # grade adjoint pairing (sign fault hook lives here)
    worst = 0.0
    for order in (2, 4):
        for spar in (0, 1):
            for zpar in (0, 1):
                for _ in range(25):
                    rp = tuple(rng.randint(0, 1) for _ in range(3))
                    s_mat = _rand_matrix(rng, order, rp, rp, spar)
                    z = Supermatrix.column(
                        [_rand_homog(rng, order, (p + zpar) % 2) for p in rp],
                        rp, zpar, order=order)
                    wpar = rng.randint(0, 1)
                    w = Supermatrix.column(
                        [_rand_homog(rng, order, (p + wpar) % 2) for p in rp],
                        rp, wpar, order=order)
                    lhs = _pairing(s_mat @ z, w)
                    rhs = _pairing(z, s_mat.grade_adjoint() @ w)
                    sign = -1 if (spar * zpar) else 1
                    if inject_sign_fault:
                        sign = 1
                    worst = max(worst, _resid(lhs - rhs * sign))
    yield "grade adjoint moves across the pairing with (-1)^(|S||z|)", worst, 1e-12

    # group structure
    worst = 0.0
    for _ in range(25):
        p, q = rng.uniform(-1, 1), rng.uniform(-1, 1)
        worst = max(worst, _mat_resid(s_matrix(p) @ s_matrix(q) - s_matrix(p + q)))
        eta = Supernumber.eta(1, 2)
        worst = max(worst, _mat_resid(
            exp_nilpotent(odd_exponent(eta * (2 * p))) - s_matrix(p)))
        params = GroupElementParams(rng.uniform(-3, 3), rng.uniform(-3, 3), p)
        z = group_element(params)
        ident = Supermatrix.identity((0, 0, 1), 2)
        worst = max(worst, _mat_resid(z.grade_adjoint() @ z - ident))
    yield "one-parameter subgroup, closed form, superunitarity", worst, 1e-12

    # state normalization and measurement
    worst = 0.0
    for _ in range(25):
        st = superqubit(rng.uniform(-1, 1), rng.uniform(-3, 3), rng.uniform(-3, 3))
        worst = max(worst, _resid(norm_supernumber(st) - Supernumber.one(2)))
    ups = upsilon(rng.uniform(-0.5, 0.5), rng.uniform(-0.5, 0.5))
    total = Supernumber.zero(4)
    for t in grassmann_outcomes(ups):
        total = total + t
    worst = max(worst, _resid(total - Supernumber.one(4)))
    yield "superqubit norm 1; two-party probabilities sum to 1", worst, 1e-12

    # transition probability against the closed form
    worst = 0.0
    for _ in range(50):
        p, q = rng.uniform(-1, 1), rng.uniform(-1, 1)
        t1, f1, t2, f2 = (rng.uniform(-3, 3) for _ in range(4))
        u = superqubit(p, t1, f1)
        v = superqubit(q, t2, f2)
        import cmath

        a, b = math.cos(t1), cmath.exp(1j * f1) * math.sin(t1)
        c, d = math.cos(t2), cmath.exp(1j * f2) * math.sin(t2)
        ov = a.conjugate() * c + b.conjugate() * d
        want = (ov.conjugate() * ov).real * (1 - (p - q) ** 2)
        worst = max(worst, abs(transition_real(u, v) - want))
    yield "transition probability closed form", worst, 1e-12

    # CHSH baselines and the vectorized evaluator
    worst = abs(chsh.win_prob(chsh.Strategy.tsirelson()) - math.cos(math.pi / 8) ** 2)
    worst = max(worst, abs(chsh.best_classical_win_prob() - 0.75))
    for _ in range(3):
        strat = chsh.Strategy.from_vector(
            [rng.uniform(-0.5, 0.5) for _ in range(6)]
            + [rng.uniform(-math.pi, math.pi) for _ in range(8)])
        ft = chsh.fast_outcome_tables(strat)
        for k, (i, j) in enumerate(chsh.SETTINGS):
            ex = chsh.outcome_probs(i, j, strat)
            worst = max(worst, max(abs(ft[k][m] - ex[m]) for m in range(9)))
        quantum = chsh.Strategy(alice=strat.alice, bob=strat.bob)
        worst = max(worst, abs(chsh.win_prob(quantum) - chsh.oracle_win_prob(quantum)))
    yield "game baselines; vectorized evaluator matches exact path", worst, 1e-10


def cmd_verify(inject_sign_fault: bool = False, verbose: bool = False) -> int:
    failures = 0
    for name, resid, tol in _checks(inject_sign_fault):
        ok = resid < tol
        if not ok:
            failures += 1
        status = "pass" if ok else "FAIL"
        if verbose:
            print(f"[{status}] {name}  (residual {resid:.3e}, tolerance {tol:.0e})")
        else:
            print(f"[{status}] {name}")
    if failures:
        print(f"{failures} check(s) failed")
        return 1
    print("all checks passed")
    return 0


# -- state / transition commands --------------------------------------------------


def cmd_state(p: float, theta: float, phi: float, json_out: str | None = None) -> int:
    st = superqubit(p, theta, phi)
    probs = measure_real(st)
    print(f"state: {st}")
    print(f"probabilities: 0 -> {probs[0]:.12g}, 1 -> {probs[1]:.12g}, "
          f"bullet -> {probs[2]:.12g}")
    if not is_physical(p):
        print(f"warning: displacement {p} is not physical (|p| > 1/2); "
              f"compactified value {compactify(p):.12g}")
    if json_out:
        payload = {
            "p": float(p), "theta": float(theta), "phi": float(phi),
            "physical": is_physical(p),
            "probabilities": {"0": probs[0], "1": probs[1], "bullet": probs[2]},
        }
        with open(json_out, "w") as fh:
            fh.write(dumps(payload) + "\n")
    return 0


def cmd_transition(p: float, theta: float, phi: float,
                   q: float, theta2: float, phi2: float,
                   json_out: str | None = None) -> int:
    u = superqubit(p, theta, phi)
    v = superqubit(q, theta2, phi2)
    g = grassmann_transition(u, v)
    val = transition_real(u, v)
    s1, s2 = physical_pair(p, q)
    print(f"grassmann transition: {g}")
    print(f"real transition probability: {val:.12g}")
    print(f"physical (|p-q|<=1 and |p+q|<=1): {s1}; physical (|p|,|q|<=1/2): {s2}")
    if not s2:
        print("warning: displacement pair outside the physical box")
    if json_out:
        payload = {
            "p": float(p), "q": float(q),
            "transition": float(val), "pair_in_s1": s1, "pair_in_s2": s2,
        }
        with open(json_out, "w") as fh:
            fh.write(dumps(payload) + "\n")
    return 0


# -- CHSH commands ----------------------------------------------------------------


def _load_json(path: str) -> dict:
    import json

    try:
        with open(path) as fh:
            data = json.load(fh)
    except OSError as exc:
        raise ValueError(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ValueError(f"invalid JSON in {path}: {exc}") from exc
    if not isinstance(data, dict):
        raise ValueError(f"top-level JSON object expected in {path}")
    return data


def cmd_chsh_eval(strategy_file: str, json_out: str | None = None,
                  csv_out: str | None = None) -> int:
    data = _load_json(strategy_file)
    strat = strategy_from_dict(data.get("strategy", data))
    tables = [chsh.outcome_probs(i, j, strat) for (i, j) in chsh.SETTINGS]
    pwin = chsh._pwin_from_tables(tables)
    viol = chsh.constraint_violation(strat, tables)
    payload = {
        "strategy": strategy_to_dict(strat),
        "result": {
            "p_win": pwin,
            "violation": viol,
            "tables": tables_to_dict(tables),
        },
    }
    text = dumps(payload)
    print(text)
    if json_out:
        with open(json_out, "w") as fh:
            fh.write(text + "\n")
    if csv_out:
        write_tables_csv(csv_out, tables)
    return 0


def cmd_chsh_optimize(config: RunConfig, json_out: str | None = None,
                      csv_out: str | None = None) -> int:
    result = chsh.optimize(config.to_optimize_config())
    payload = {
        "seed": config.seed,
        "restarts": config.restarts,
        "max_iters": config.max_iters,
        "penalty_weight": config.penalty_weight,
        "tolerance": config.tolerance,
        "strategy": strategy_to_dict(result.strategy),
        "result": {
            "p_win": result.p_win,
            "violation": result.violation,
            "tables": tables_to_dict(result.tables),
            "feasible": result.feasible,
            "iterations": result.iterations,
            "best_restart": result.best_restart,
        },
    }
    text = dumps(payload)
    print(text)
    if json_out:
        with open(json_out, "w") as fh:
            fh.write(text + "\n")
    if csv_out:
        write_tables_csv(csv_out, result.tables)
    if not result.feasible:
        print("no feasible strategy found", file=sys.stderr)
        return 1
    return 0


def cmd_baseline(json_out: str | None = None) -> int:
    classical = chsh.best_classical_win_prob()
    ts = chsh.Strategy.tsirelson()
    quantum = chsh.win_prob(ts)
    oracle = chsh.oracle_win_prob(ts)
    target = math.cos(math.pi / 8) ** 2
    print(f"classical optimum (16 deterministic strategies): {classical:.12g}")
    print(f"quantum baseline, exact Grassmann path: {quantum:.17g}")
    print(f"quantum baseline, plain complex oracle: {oracle:.17g}")
    print(f"expected quantum value cos^2(pi/8): {target:.17g}")
    ok = bool(classical == 0.75 and abs(quantum - target) < 1e-9
              and abs(quantum - oracle) < 1e-10)
    if json_out:
        payload = {
            "classical": classical, "quantum": quantum,
            "oracle": oracle, "target": target, "ok": ok,
        }
        with open(json_out, "w") as fh:
            fh.write(dumps(payload) + "\n")
    if not ok:
        print("baseline mismatch", file=sys.stderr)
        return 1
    return 0


# -- argument parsing --------------------------------------------------------------


def _build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="superqubit",
        description="Grassmann-algebra superqubit toolkit: verification, "
                    "state inspection and the CHSH game.",
    )
    sub = ap.add_subparsers(dest="command", required=True)

    p_verify = sub.add_parser("verify", help="run the algebraic property suite")
    p_verify.add_argument("--verbose", action="store_true",
                          help="print per-check residual magnitudes")
    p_verify.add_argument("--inject-sign-fault", action="store_true",
                          help=argparse.SUPPRESS)

    p_state = sub.add_parser("state", help="print a superqubit state and its "
                                           "measurement probabilities")
    p_state.add_argument("p", type=float)
    p_state.add_argument("theta", type=float)
    p_state.add_argument("phi", type=float)
    p_state.add_argument("--json", metavar="OUT")

    p_trans = sub.add_parser("transition", help="transition probability between "
                                                "two superqubits")
    for name in ("p", "theta", "phi", "q", "theta2", "phi2"):
        p_trans.add_argument(name, type=float)
    p_trans.add_argument("--json", metavar="OUT")

    p_eval = sub.add_parser("chsh-eval", help="evaluate a CHSH strategy file")
    p_eval.add_argument("strategy_file")
    p_eval.add_argument("--json", metavar="OUT")
    p_eval.add_argument("--csv", metavar="OUT")

    p_opt = sub.add_parser("chsh-optimize", help="maximize the CHSH winning "
                                                 "probability")
    p_opt.add_argument("config_file", nargs="?",
                       help="optional JSON config; flags override its values")
    p_opt.add_argument("--seed", type=int)
    p_opt.add_argument("--restarts", type=int)
    p_opt.add_argument("--max-iters", type=int)
    p_opt.add_argument("--penalty", type=float)
    p_opt.add_argument("--tol", type=float)
    p_opt.add_argument("--quantum-only", action="store_true", default=None,
                       help="pin all super displacements to zero")
    p_opt.add_argument("--json", metavar="OUT")
    p_opt.add_argument("--csv", metavar="OUT")

    p_base = sub.add_parser("baseline", help="classical and quantum reference "
                                             "values of the game")
    p_base.add_argument("--json", metavar="OUT")

    return ap


def _config_from_args(args) -> RunConfig:
    base = {}
    if args.config_file:
        raw = _load_json(args.config_file)
        allowed = {"seed", "restarts", "max_iters", "penalty_weight",
                   "tolerance", "quantum_only"}
        unknown = set(raw) - allowed - {"strategy", "result"}
        if unknown:
            raise ValueError(f"unknown config keys: {sorted(unknown)}")
        base = {k: raw[k] for k in allowed if k in raw}
    if args.seed is not None:
        base["seed"] = args.seed
    if args.restarts is not None:
        base["restarts"] = args.restarts
    if args.max_iters is not None:
        base["max_iters"] = args.max_iters
    if args.penalty is not None:
        base["penalty_weight"] = args.penalty
    if args.tol is not None:
        base["tolerance"] = args.tol
    if args.quantum_only is not None:
        base["quantum_only"] = args.quantum_only
    cfg = RunConfig(
        seed=int(base.get("seed", 0)),
        restarts=int(base.get("restarts", 200)),
        max_iters=int(base.get("max_iters", 2000)),
        penalty_weight=float(base.get("penalty_weight", 1000.0)),
        tolerance=float(base.get("tolerance", 1e-9)),
        quantum_only=bool(base.get("quantum_only", False)),
    )
    if cfg.seed < 0 or cfg.restarts < 1 or cfg.max_iters < 0:
        raise ValueError("seed must be >= 0, restarts >= 1, max_iters >= 0")
    if cfg.penalty_weight <= 0 or cfg.tolerance <= 0:
        raise ValueError("penalty weight and tolerance must be positive")
    return cfg


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        if args.command == "verify":
            return cmd_verify(inject_sign_fault=args.inject_sign_fault,
                              verbose=args.verbose)
        if args.command == "state":
            return cmd_state(args.p, args.theta, args.phi, json_out=args.json)
        if args.command == "transition":
            return cmd_transition(args.p, args.theta, args.phi,
                                  args.q, args.theta2, args.phi2,
                                  json_out=args.json)
        if args.command == "chsh-eval":
            return cmd_chsh_eval(args.strategy_file, json_out=args.json,
                                 csv_out=args.csv)
        if args.command == "chsh-optimize":
            config = _config_from_args(args)
            return cmd_chsh_optimize(config, json_out=args.json, csv_out=args.csv)
        if args.command == "baseline":
            return cmd_baseline(json_out=args.json)
        raise AssertionError(f"unhandled command {args.command}")
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
