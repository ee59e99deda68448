"""Command-line front end.

Exit codes: 0 success, 1 verification failure, 2 invalid input,
3 precondition violation (e.g. a derivative requested at a kink).
"""

from __future__ import annotations

import argparse
import json
import math
import sys

from . import ell1, gateaux, lp, verification
from .errors import InputError, PreconditionError
from .measure import INF, MeasureSpace, SimpleFunction, l1_norm

EXIT_OK, EXIT_VERIFY, EXIT_INPUT, EXIT_PRECONDITION = 0, 1, 2, 3


# -- output -------------------------------------------------------------------

def _num(x: float) -> str:
    if math.isinf(x):
        return '"inf"' if x > 0 else '"-inf"'
    s = format(x, ".17g")
    if not any(c in s for c in ".en"):
        s += ".0"
    return s


def dumps(obj, level: int = 0) -> str:
    """JSON with every float written to 17 significant digits; infinities as ``"inf"``."""
    pad, inner = "  " * level, "  " * (level + 1)
    if obj is None:
        return "null"
    if isinstance(obj, bool):
        return "true" if obj else "false"
    if isinstance(obj, int):
        return str(obj)
    if isinstance(obj, float):
        return _num(obj)
    if isinstance(obj, str):
        return json.dumps(obj, ensure_ascii=False)
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = [f"{inner}{json.dumps(str(k), ensure_ascii=False)}: {dumps(v, level + 1)}" for k, v in obj.items()]
        return "{\n" + ",\n".join(items) + "\n" + pad + "}"
    if isinstance(obj, (list, tuple)):
        if not obj:
            return "[]"
        if all(not isinstance(v, (dict, list, tuple)) for v in obj):
            return "[" + ", ".join(dumps(v) for v in obj) + "]"
        return "[\n" + ",\n".join(inner + dumps(v, level + 1) for v in obj) + "\n" + pad + "]"
    raise TypeError(f"cannot serialise {type(obj).__name__}")


def loads(text: str):
    """Inverse of :func:`dumps` (``"inf"`` strings stay strings)."""
    return json.loads(text)


def _fmt(x: float) -> str:
    if math.isinf(x):
        return "inf"
    return repr(float(x))


def _fn_dict(f: SimpleFunction) -> dict:
    return {str(a): v for a, v in f.as_dict().items()}


# -- input --------------------------------------------------------------------

def _real(value, what: str) -> float:
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise InputError(f"{what} must be a number, got {value!r}")
    value = float(value)
    if not math.isfinite(value):
        raise InputError(f"{what} must be finite")
    return value


def load_problem(path: str) -> dict:
    try:
        with open(path, encoding="utf-8") as fh:
            doc = json.load(fh)
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise InputError(f"{path} is not valid JSON: {exc}") from None
    if not isinstance(doc, dict):
        raise InputError("problem file must hold a JSON object")
    return doc


def parse_space(doc: dict) -> MeasureSpace:
    raw = doc.get("space")
    if not isinstance(raw, list):
        raise InputError("'space' must be a list of {id, weight} objects")
    atoms = []
    for entry in raw:
        if not isinstance(entry, dict) or "id" not in entry or "weight" not in entry:
            raise InputError(f"bad atom entry {entry!r}")
        w = entry["weight"]
        if w == "inf":
            w = INF
        elif isinstance(w, bool) or not isinstance(w, (int, float)):
            raise InputError(f"weight of atom {entry['id']!r} must be a number or \"inf\"")
        atoms.append((str(entry["id"]), w))
    return MeasureSpace(tuple(atoms))


def parse_function(space: MeasureSpace, doc: dict, key: str) -> SimpleFunction:
    raw = doc.get(key)
    if raw is None:
        raise InputError(f"problem file has no '{key}'")
    if not isinstance(raw, dict):
        raise InputError(f"'{key}' must map atom ids to numbers")
    return SimpleFunction.from_mapping(space, {str(k): _real(v, f"{key}[{k}]") for k, v in raw.items()})


def parse_sequence(doc: dict) -> ell1.GeoTailSequence:
    raw = doc.get("sequence")
    if not isinstance(raw, dict):
        raise InputError("problem file has no 'sequence' object")
    prefix = raw.get("prefix", [])
    if not isinstance(prefix, list):
        raise InputError("sequence prefix must be a list")
    start = raw.get("tail_start")
    if start is not None and (isinstance(start, bool) or not isinstance(start, int)):
        raise InputError("tail_start must be an integer")
    return ell1.GeoTailSequence(
        tuple(_real(v, "prefix entry") for v in prefix),
        _real(raw.get("tail_coeff", 0.0), "tail_coeff"),
        _real(raw.get("tail_ratio", 0.0), "tail_ratio"),
        start,
    )


def parse_seq_direction(doc: dict) -> ell1.FiniteSupportDirection:
    raw = doc.get("h")
    if not isinstance(raw, dict):
        raise InputError("sequence direction 'h' must map indices to numbers")
    entries = {}
    for k, v in raw.items():
        try:
            n = int(k)
        except ValueError:
            raise InputError(f"bad sequence index {k!r}") from None
        entries[n] = _real(v, f"h[{k}]")
    return ell1.FiniteSupportDirection(entries)


def zero_tol(args, doc: dict) -> float:
    tol = args.zero_tol if args.zero_tol is not None else doc.get("zero_tol", 0.0)
    tol = _real(tol, "zero_tol")
    if tol < 0:
        raise InputError("zero_tol must be nonnegative")
    return tol


def _snap_seq(x: ell1.GeoTailSequence, tol: float) -> ell1.GeoTailSequence:
    if tol == 0:
        return x
    snap = lambda v: 0.0 if abs(v) <= tol else v  # noqa: E731
    return ell1.GeoTailSequence(tuple(snap(v) for v in x.prefix), snap(x.tail_coeff), x.tail_ratio, x.tail_start)


def _point(args):
    doc = load_problem(args.input)
    space = parse_space(doc)
    tol = zero_tol(args, doc)
    f = parse_function(space, doc, "f").snap(tol)
    return doc, space, f, tol


# -- commands -----------------------------------------------------------------

def cmd_analyze(args):
    _, space, f, tol = _point(args)
    rep = gateaux.classify(space, f)
    out = {
        "command": "analyze",
        "differentiable": rep.differentiable,
        "in_g": rep.in_g,
        "a1_holds": rep.a1_holds,
        "zero_atoms": [str(a) for a in rep.zero_atoms],
        "zero_measure": rep.zero_measure,
        "witness": None,
        "witness_onesided": None,
        "density": None,
        "norm": l1_norm(space, f),
        "zero_tol": tol,
    }
    lines = []
    if rep.differentiable:
        density = gateaux.derivative_functional(space, f).density
        out["density"] = _fn_dict(density)
        if rep.in_g:
            lines.append("differentiable; density = sign(f)")
        else:
            lines.append("differentiable but f ∉ G; a weight is infinite")
        lines.append("density: " + ", ".join(f"{a}={int(v):+d}" for a, v in out["density"].items()))
    else:
        lim = gateaux.directional_derivatives(space, f, rep.witness)
        support = [str(a) for a, v in rep.witness.as_dict().items() if v]
        out["witness"] = _fn_dict(rep.witness)
        out["witness_onesided"] = {"plus": lim.plus, "minus": lim.minus}
        lines.append(f"non-differentiable; witness 1_{{{','.join(support)}}}; one-sided ±{_fmt(lim.plus)}")
    lines += [
        f"in_g: {str(rep.in_g).lower()}",
        f"a1_holds: {str(rep.a1_holds).lower()}",
        f"zero_atoms: {{{', '.join(out['zero_atoms'])}}}",
        f"zero_measure: {_fmt(rep.zero_measure)}",
        f"l1_norm: {_fmt(out['norm'])}",
    ]
    return out, lines, EXIT_OK


def cmd_derive(args):
    doc, space, f, tol = _point(args)
    h = parse_function(space, doc, "h")
    try:
        value = gateaux.gateaux_derivative(space, f, h)
    except PreconditionError:
        raise PreconditionError(
            "f vanishes on a set of finite positive measure, so the Gateaux derivative "
            "does not exist; run `onesided` for the one-sided derivatives"
        ) from None
    out = {"command": "derive", "value": value, "zero_tol": tol}
    return out, [f"gateaux derivative: {_fmt(value)}"], EXIT_OK


def cmd_onesided(args):
    doc, space, f, tol = _point(args)
    h = parse_function(space, doc, "h")
    lim = gateaux.directional_derivatives(space, f, h)
    out = {
        "command": "onesided",
        "plus": lim.plus,
        "minus": lim.minus,
        "gap": lim.gap,
        "two_sided": isinstance(lim, gateaux.TwoSided),
        "zero_tol": tol,
    }
    lines = [f"plus: {_fmt(lim.plus)}", f"minus: {_fmt(lim.minus)}", f"gap: {_fmt(lim.gap)}"]
    return out, lines, EXIT_OK


def cmd_verify(args):
    doc, space, f, tol = _point(args)
    h = parse_function(space, doc, "h")
    schedule = verification.FDSchedule(args.t0, args.shrink, args.steps)
    if not (args.tol > 0):
        raise InputError("--tol must be positive")
    rep = verification.fd_directional(space, f, h, schedule, args.tol)
    out = {
        "command": "verify",
        "plus_estimate": rep.plus_estimate,
        "minus_estimate": rep.minus_estimate,
        "stabilized": rep.stabilized,
        "stabilization_step": rep.stabilization_step,
        "closed_form": rep.closed_form,
        "closed_plus": rep.closed_plus,
        "closed_minus": rep.closed_minus,
        "max_deviation": rep.max_deviation,
        "gap": rep.plus_estimate - rep.minus_estimate,
        "stability_radius": gateaux.stability_radius(space, f, h),
        "schedule": {"t0": schedule.t0, "shrink": schedule.shrink, "steps": schedule.steps},
        "tol": args.tol,
        "zero_tol": tol,
    }
    lines = []
    if rep.stabilized:
        lines.append(f"stabilized at step {rep.stabilization_step}; deviation {_fmt(rep.max_deviation)} (tol {_fmt(args.tol)})")
    else:
        lines.append("WARNING: not stabilized within the schedule")
    lines += [f"plus: {_fmt(rep.plus_estimate)} (closed form {_fmt(rep.closed_plus)})",
              f"minus: {_fmt(rep.minus_estimate)} (closed form {_fmt(rep.closed_minus)})"]
    if rep.closed_plus != rep.closed_minus:
        lines.append(f"kink: gap {_fmt(out['gap'])}")
    ok = rep.stabilized and rep.max_deviation <= args.tol
    if not ok:
        print("verification failed: " + ("not stabilized" if not rep.stabilized else "deviation exceeds tol"),
              file=sys.stderr)
    return out, lines, EXIT_OK if ok else EXIT_VERIFY


def cmd_lp(args):
    doc, space, f, tol = _point(args)
    if "p" not in doc:
        raise InputError("problem file has no 'p'")
    p = _real(doc["p"], "p")
    if p == 1:
        raise InputError("use analyze/onesided for p = 1")
    p = lp.check_exponent(p)
    h = parse_function(space, doc, "h")
    if args.remainder_steps < 0:
        raise InputError("--remainder-steps must be nonnegative")
    du = lp.lp_frechet_derivative(space, f, p)
    rows = []
    if any(h.values):
        rows = [{"k": k, "h_norm": n, "ratio": r}
                for k, n, r in lp.remainder_table(space, f, p, h, args.remainder_steps)]
    out = {
        "command": "lp",
        "p": p,
        "norm": lp.lp_norm(space, f, p),
        "value": du.evaluate(h),
        "density": _fn_dict(du.density),
        "dual_norm": du.norm,
        "remainder": rows,
        "zero_tol": tol,
    }
    lines = [f"frechet derivative on h: {_fmt(out['value'])}", f"lp norm: {_fmt(out['norm'])}",
             f"dual norm of derivative: {_fmt(du.norm)}", "k  ||h/2^k||_p  remainder ratio"]
    lines += [f"{r['k']:<2} {r['h_norm']:.6e}  {r['ratio']:.6e}" for r in rows]
    return out, lines, EXIT_OK


def cmd_seq(args):
    doc = load_problem(args.input)
    tol = zero_tol(args, doc)
    x = _snap_seq(parse_sequence(doc), tol)
    out = {"command": "seq", "action": args.action, "zero_tol": tol}
    if args.action == "norm":
        out["norm"] = ell1.seq_l1_norm(x)
        return out, [f"l1 norm: {_fmt(out['norm'])}"], EXIT_OK
    if args.action == "derive":
        h = parse_seq_direction(doc)
        out["value"] = ell1.seq_gateaux(x, h)
        return out, [f"gateaux derivative: {_fmt(out['value'])}"], EXIT_OK
    if args.action == "classify":
        rep = ell1.seq_classify(x)
        out.update(differentiable=rep.differentiable, in_g=ell1.seq_in_g(x), first_zero=rep.first_zero,
                   witness=None if rep.witness is None else {str(k): v for k, v in rep.witness.entries.items()},
                   plus=rep.plus, minus=rep.minus)
        if rep.differentiable:
            lines = ["differentiable; derivative = sign(x_n) termwise"]
        else:
            lines = [f"non-differentiable; witness e_{rep.first_zero}; one-sided {_fmt(rep.plus)} / {_fmt(rep.minus)}"]
        return out, lines, EXIT_OK
    # frechet-fail
    if args.kmax < 1:
        raise InputError("--kmax must be a positive integer")
    rows = []
    for k in range(1, args.kmax + 1):
        w = ell1.frechet_failure_witness(x, k)
        rows.append({"k": k, "index": w.index, "direction_norm": w.direction_norm, "ratio": w.remainder_ratio})
    out["rows"] = rows
    lines = ["k   index  ||h||_1          remainder ratio"]
    lines += [f"{r['k']:<3} {r['index']:<6} {r['direction_norm']:.10e} {_fmt(r['ratio'])}" for r in rows]
    return out, lines, EXIT_OK


def _weights(text: str | None):
    if text is None:
        return None
    try:
        return [float(s) for s in text.split(",")]
    except ValueError:
        raise InputError(f"bad --weights {text!r}") from None


def cmd_mcnull(args):
    weights = _weights(args.weights)
    frac = verification.monte_carlo_null(args.dim, weights, args.samples, args.seed, args.workers)
    out = {
        "command": "mcnull",
        "dimension": args.dim,
        "samples": args.samples,
        "seed": args.seed,
        "weights": weights if weights is not None else [1.0] * args.dim,
        "fraction": frac,
        "non_differentiable": round(frac * args.samples),
        "generator": verification.GENERATOR,
        "shard_size": verification.SHARD_SIZE,
    }
    lines = [f"non-differentiable fraction: {_fmt(frac)} ({out['non_differentiable']}/{args.samples})",
             f"generator: {out['generator']}; seed {args.seed}"]
    return out, lines, EXIT_OK


# -- argument parsing ---------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="emit a JSON document")
    common.add_argument("--zero-tol", type=float, default=None,
                        help="snap |value| <= tol to exact zero before classification")

    parser = argparse.ArgumentParser(prog="l1gateaux", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    for name, fn, help_ in [
        ("analyze", cmd_analyze, "classify Gateaux differentiability of the L1 norm at f"),
        ("derive", cmd_derive, "Gateaux derivative at f in direction h"),
        ("onesided", cmd_onesided, "one-sided directional derivatives at f along h"),
    ]:
        p = sub.add_parser(name, parents=[common], help=help_)
        p.add_argument("input")
        p.set_defaults(func=fn)

    p = sub.add_parser("verify", parents=[common], help="finite-difference check of the closed form")
    p.add_argument("input")
    p.add_argument("--t0", type=float, default=1e-2)
    p.add_argument("--shrink", type=float, default=0.5)
    p.add_argument("--steps", type=int, default=20)
    p.add_argument("--tol", type=float, default=1e-12)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("lp", parents=[common], help="Lp Frechet derivative and remainder table")
    p.add_argument("input")
    p.add_argument("--remainder-steps", type=int, default=20)
    p.set_defaults(func=cmd_lp)

    p = sub.add_parser("seq", parents=[common], help="l1 sequences with geometric tails")
    p.add_argument("action", choices=["norm", "derive", "classify", "frechet-fail"])
    p.add_argument("input")
    p.add_argument("--kmax", type=int, default=10, help="rows of the frechet-fail table")
    p.set_defaults(func=cmd_seq)

    p = sub.add_parser("mcnull", parents=[common], help="Monte Carlo check that non-differentiability is null")
    p.add_argument("--dim", type=int, required=True)
    p.add_argument("--samples", type=int, default=100_000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--weights", default=None, help="comma-separated positive weights")
    p.add_argument("--workers", type=int, default=1)
    p.set_defaults(func=cmd_mcnull)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        out, lines, code = args.func(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except PreconditionError as exc:
        print(f"precondition violated: {exc}", file=sys.stderr)
        return EXIT_PRECONDITION
    if args.json:
        print(dumps(out))
    else:
        print("\n".join(lines))
    return code


if __name__ == "__main__":
    sys.exit(main())
