"""Command-line entry point: ``fusionlab <group> <command> [options]``.

Results go to stdout as a JSON envelope (or CSV with ``--csv``).  Exit status
is 0 on a completed computation whatever the verdict, 2 on usage errors,
3 on validation errors and 4 on numerical failures.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Callable

from .builders import TLJRing, as_number, build_tlj_ainf
from .errors import EvaluationError, FusionError, NumericalError, ParameterError, ValidationError
from .io import (
    dumps,
    envelope,
    label_from_json,
    label_to_json,
    parse_element,
    parse_multiplier_spec,
    parse_ring_spec,
    read_json_arg,
    ring_spec_to_json,
    write_csv,
)
from .multipliers import convolve

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_VALIDATION = 3
EXIT_NUMERIC = 4


class UsageError(Exception):
    pass


def _ring(args):
    if getattr(args, "ring", None):
        return parse_ring_spec(read_json_arg(args.ring))
    if getattr(args, "lambda_inv", None) is not None:
        return build_tlj_ainf(as_number(args.lambda_inv))
    raise UsageError("either --ring or --lambda-inv is required")


def _label(ring, text: str):
    try:
        obj = json.loads(text)
    except json.JSONDecodeError:
        obj = text
    return label_from_json(ring, obj)


def _number(text: str):
    try:
        return as_number(text)
    except (ValueError, TypeError) as exc:
        raise UsageError(f"not a number: {text!r}") from exc


def _multiplier(args, ring):
    if getattr(args, "t", None) is not None:
        if not isinstance(ring, TLJRing):
            raise ValidationError("--t needs a TLJ ring", witness="--t")
        from .tlj import phi_point

        return phi_point(ring, _number(args.t)), {"t": args.t}
    if getattr(args, "mult", None):
        text = read_json_arg(args.mult)
        return parse_multiplier_spec(text, ring), {"mult": json.loads(text)}
    raise UsageError("either --t or --mult is required")


def _ring_inputs(args, ring) -> dict:
    return {"ring": ring_spec_to_json(ring)}


# -- ring -------------------------------------------------------------------------


def cmd_ring_describe(args, out):
    ring = _ring(args)
    labels = ring.labels(args.max_level)
    result = {
        "name": ring.name,
        "finite": ring.is_finite,
        "max_level": ring.max_level,
        "exact": ring.exact,
        "unit": label_to_json(ring.unit),
        "labels": [
            {"label": label_to_json(a), "level": ring.level(a), "dim": ring.dim(a), "conjugate": label_to_json(ring.conjugate(a))}
            for a in labels
        ],
    }
    inputs = _ring_inputs(args, ring) | {"max_level": args.max_level}
    return envelope("ring describe", inputs, result)


def cmd_ring_fuse(args, out):
    ring = _ring(args)
    a, b = _label(ring, args.a), _label(ring, args.b)
    outcome = ring.fuse(a, b)
    result = [[label_to_json(c), m] for c, m in outcome.items()]
    inputs = _ring_inputs(args, ring) | {"a": label_to_json(a), "b": label_to_json(b)}
    return envelope("ring fuse", inputs, result)


def cmd_ring_dims(args, out):
    ring = _ring(args)
    rows = [(label_to_json(a), ring.level(a), ring.dim(a)) for a in ring.labels(args.max_level)]
    if args.csv:
        return write_csv(["label", "level", "dim"], rows)
    inputs = _ring_inputs(args, ring) | {"max_level": args.max_level}
    return envelope("ring dims", inputs, [list(r) for r in rows])


# -- mult ---------------------------------------------------------------------------


def _value_rows(ring, phi, max_level):
    return [(label_to_json(a), ring.dim(a), phi(a)) for a in ring.labels(max_level)]


def cmd_mult_eval(args, out):
    ring = _ring(args)
    phi, minputs = _multiplier(args, ring)
    rows = _value_rows(ring, phi, args.max_level)
    if args.csv:
        return write_csv(["label", "dim", "value"], rows)
    inputs = _ring_inputs(args, ring) | minputs | {"max_level": args.max_level}
    result = {"name": phi.name, "claimed_cp": phi.claimed_cp, "values": [list(r) for r in rows]}
    return envelope("mult eval", inputs, result)


def cmd_mult_convolve(args, out):
    ring = _ring(args)
    phi, minputs = _multiplier(args, ring)
    x = parse_element(ring, read_json_arg(args.x))
    y = parse_element(ring, read_json_arg(args.y)) if args.y else x
    conv = convolve(phi, x, y)
    rows = _value_rows(ring, conv, args.max_level)
    if args.csv:
        return write_csv(["label", "dim", "value"], rows)
    inputs = _ring_inputs(args, ring) | minputs | {"x": args.x, "y": args.y or args.x, "max_level": args.max_level}
    result = {"claimed_cp": conv.claimed_cp, "values": [list(r) for r in rows]}
    return envelope("mult convolve", inputs, result)


# -- tlj ------------------------------------------------------------------------------


def _tlj_ring(args) -> TLJRing:
    ring = _ring(args)
    if not isinstance(ring, TLJRing):
        raise ValidationError("this command needs a tlj_ainf ring", witness=ring.name)
    return ring


def cmd_tlj_admissible(args, out):
    from .tlj import admissibility

    ring = _tlj_ring(args)
    phi, minputs = _multiplier(args, ring)
    verdict = admissibility(ring, phi, args.level, tol=args.tol)
    inputs = _ring_inputs(args, ring) | minputs | {"level": args.level}
    return envelope(
        "tlj admissible",
        inputs,
        verdict.to_dict(),
        witnesses=verdict.witness,
        tolerances={"psd": args.tol},
    )


def cmd_tlj_moments(args, out):
    from .tlj import moments

    ring = _tlj_ring(args)
    phi, minputs = _multiplier(args, ring)
    seq = moments(ring, phi, args.count)
    rows = list(enumerate(seq.values))
    if args.csv:
        return write_csv(["k", "m_k"], rows)
    inputs = _ring_inputs(args, ring) | minputs | {"count": args.count}
    result = {"exact": seq.exact, "moments": [v for _, v in rows], "error_bounds": list(seq.errors)}
    return envelope("tlj moments", inputs, result)


def cmd_tlj_plancherel(args, out):
    from .tlj import plancherel_pair

    value = plancherel_pair(args.n, args.m, tol=args.tol)
    return envelope(
        "tlj plancherel",
        {"n": args.n, "m": args.m},
        {"value": value, "expected": 1 if args.n == args.m else 0},
        tolerances={"quadrature": args.tol},
    )


def cmd_tlj_norms(args, out):
    from .tlj import reduced_norm, universal_norm

    ring = _tlj_ring(args)
    x = parse_element(ring, read_json_arg(args.element))
    result = {"universal": universal_norm(x), "reduced": reduced_norm(x)}
    inputs = _ring_inputs(args, ring) | {"element": args.element}
    return envelope("tlj norms", inputs, result)


def cmd_tlj_l1range(args, out):
    from .tlj import l1_range_check

    ring = _tlj_ring(args)
    first = l1_range_check(ring, _number(args.t), args.n_max)
    inputs = _ring_inputs(args, ring) | {"t": args.t, "n_max": args.n_max}
    result = {"violation": first is not None, "first_index": first}
    return envelope("tlj l1range", inputs, result, witnesses=None if first is None else {"n": first})


# -- spectral --------------------------------------------------------------------------


def cmd_spectral_norm(args, out):
    from .spectral import norm_estimate

    ring = _ring(args)
    x = parse_element(ring, read_json_arg(args.generator))
    est = norm_estimate(ring, x, args.truncation, iterations=args.iterations)
    inputs = _ring_inputs(args, ring) | {"generator": args.generator, "truncation": args.truncation}
    return envelope("spectral norm", inputs, est.to_dict(), tolerances={"power_iteration": 1e-12})


def cmd_spectral_amenability(args, out):
    from .spectral import amenability_report

    ring = _ring(args)
    x = parse_element(ring, read_json_arg(args.generator))
    report = amenability_report(ring, x, args.truncation, tol=args.tol)
    inputs = _ring_inputs(args, ring) | {"generator": args.generator, "truncation": args.truncation}
    return envelope("spectral amenability", inputs, report, tolerances={"relative_gap": args.tol})


# -- parser ------------------------------------------------------------------------------


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def _add_ring(p, tlj: bool = False):
    p.add_argument("--ring", help="ring spec as inline JSON or a path to a JSON file")
    if tlj:
        p.add_argument("--lambda-inv", help="shortcut for a tlj_ainf ring; decimals are read exactly")


def _add_mult(p):
    p.add_argument("--t", help="point multiplier phi_t (TLJ only)")
    p.add_argument("--mult", help="multiplier spec as inline JSON or a path")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="fusionlab", description="Fusion rings, multipliers and TLJ representations.")
    groups = parser.add_subparsers(dest="group", required=True, parser_class=_Parser)

    def sub(group, name, fn: Callable, help_text: str):
        p = group.add_parser(name, help=help_text)
        p.set_defaults(func=fn)
        return p

    ring = groups.add_parser("ring", help="inspect a fusion ring").add_subparsers(dest="command", required=True, parser_class=_Parser)
    p = sub(ring, "describe", cmd_ring_describe, "labels, dimensions and conjugates")
    _add_ring(p, tlj=True)
    p.add_argument("--max-level", type=int, default=3)
    p = sub(ring, "fuse", cmd_ring_fuse, "decompose a tensor product")
    _add_ring(p, tlj=True)
    p.add_argument("--a", required=True, help="label as JSON (e.g. 2, [1,1], \"aB\")")
    p.add_argument("--b", required=True)
    p = sub(ring, "dims", cmd_ring_dims, "dimension table")
    _add_ring(p, tlj=True)
    p.add_argument("--max-level", type=int, default=5)
    p.add_argument("--csv", action="store_true")

    mult = groups.add_parser("mult", help="evaluate multipliers").add_subparsers(dest="command", required=True, parser_class=_Parser)
    p = sub(mult, "eval", cmd_mult_eval, "values of a multiplier")
    _add_ring(p, tlj=True)
    _add_mult(p)
    p.add_argument("--max-level", type=int, default=10)
    p.add_argument("--csv", action="store_true")
    p = sub(mult, "convolve", cmd_mult_convolve, "values of phi_(x,y)")
    _add_ring(p, tlj=True)
    _add_mult(p)
    p.add_argument("--x", required=True, help='element as [[label, re(, im)], ...] or "X"')
    p.add_argument("--y")
    p.add_argument("--max-level", type=int, default=10)
    p.add_argument("--csv", action="store_true")

    tlj = groups.add_parser("tlj", help="A_infinity TLJ computations").add_subparsers(dest="command", required=True, parser_class=_Parser)
    p = sub(tlj, "admissible", cmd_tlj_admissible, "Hankel test for a multiplier")
    _add_ring(p, tlj=True)
    _add_mult(p)
    p.add_argument("--level", type=int, default=12)
    p.add_argument("--tol", type=float, default=1e-9)
    p = sub(tlj, "moments", cmd_tlj_moments, "moments m_k = omega_phi(X^k)")
    _add_ring(p, tlj=True)
    _add_mult(p)
    p.add_argument("--count", type=int, default=10, help="highest moment index")
    p.add_argument("--csv", action="store_true")
    p = sub(tlj, "plancherel", cmd_tlj_plancherel, "integral of V_n V_m against the Plancherel measure")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--tol", type=float, default=1e-8)
    p = sub(tlj, "norms", cmd_tlj_norms, "universal and reduced norms of an element")
    _add_ring(p, tlj=True)
    p.add_argument("--element", required=True)
    p = sub(tlj, "l1range", cmd_tlj_l1range, "scan |phi_t(H_n)| <= 1")
    _add_ring(p, tlj=True)
    p.add_argument("--t", required=True)
    p.add_argument("--n-max", type=int, default=200)

    spec = groups.add_parser("spectral", help="truncated regular representation").add_subparsers(dest="command", required=True, parser_class=_Parser)
    for name, fn, help_text in (
        ("norm", cmd_spectral_norm, "power-iteration norm bounds"),
        ("amenability", cmd_spectral_amenability, "compare the regular norm with the dimension"),
    ):
        p = sub(spec, name, fn, help_text)
        _add_ring(p, tlj=True)
        p.add_argument("--generator", required=True, help='"X" or [[label, coeff], ...]')
        p.add_argument("--truncation", type=int, default=200)
        if name == "norm":
            p.add_argument("--iterations", type=int)
        else:
            p.add_argument("--tol", type=float, default=1e-3)
    return parser


def _error(stream, code: int, exc: BaseException) -> int:
    payload = {"error": str(exc), "type": type(exc).__name__, "exit_code": code}
    for attr in ("pointer", "witness", "labels", "estimate"):
        if hasattr(exc, attr):
            try:
                payload[attr] = json.loads(json.dumps(getattr(exc, attr), default=str))
            except (TypeError, ValueError):
                payload[attr] = str(getattr(exc, attr))
    stream.write(dumps(payload))
    return code


def run_cli(argv=None, stdout=None, stderr=None) -> int:
    """Run one command; returns the exit status."""
    stdout = stdout if stdout is not None else sys.stdout
    stderr = stderr if stderr is not None else sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        payload = args.func(args, stdout)
    except SystemExit as exc:  # --help
        return EXIT_OK if not exc.code else EXIT_USAGE
    except (UsageError, FileNotFoundError) as exc:
        return _error(stderr, EXIT_USAGE, exc)
    except NumericalError as exc:
        return _error(stderr, EXIT_NUMERIC, exc)
    except (ValidationError, ParameterError, EvaluationError, FusionError, ValueError) as exc:
        return _error(stderr, EXIT_VALIDATION, exc)
    except (OverflowError, ZeroDivisionError, FloatingPointError) as exc:
        return _error(stderr, EXIT_NUMERIC, exc)
    stdout.write(payload if isinstance(payload, str) else dumps(payload))
    return EXIT_OK


def main() -> None:
    sys.exit(run_cli())


if __name__ == "__main__":
    main()
