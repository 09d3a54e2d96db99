"""Command-line front end: ``construct``, ``verify``, ``simulate`` and ``bounds``.

Exit status: 0 on success, 2 when verification finds a violation, 1 on usage
or input errors.  ``--format kv`` prints one ``key=value`` per line; witness
indices are 1-based.
"""

from __future__ import annotations

import argparse
import sys

import numpy as np

from . import channel, rs_core
from .finite_field import BaseField, FieldError, is_prime, prime_power, poly_str
from .insdel_verify import enumerate_violations, verify_code
from .rs_core import CodeError, ConstructionKind


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def _emit(record, fmt, out):
    if fmt == "kv":
        for key, value in record.items():
            out.write(f"{key}={value}\n")
    else:
        width = max(map(len, record), default=0)
        for key, value in record.items():
            out.write(f"{key.replace('_', ' '):<{width}}  {value}\n")


def _code_from_args(args):
    if getattr(args, "code_file", None):
        try:
            with open(args.code_file, encoding="utf-8") as fh:
                return rs_core.loads(fh.read())
        except OSError as exc:
            raise UsageError(f"cannot read code file: {exc}") from exc
    if args.p is None or args.n is None or args.kind is None:
        raise UsageError("give --p, --n and --kind (or --code-file)")
    base = BaseField(args.p, args.e)
    return rs_core.construct_code(base, args.n, args.kind, ordering=args.ordering_seed)


def _join(values):
    return ",".join(str(v) for v in values)


def cmd_construct(args, out):
    code = _code_from_args(args)
    if args.format == "kv":
        out.write(rs_core.dumps(code))
        return 0
    base = code.base
    _emit(
        {
            "base_field": f"GF({base.q})" + (f" = GF({base.p})[x]/({base.modulus_str()})" if base.e > 1 else ""),
            "gamma_min_poly": poly_str(code.tower.gamma_min_poly, "g"),
            "field_size": code.tower.order,
            "kind": code.kind.value,
            "n": code.n,
            "k": code.k,
            "radius": rs_core.decoding_radius(code.n, code.k),
            "delta": _join(code.delta.elements),
            "alpha": _join(code.alpha_values()),
        },
        "text",
        out,
    )
    return 0


def cmd_verify(args, out):
    code = _code_from_args(args)
    report = verify_code(code)
    rec = {"n": code.n, "k": code.k, "field_size": code.tower.order}
    rec.update(report.record(timing=args.timing))
    if not report.passed and args.witness_limit > 1:
        for idx, v in enumerate(enumerate_violations(code, args.witness_limit), start=1):
            rec[f"witness_{idx}"] = f"I={_join(v.I)};J={_join(v.J)};det={v.determinant.value}"
    _emit(rec, args.format, out)
    return 0 if report.passed else 2


def _derived_seeds(seed):
    children = np.random.SeedSequence(seed).spawn(2)
    return [int(c.generate_state(1, np.uint64)[0]) for c in children]


def cmd_simulate(args, out):
    code = _code_from_args(args)
    if code.k != 2:
        raise UsageError("simulation decodes two-dimensional codes only")
    n = code.n
    radius = rs_core.decoding_radius(n, 2)
    if args.t_del < 0 or args.t_ins < 0:
        raise UsageError("error counts must be non-negative")
    if args.t_del > n:
        raise UsageError(f"cannot delete {args.t_del} of {n} symbols")
    if args.t_del + args.t_ins > radius and not args.force:
        raise UsageError(
            f"{args.t_del + args.t_ins} edits exceed the guaranteed radius n-3 = {radius}; pass --force to run anyway"
        )
    msg_seed, chan_seed = _derived_seeds(args.seed)
    T = code.tower
    rng = np.random.default_rng(msg_seed)
    msg = rs_core.MessagePoly(tuple(T.decode(int(v)) for v in rng.integers(0, T.order, size=2)))
    codeword = rs_core.encode(code, msg)
    script = channel.random_edit_script(n, args.t_del, args.t_ins, chan_seed, T)
    received = channel.apply_edits(codeword, script)
    result = channel.decode_k2(code, received)
    decoded = result.message
    rec = {
        "n": n,
        "radius": radius,
        "seed": args.seed,
        "message": _join(msg.values()),
        "codeword": _join(c.value for c in codeword),
        "script": script.dumps(),
        "received": _join(c.value for c in received),
        "outcome": result.outcome.value,
        "decoded": _join(decoded.values()) if decoded else "",
        "success": str(decoded == msg).lower(),
    }
    _emit(rec, args.format, out)
    return 0


def smallest_base_field(n):
    """Smallest prime power ``q >= n + 1`` and the construction reaching length ``n`` over it."""
    q = n + 1
    while prime_power(q) is None:
        q += 1
    kind = ConstructionKind.INVERSE if q % 2 == 0 else ConstructionKind.SQUARE
    return q, kind


def cmd_bounds(args, out):
    if args.n is None:
        raise UsageError("--n is required")
    upper, lower = rs_core.field_size_bounds(args.n)
    q, kind = smallest_base_field(args.n)
    _emit(
        {
            "n": args.n,
            "upper": upper,
            "lower": lower,
            "ratio": f"{upper / lower:.4f}" if lower else "inf",
            "base_field_q": q,
            "base_field_kind": kind.value,
            "base_field_size": q**3,
        },
        args.format,
        out,
    )
    return 0


def build_parser():
    parser = _Parser(prog="insdel-rs", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(p, code=True):
        p.add_argument("--format", choices=("text", "kv"), default="text")
        if code:
            p.add_argument("--p", type=int, help="base field characteristic")
            p.add_argument("--e", type=int, default=1, help="base field extension degree")
            p.add_argument("--n", type=int, help="code length")
            p.add_argument("--kind", choices=("inverse", "square"))
            p.add_argument("--ordering-seed", type=int, default=None, help="shuffle the delta-set with this seed")

    p = sub.add_parser("construct", help="print an explicit [n,2] code")
    common(p)
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("verify", help="check the determinant condition exhaustively")
    common(p)
    p.add_argument("--code-file", help="code record produced by 'construct --format kv'")
    p.add_argument("--witness-limit", type=int, default=1)
    p.add_argument("--timing", action="store_true", help="include elapsed_ms in the report")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("simulate", help="encode, corrupt and decode one message")
    common(p)
    p.add_argument("--code-file")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--t-del", type=int, default=0)
    p.add_argument("--t-ins", type=int, default=0)
    p.add_argument("--force", action="store_true", help="allow more than n-3 edits")
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("bounds", help="field-size figures for length n")
    common(p, code=False)
    p.add_argument("--n", type=int)
    p.set_defaults(func=cmd_bounds)
    return parser


def main(argv=None, out=None):
    out = out or sys.stdout
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "seed", 0) is not None and not 0 <= getattr(args, "seed", 0) < 2**64:
        parser.error("--seed must be a 64-bit unsigned integer")
    if getattr(args, "witness_limit", 1) < 1:
        parser.error("--witness-limit must be at least 1")
    if getattr(args, "p", None) is not None and not is_prime(args.p):
        parser.error(f"--p {args.p} is not prime")
    try:
        return args.func(args, out)
    except (UsageError, CodeError, FieldError, ValueError) as exc:
        print(f"insdel-rs {args.command}: error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
