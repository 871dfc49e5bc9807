"""Command line front end.

Exit codes: 0 when the requested operation completed (whatever the
mathematical verdict), 1 on malformed input or usage, 2 when an
internal invariant failed.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import _io, geometry
from .certify import CertifyConfig, certify, verify_witness
from .generators import (
    GenerationError,
    gen_elliptic_quintic_config,
    gen_example18,
    gen_general_instance,
    gen_nodisj17,
    gen_rational_quintic_config,
)
from .pointconfig import is_general_position


def _build_parser():
    parser = argparse.ArgumentParser(
        prog="waring6",
        description="Exact certification of minimality and uniqueness for "
        "length-r sextic decompositions in P^3 (r <= 18).",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("certify", help="run the full certification pipeline")
    p.add_argument("--input", required=True, help="instance JSON with points and sextic")
    p.add_argument("--out", required=True, help="certificate JSON to write")
    p.add_argument("--primes", default="2,3",
                   help="comma-separated primes for the enumeration reports")
    p.add_argument("--planes", type=int, default=8,
                   help="plane sections tried by the base-locus test")
    p.add_argument("--seed", type=int, default=0, help="seed for seeded subroutines")

    p = sub.add_parser("hf", help="Hilbert function of the point configuration")
    p.add_argument("--input", required=True)
    p.add_argument("--max-degree", type=int, default=7)

    p = sub.add_parser("gp-check", help="general-position subset certificate")
    p.add_argument("--input", required=True)

    p = sub.add_parser("gen", help="write a seeded instance")
    p.add_argument("kind", choices=["general", "rat5", "ell5", "example18", "nodisj17"])
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--r", type=int, default=18, help="number of points (general only)")
    p.add_argument("--p", type=int, default=101,
                   help="field characteristic (ell5 / nodisj17)")
    p.add_argument("--field", type=int, default=0,
                   help="0 for rational instances, a prime >= 101 otherwise "
                   "(general / example18)")
    p.add_argument("--out", required=True)
    p.add_argument("--witness-out", default=None,
                   help="also write the known witness quartic (example18)")

    p = sub.add_parser("gamma-sample", help="random sextics supported on the points")
    p.add_argument("--input", required=True)
    p.add_argument("--count", type=int, default=10)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", required=True)

    p = sub.add_parser("verify", help="check a claimed witness quartic exactly")
    p.add_argument("--input", required=True)
    p.add_argument("--witness", required=True)
    p.add_argument("--seed", type=int, default=0)
    return parser


def _load_with_doc(path):
    with open(path) as fh:
        try:
            doc = json.load(fh)
        except json.JSONDecodeError as e:
            raise _io.InputError("$", "not valid JSON: %s" % e)
    return _io.load_instance(doc), doc


def _cmd_certify(args):
    inst, doc = _load_with_doc(args.input)
    if inst.phi is None:
        raise _io.InputError("sextic", "certify needs the sextic coefficients")
    try:
        primes = tuple(int(x) for x in args.primes.split(",") if x.strip())
    except ValueError:
        raise _io.InputError("--primes", "expected comma-separated integers")
    for q in primes:
        if q < 2:
            raise _io.InputError("--primes", "primes must be at least 2")
    cfg = CertifyConfig(primes=primes, planes=args.planes, seed=args.seed)
    cert = certify(inst.points, inst.phi, cfg)
    _io.save_certificate(cert, args.out, input_doc=doc)
    rank = cert.rank_certified
    print("status: %s  rank_certified: %s" % (cert.status, rank if rank else "-"))
    print("certificate written to %s" % args.out)
    return 0


def _cmd_hf(args):
    inst, _ = _load_with_doc(args.input)
    config = inst.points
    dmax = max(0, args.max_degree)
    values = [config.hilbert_function(d) for d in range(dmax + 1)]
    diffs = config.difference_hilbert(dmax)
    print("degree  h  diff")
    for d in range(dmax + 1):
        print("%6d %3d %5d" % (d, values[d], diffs[d]))
    return 0


def _cmd_gp_check(args):
    inst, _ = _load_with_doc(args.input)
    report = is_general_position(inst.points)
    for d, count in report.checks:
        print("degree %d: %d subset check%s" % (d, count, "" if count == 1 else "s"))
    if report.ok:
        print("general position: yes")
    else:
        d, indices = report.witness
        print("general position: no")
        print("witness: degree %d subset %s" % (d, list(indices)))
    return 0


def _cmd_gen(args):
    kind = args.kind
    if kind == "general":
        out = gen_general_instance(args.r, args.seed, field=args.field)
    elif kind == "rat5":
        out = gen_rational_quintic_config(args.seed)
    elif kind == "ell5":
        out = gen_elliptic_quintic_config(args.seed, p=args.p)
    elif kind == "example18":
        out = gen_example18(args.seed, field=args.field)
    else:
        out = gen_nodisj17(args.seed, p=args.p)
    metadata = {
        "generator": out.name,
        "seed": out.seed,
        "expected_status": out.expected_status,
        "diagnostics": out.diagnostics,
    }
    if out.witness is not None:
        metadata["witness"] = out.witness
    _io.save_instance(out.points, out.phi, out.char, args.out, metadata=metadata)
    print("wrote %s (%s, %d points, char %d, expected %s)"
          % (args.out, out.name, out.points.n, out.char, out.expected_status))
    if args.witness_out:
        if out.witness is None:
            raise _io.InputError("--witness-out", "%s has no known witness" % kind)
        _io.save_witness(out.witness["quartic"], args.witness_out)
        print("witness quartic written to %s" % args.witness_out)
    return 0


def _cmd_gamma_sample(args):
    import random

    from .polyring import n_monomials, veronese_dual

    inst, _ = _load_with_doc(args.input)
    config = inst.points
    rng = random.Random("gamma-sample:%d" % args.seed)
    char = config.char
    samples = []
    for _ in range(args.count):
        phi = [0] * n_monomials(6)
        for P in config.points:
            w = rng.randrange(1, char) if char else rng.choice(
                [x for x in range(-9, 10) if x]
            )
            v = veronese_dual(P, 6)
            for i in range(len(phi)):
                phi[i] += w * v[i]
        if char:
            phi = [x % char for x in phi]
        samples.append(phi)
    _io.save_samples(samples, args.out,
                     metadata={"seed": args.seed, "count": args.count, "char": char})
    print("wrote %d samples to %s" % (len(samples), args.out))
    return 0


def _cmd_verify(args):
    inst, _ = _load_with_doc(args.input)
    if inst.phi is None:
        raise _io.InputError("sextic", "verify needs the sextic coefficients")
    quartic = _io.load_witness(args.witness)
    if inst.char:
        quartic = [int(c) % inst.char for c in quartic]
    ver = verify_witness(inst.phi, inst.points, quartic, seed=args.seed)
    for entry in ver.checks:
        print("%-40s %s" % (entry["name"], entry["verdict"]))
    print("witness verified: %s" % ("yes" if ver.ok else "no"))
    return 0


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return 0 if e.code in (0, None) else 1
    handlers = {
        "certify": _cmd_certify,
        "hf": _cmd_hf,
        "gp-check": _cmd_gp_check,
        "gen": _cmd_gen,
        "gamma-sample": _cmd_gamma_sample,
        "verify": _cmd_verify,
    }
    try:
        return handlers[args.command](args)
    except _io.InputError as e:
        print("input error: %s" % e, file=sys.stderr)
        return 1
    except FileNotFoundError as e:
        print("input error: %s" % e, file=sys.stderr)
        return 1
    except (GenerationError, geometry.ResidualComputationError, AssertionError) as e:
        print("internal error: %s" % e, file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
