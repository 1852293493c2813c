"""Command line interface: parse quartic files, run analyses and verifications,
classify dim-8 cases and generate example quartics.

Exit codes: 0 all requested checks pass; 2 the quartic is mathematically
rejected (fails invariance, or reality in --real mode); 1 operational failure
(I/O, malformed input, bad flags).
"""

import argparse
import hashlib
import json
import sys

from . import __version__
from .exactnum import ContractError, ScalarError
from .symplectic import quaternionic_from_json
from .symtensor import quartic_from_dict, quartic_to_dict, support, tau
from .hkalgebra import (
    NotHyperKahlerError,
    TheoremViolationError,
    analyze_quartic,
    build_complex_algebra,
    check_invariance,
    find_lagrangian,
    verify_jacobi,
)
from .realform import RealityError, check_reality
from .dim8 import classify_complex8, classify_real8
from .generators import make_generator, standard_split_j

GENERATOR_KINDS = (
    "dim4",
    "petrov:I", "petrov:II", "petrov:D", "petrov:III", "petrov:N", "petrov:O",
    "random-lagrangian:<n>",
    "real-random:<m>",
)


def _read_quartic(path):
    with open(path, "r", encoding="utf-8") as fh:
        raw = fh.read()
    data = json.loads(raw)
    s = quartic_from_dict(data)
    digest = hashlib.sha256(raw.encode("utf-8")).hexdigest()
    return s, digest


def _default_j(sp):
    if sp.dim % 4 != 0:
        raise ContractError(
            "no compatible default quaternionic structure: dim E = %d is not "
            "divisible by 4 (supply --j)" % sp.dim
        )
    return standard_split_j(sp)


def _load_j(args, sp):
    if getattr(args, "j", None):
        with open(args.j, "r", encoding="utf-8") as fh:
            return quaternionic_from_json(json.load(fh), ambient=sp)
    return _default_j(sp)


def _emit(args, payload, human_lines):
    if args.json:
        sys.stdout.write(json.dumps(payload, indent=2, sort_keys=False) + "\n")
    else:
        for line in human_lines:
            sys.stdout.write(line + "\n")


def cmd_analyze(args):
    s, digest = _read_quartic(args.file)
    j = _load_j(args, s.space) if args.real else None
    report = analyze_quartic(s, j=j, real=args.real)
    payload = {"tool_version": __version__, "input_sha256": digest}
    payload.update(report.to_dict())
    lines = []
    if not report.invariance_ok:
        lines.append("invariance: FAIL (witness basis pair %s)" % (report.invariance_witness,))
        _emit(args, payload, lines)
        return 2
    lines.append("invariance: pass")
    lines.append(
        "holonomy: dim %d, abelian=%s, solvable=%s"
        % (report.holonomy.dimension, report.holonomy.is_abelian, report.holonomy.is_solvable)
    )
    lines.append("support: dim %d, isotropic=%s" % (report.support_dim, report.support_isotropic))
    lines.append("lagrangian: %s" % report.lagrangian_found.to_strings())
    lines.append("flat complex dim: %d" % report.flat_complex_dim)
    lines.append("jacobi: %s" % ("pass" if report.jacobi_ok else "FAIL"))
    lines.append("ricci zero: %s" % ("pass" if report.ricci_zero else "FAIL"))
    exit_code = 0
    if args.real:
        rl = report.reality
        lines.append(
            "reality: commutator=%s tau-fixed=%s"
            % (rl["commutator_condition_ok"], rl["tau_fixed"])
        )
        if report.signature is not None:
            lines.append("signature on m: (%d, %d)" % tuple(report.signature))
        if not rl["commutator_condition_ok"]:
            exit_code = 2
    if report.classification is not None:
        lines.append("classification: %s" % report.classification)
    _emit(args, payload, lines)
    return exit_code


def cmd_verify(args):
    s, digest = _read_quartic(args.file)
    checks = {}
    lines = []
    failed = False
    if args.invariance:
        ok, witness = check_invariance(s)
        checks["invariance"] = {"ok": ok, "witness": list(witness) if witness else None}
        lines.append(
            "invariance: %s" % ("pass" if ok else "FAIL (witness basis pair %s)" % (witness,))
        )
        failed = failed or not ok
    if args.jacobi:
        try:
            model = build_complex_algebra(s)
            ok, witness = verify_jacobi(model)
        except NotHyperKahlerError as exc:
            ok, witness = False, exc.witness
        checks["jacobi"] = {"ok": ok, "witness": list(witness) if witness else None}
        lines.append("jacobi: %s" % ("pass" if ok else "FAIL (witness %s)" % (witness,)))
        failed = failed or not ok
    if args.reality:
        j = _load_j(args, s.space)
        rep = check_reality(s, j)
        ok = rep.commutator_condition_ok and rep.tau_fixed
        checks["reality"] = {
            "ok": ok,
            "commutator_condition_ok": rep.commutator_condition_ok,
            "tau_fixed": rep.tau_fixed,
        }
        lines.append("reality: %s" % ("pass" if ok else "FAIL"))
        failed = failed or not ok
    payload = {"tool_version": __version__, "input_sha256": digest, "checks": checks}
    _emit(args, payload, lines)
    return 2 if failed else 0


def cmd_classify8(args):
    s, digest = _read_quartic(args.file)
    if s.space.n != 2:
        raise ContractError("classify8 needs a quartic on dim E = 4 (n = 2)")
    e_plus = find_lagrangian(s)
    cls = classify_complex8(s, e_plus)
    payload = {"tool_version": __version__, "input_sha256": digest}
    payload.update(cls.to_dict())
    payload["mode"] = "real" if args.real else "complex"
    lines = ["type: %s" % cls.type_tag, "pattern: %s" % (list(cls.multiplicity_pattern),)]
    if cls.projective_invariant is not None:
        first, second = cls.projective_invariant
        shown = "at infinity" if not first else str(second)
        lines.append("invariant (I^3 : J^2): %s" % shown)
    if args.real:
        j = _load_j(args, s.space)
        if tau(s, j) != s:
            raise ContractError("real classification needs a tau-fixed quartic")
        if s.is_zero():
            from .dim8 import RealOrbitClass

            rc = RealOrbitClass(kind="zero")
        else:
            rc = classify_real8(s, j, support(s))
        payload["real_class"] = rc.to_dict()
        lines.append("real class: %s" % rc.to_dict())
    _emit(args, payload, lines)
    return 0


def cmd_generate(args):
    s = make_generator(args.kind, args.seed)
    text = json.dumps(quartic_to_dict(s), indent=2, sort_keys=False) + "\n"
    if args.output and args.output != "-":
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0


def build_parser():
    parser = argparse.ArgumentParser(
        prog="hksym",
        description="Exact analysis of hyper-Kahler symmetric spaces defined by quartics.",
    )
    parser.add_argument("--version", action="version", version="hksym %s" % __version__)
    sub = parser.add_subparsers(dest="command", required=True)

    pa = sub.add_parser("analyze", help="run the full verification pipeline on a quartic file")
    pa.add_argument("file")
    pa.add_argument("--real", action="store_true", help="also check reality and the real form")
    pa.add_argument("--j", help="JSON file with a custom quaternionic structure")
    pa.add_argument("--json", action="store_true", help="emit a JSON report")
    pa.set_defaults(func=cmd_analyze)

    pv = sub.add_parser("verify", help="run selected checks only")
    pv.add_argument("file")
    pv.add_argument("--invariance", action="store_true")
    pv.add_argument("--jacobi", action="store_true")
    pv.add_argument("--reality", action="store_true")
    pv.add_argument("--j", help="JSON file with a custom quaternionic structure")
    pv.add_argument("--json", action="store_true")
    pv.set_defaults(func=cmd_verify)

    pc = sub.add_parser("classify8", help="classify a dim-8 case (quartic on dim E = 4)")
    pc.add_argument("file")
    pc.add_argument("--real", action="store_true")
    pc.add_argument("--j", help="JSON file with a custom quaternionic structure")
    pc.add_argument("--json", action="store_true")
    pc.set_defaults(func=cmd_classify8)

    pg = sub.add_parser(
        "generate",
        help="write an example quartic file; kinds: %s" % ", ".join(GENERATOR_KINDS),
    )
    pg.add_argument("kind")
    pg.add_argument("--seed", type=int, default=0)
    pg.add_argument("-o", "--output", help="output path (default stdout)")
    pg.set_defaults(func=cmd_generate)
    return parser


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if args.command == "verify" and not (args.invariance or args.jacobi or args.reality):
            parser.error("verify requires at least one of --invariance, --jacobi, --reality")
    except SystemExit as exc:
        # argparse exits 2 on usage errors; 2 is reserved for mathematical
        # rejection, so usage problems map to the operational code 1
        return 0 if not exc.code else 1
    try:
        return args.func(args)
    except (OSError, json.JSONDecodeError) as exc:
        sys.stderr.write("error: %s\n" % exc)
        return 1
    except (ScalarError, ContractError, ValueError) as exc:
        sys.stderr.write("error: %s\n" % exc)
        return 1
    except NotHyperKahlerError as exc:
        sys.stderr.write("rejected: %s\n" % exc)
        return 2
    except (RealityError, TheoremViolationError) as exc:
        sys.stderr.write("rejected: %s\n" % exc)
        return 2


if __name__ == "__main__":
    sys.exit(main())
