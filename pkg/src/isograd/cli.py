"""Command-line front end.

Examples::

    isograd structure --grade 2
    isograd assemble --ms3 1 --ms1 2 --mr2 3 --mr1 4 --mc1 0.5 -o a.json
    isograd moduli a.json --check-isotropy
    isograd spectral a.json
    isograd compare a.json
    isograd decompose eta.json
    isograd verify
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import harmonic_parts as hp
from . import harmonic_structure as hs
from . import jsonio
from . import walpole as wp
from .checks import run_checks
from .errors import ClassificationFailure, IsogradError
from .tensor_algebra import DEFAULT_SYMMETRY_TOL

EXIT_INPUT = 1
EXIT_INTERNAL = 2

_SPACES = {
    "grad": hs.grad_strain,
    "sym": hs.sym_power,
    "full": hs.full_tensor,
    "harmonic": hs.harmonic_single,
}


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_INPUT, f"{self.prog}: error: {message}\n")


def _emit(text: str, output: str | None):
    if output:
        Path(output).write_text(text + "\n")
    else:
        print(text)


def cmd_structure(args):
    spec = _SPACES[args.kind](args.grade)
    if args.json:
        _emit(jsonio.dumps(hs.describe(spec), indent=2), args.output)
    else:
        _emit(hs.summary_line(spec), args.output)
    return 0


def cmd_decompose(args):
    t = jsonio.tensor3_from_json(jsonio.load(args.input), tol=args.sym_tol)
    parts = hp.decompose_t3(t)
    out = {"parts": parts.to_json(), "norms": parts.norms(), "norm": t.norm()}
    _emit(jsonio.dumps(out, indent=2), args.output)
    return 0


def cmd_moduli(args):
    a = jsonio.grad6_from_json(jsonio.load(args.input), tol=args.sym_tol)
    m = wp.extract_moduli(a)
    try:
        ratio = wp.rotation_stretch_ratio(m)
    except ZeroDivisionError:
        ratio = None
    out = {
        "moduli": m.to_json(),
        "singularity_flags": sorted(wp.singularity_flags(m, args.flag_tol)),
        "rotation_stretch_ratio": ratio,
    }
    if args.check_isotropy:
        out["isotropic"] = wp.is_isotropic(a, trials=args.trials, tol=args.tol, seed=args.seed)
    _emit(jsonio.dumps(out, indent=2), args.output)
    return 0


def cmd_assemble(args):
    m = wp.IsotropicModuli(args.ms3, args.ms1, args.mr2, args.mr1, args.mc1)
    _emit(jsonio.dumps(jsonio.grad6_to_json(wp.assemble(m))), args.output)
    return 0


def cmd_spectral(args):
    a = jsonio.grad6_from_json(jsonio.load(args.input), tol=args.sym_tol)
    spectrum = wp.kelvin_spectrum(a, tol=args.cluster_tol)
    _emit(jsonio.dumps(jsonio.spectrum_to_json(spectrum)), args.output)
    return 0


def cmd_compare(args):
    a = jsonio.grad6_from_json(jsonio.load(args.input), tol=args.sym_tol)
    _emit(jsonio.dumps(wp.compare(a, tol=args.tol).to_json(), indent=2), args.output)
    return 0


def cmd_verify(args):
    results = run_checks(args.seed)
    if args.json:
        payload = [{"check": r.name, "passed": r.passed, "detail": r.detail} for r in results]
        _emit(jsonio.dumps(payload, indent=2), args.output)
    else:
        _emit("\n".join(r.line() for r in results), args.output)
    return 0 if all(r.passed for r in results) else EXIT_INTERNAL


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="isograd", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def add(name, func, help_):
        p = sub.add_parser(name, help=help_)
        p.set_defaults(func=func)
        p.add_argument("-o", "--output", help="write the result to this file instead of stdout")
        return p

    def add_sym_tol(p):
        p.add_argument("--sym-tol", type=float, default=DEFAULT_SYMMETRY_TOL,
                       help="relative tolerance for index-symmetry checks on input")

    p = add("structure", cmd_structure, "harmonic decomposition of a tensor space")
    p.add_argument("--grade", type=int, required=True, help="order n of the space")
    p.add_argument("--kind", choices=sorted(_SPACES), default="grad",
                   help="grad: n-th strain gradient (default); sym: S^n; full: tensor power; "
                        "harmonic: H^n")
    p.add_argument("--json", action="store_true", help="print JSON instead of a text line")

    p = add("decompose", cmd_decompose, "harmonic parts of a strain-gradient tensor")
    p.add_argument("input", help="t3-vec18 or t3-full JSON file")
    add_sym_tol(p)

    p = add("moduli", cmd_moduli, "isotropic moduli of a sixth-order tensor")
    p.add_argument("input", help="a18 JSON file")
    p.add_argument("--check-isotropy", action="store_true")
    p.add_argument("--trials", type=int, default=20)
    p.add_argument("--tol", type=float, default=1e-9, help="isotropy tolerance")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--flag-tol", type=float, default=1e-12, help="singularity tolerance")
    add_sym_tol(p)

    p = add("assemble", cmd_assemble, "sixth-order tensor from five moduli")
    for name in wp.IsotropicModuli.FIELDS:
        p.add_argument(f"--{name}", type=float, required=True)

    p = add("spectral", cmd_spectral, "Kelvin spectrum of a sixth-order tensor")
    p.add_argument("input", help="a18 JSON file")
    p.add_argument("--cluster-tol", type=float, default=1e-9)
    add_sym_tol(p)

    p = add("compare", cmd_compare, "whether Walpole and Kelvin representations coincide")
    p.add_argument("input", help="a18 JSON file")
    p.add_argument("--tol", type=float, default=1e-9)
    add_sym_tol(p)

    p = add("verify", cmd_verify, "run the invariant suite")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--json", action="store_true")
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command == "moduli" and (args.trials < 1 or args.tol <= 0):
        parser.error("--trials must be >= 1 and --tol positive")
    try:
        return args.func(args)
    except ClassificationFailure as exc:
        print(f"isograd: internal invariant failure: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    except (IsogradError, ValueError) as exc:
        print(f"isograd: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except RuntimeError as exc:
        print(f"isograd: internal invariant failure: {exc}", file=sys.stderr)
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
