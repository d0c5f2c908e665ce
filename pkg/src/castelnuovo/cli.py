"""Command-line driver.

Exit status is 0 when the requested check holds, 1 when it fails and 2 for
malformed input (with the offending line reported on stderr).
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from importlib import resources
from pathlib import Path

from castelnuovo.groebner import (
    Ideal,
    buchberger,
    eliminate,
    hilbert_profile,
    ideal_member,
    membership_certificate,
    minimal_power,
    radical_member,
)
from castelnuovo.invariants import (
    BundleClass,
    c2_budget,
    castelnuovo_numbers,
    chow_intersect,
    double_cover_invariants,
    enumerate_type2,
    node_count,
)
from castelnuovo.polyring import (
    PolynomialSyntaxError,
    format_polynomial,
    parse_order,
    parse_polynomial,
    parse_ring,
)
from castelnuovo.surfgeom import SurfaceFileError, build_sigma, parse_surface_file, verify

EXIT_OK, EXIT_FAIL, EXIT_INPUT = 0, 1, 2


class InputError(Exception):
    def __init__(self, message: str, path: str | None = None, line: int | None = None):
        where = path or ""
        if line is not None:
            where = f"{where}:{line}" if where else f"line {line}"
        super().__init__(f"{where}: {message}" if where else message)


def resolve_input(path: str) -> Path:
    """The file itself, or a bundled fixture of the same name."""
    p = Path(path)
    if p.is_file():
        return p
    bundled = resources.files("castelnuovo") / "fixtures" / p.name
    if bundled.is_file():
        return Path(str(bundled))
    raise InputError("no such file", path)


def read_text(path: str) -> tuple[str, str]:
    p = resolve_input(path)
    try:
        return str(p), p.read_text(encoding="utf-8")
    except (OSError, UnicodeDecodeError) as e:
        raise InputError(str(e), path) from None


def parse_ideal_file(text: str, path: str = "", transcript: bool = False) -> Ideal:
    """A ring header line followed by one polynomial per line; ``#`` starts a comment."""
    ring, gens = None, []
    for num, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        try:
            if ring is None:
                if not line.startswith("ring"):
                    raise ValueError("expected a ring declaration first")
                ring = parse_ring(line)
            else:
                gens.append(parse_polynomial(line, ring, transcript=transcript))
        except ValueError as e:
            raise InputError(str(e), path, num) from None
    if ring is None:
        raise InputError("missing ring declaration", path)
    return Ideal(ring, gens)


def _load_ideal(args) -> Ideal:
    path, text = read_text(args.file)
    return parse_ideal_file(text, path, args.transcript)


def _parse_poly_arg(src: str, ideal: Ideal, transcript: bool):
    try:
        return parse_polynomial(src, ideal.ring, transcript=transcript)
    except PolynomialSyntaxError as e:
        raise InputError(str(e), "--poly") from None


def _emit(args, payload, text: str) -> None:
    if args.json:
        print(json.dumps(payload, indent=2))
    else:
        print(text)


def _bool(b: bool) -> str:
    return "true" if b else "false"


# -- ideal commands -----------------------------------------------------------

def cmd_gb(args) -> int:
    ideal = _load_ideal(args)
    order = parse_order(args.order) if args.order else None
    gb = buchberger(ideal, order)
    info = gb.gb_cache
    basis = [format_polynomial(f) for f in info.basis]
    payload = {"ring": gb.ring.header(), "basis": basis, "size": len(basis),
               "degree_reached": info.degree_reached}
    _emit(args, payload, "\n".join([gb.ring.header()] + basis))
    return EXIT_OK


def cmd_member(args) -> int:
    ideal = _load_ideal(args)
    f = _parse_poly_arg(args.poly, ideal, args.transcript)
    ok = ideal_member(f, ideal)
    payload = {"member": ok}
    text = _bool(ok)
    if ok and args.certificate:
        cert = membership_certificate(f, ideal)
        payload["cofactors"] = [format_polynomial(c) for c in cert]
        text += "\n" + "\n".join(f"g{i + 1}: {c}" for i, c in enumerate(payload["cofactors"]))
    _emit(args, payload, text)
    return EXIT_OK if ok else EXIT_FAIL


def cmd_radical(args) -> int:
    ideal = _load_ideal(args)
    f = _parse_poly_arg(args.poly, ideal, args.transcript)
    if args.power is None:
        ok = radical_member(f, ideal)
        payload = {"radical_member": ok, "method": "radical"}
        text = _bool(ok)
    else:
        n = minimal_power(f, ideal, args.power)
        ok = n is not None
        payload = {"radical_member": ok, "method": "power", "power": n}
        text = f"{_bool(ok)} (power {n})" if ok else f"false (no power <= {args.power})"
    _emit(args, payload, text)
    return EXIT_OK if ok else EXIT_FAIL


def cmd_eliminate(args) -> int:
    ideal = _load_ideal(args)
    names = [v.strip() for v in args.vars.split(",") if v.strip()]
    unknown = [v for v in names if v not in ideal.ring.variables]
    if unknown or not names:
        raise InputError(f"not ring variables: {unknown or args.vars!r}", "--vars")
    if len(names) >= ideal.ring.nvars:
        raise InputError("cannot eliminate every variable", "--vars")
    res = eliminate(ideal, names)
    gens = [format_polynomial(f) for f in res.generators]
    payload = {"ring": res.ring.header(), "generators": gens}
    _emit(args, payload, "\n".join([res.ring.header()] + gens))
    return EXIT_OK


def cmd_hilbert(args) -> int:
    ideal = _load_ideal(args)
    prof = hilbert_profile(ideal)
    payload = {"codim": prof.codimension, "degree": prof.degree}
    _emit(args, payload, f"codimension : {prof.codimension}\ndegree      : {prof.degree}")
    return EXIT_OK


# -- surface commands ----------------------------------------------------------

def _load_surface(args):
    path, text = read_text(args.file)
    try:
        return parse_surface_file(text, args.transcript)
    except SurfaceFileError as e:
        raise InputError(e.message, path, e.line) from None


def cmd_build_sigma(args) -> int:
    inp = _load_surface(args)
    spec = build_sigma(inp.points, inp.conics, inp.lambdas or (1, 1, 1, 1), inp.ring)
    h = format_polynomial(spec.h)
    payload = {"ring": spec.ring.header(), "lambda": list(spec.lambdas),
               "terms": len(spec.h), "h": h}
    _emit(args, payload, f"{spec.ring.header()}\n{h}")
    return EXIT_OK


def cmd_verify(args) -> int:
    inp = _load_surface(args)
    power = args.power if args.power is not None else inp.power
    if args.jobs < 1:
        raise InputError("--jobs must be positive")
    report = verify(inp.points, inp.conics, inp.lambdas, inp.ring, seed=args.seed,
                    retries=args.retries, power=power, jobs=args.jobs,
                    affine=args.affine_check)
    if args.json:
        print(json.dumps(report.to_json(), indent=2))
    else:
        lines = []
        for c in report.charts:
            extra = "".join(f" {k}={v}" for k, v in c.certificate.items())
            lines.append(f"chart ({c.chart}) : nodal_ok={_bool(c.nodal_ok)} "
                         f"degree={c.gb_degree_reached}{extra}")
        if report.segre is not None:
            lines += [f"codimension : {report.segre.codimension}",
                      f"degree      : {report.segre.degree}"]
        lines += [f"expected nodes : {report.expected_nodes}",
                  f"even set       : {_bool(report.even_set)}",
                  f"lambda         : {','.join(map(str, report.lambdas))}",
                  f"attempts       : {report.attempts}",
                  f"passed         : {_bool(report.passed)}"]
        print("\n".join(lines))
    return EXIT_OK if report.passed and report.even_set else EXIT_FAIL


# -- numerical invariants ----------------------------------------------------------

RECORD_COLUMNS = ("family", "g", "p_g", "q", "K2", "nu", "abc")


def format_table(records) -> str:
    rows = [list(RECORD_COLUMNS) + ["flags"]]
    for r in records:
        d = r.to_json()
        cells = []
        for col in RECORD_COLUMNS:
            v = d[col]
            cells.append("-" if v is None else ",".join(map(str, v)) if col == "abc" else str(v))
        cells.append(" ".join(f"{k}={_bool(v)}" for k, v in r.flags.items()) or "-")
        rows.append(cells)
    widths = [max(len(row[i]) for row in rows) for i in range(len(rows[0]))]
    return "\n".join("  ".join(c.rjust(w) for c, w in zip(row, widths)).rstrip() for row in rows)


def _need(args, *names):
    missing = [n for n in names if getattr(args, n) is None]
    if missing:
        raise InputError("missing " + ", ".join("--" + n.replace("_", "-") for n in missing))


def _int_list(text: str, what: str, length: int) -> list[int]:
    try:
        vals = [int(x) for x in text.split(",")]
    except ValueError:
        raise InputError(f"expected {length} comma-separated integers, got {text!r}", what) from None
    if len(vals) != length:
        raise InputError(f"expected {length} comma-separated integers, got {text!r}", what)
    return vals


def cmd_invariants(args) -> int:
    if args.node_count:
        _need(args, "pg", "q")
        nu = node_count(args.pg, args.q)
        _emit(args, {"nu": nu}, str(nu))
        return EXIT_OK
    if args.castelnuovo is not None:
        rec = castelnuovo_numbers(*args.castelnuovo)
        if args.json:
            print(json.dumps([rec.to_json()], indent=2))
        else:
            print(format_table([rec]))
        return EXIT_OK if all(rec.flags.values()) else EXIT_FAIL
    if args.double_cover:
        _need(args, "pg", "q", "k2", "nu")
        chi, k2 = double_cover_invariants(args.pg, args.q, args.k2, args.nu)
        _emit(args, {"chi": chi, "K2": k2}, f"chi(O_X) : {chi}\nK_X^2    : {k2}")
        return EXIT_OK
    if args.c2:
        _need(args, "g", "pg")
        lhs, rhs, ok = c2_budget(args.g, args.pg)
        _emit(args, {"lhs": lhs, "rhs": rhs, "ok": ok}, f"{lhs} >= {rhs} : {_bool(ok)}")
        return EXIT_OK if ok else EXIT_FAIL
    _need(args, "abc")
    abc = tuple(_int_list(args.abc, "--abc", 3))
    classes = [BundleClass(*_int_list(c, "--chow", 2), abc) for c in args.chow]
    value = chow_intersect(*classes)
    _emit(args, {"intersection": value}, str(value))
    return EXIT_OK


def cmd_enumerate(args) -> int:
    records = enumerate_type2(args.gmax)
    if args.json:
        print(json.dumps([r.to_json() for r in records], indent=2))
    else:
        print(format_table(records))
    return EXIT_OK


# -- argument parsing -------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="machine-readable output")
    common.add_argument("-v", "--verbose", action="store_true", help="log progress to stderr")

    infile = argparse.ArgumentParser(add_help=False)
    infile.add_argument("file", help="input file (bundled fixtures are found by name)")
    infile.add_argument("--transcript", action="store_true",
                        help="also accept juxtaposed exponents such as x2 for x^2")

    parser = argparse.ArgumentParser(prog="castelnuovo", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gb", parents=[common, infile], help="reduced Groebner basis")
    p.add_argument("--order", help="override the ring's monomial order")
    p.set_defaults(func=cmd_gb)

    p = sub.add_parser("member", parents=[common, infile], help="ideal membership")
    p.add_argument("--poly", required=True)
    p.add_argument("--certificate", action="store_true", help="print cofactors")
    p.set_defaults(func=cmd_member)

    p = sub.add_parser("radical", parents=[common, infile], help="radical membership")
    p.add_argument("--poly", required=True)
    p.add_argument("--power", type=int, help="look for f^N in the ideal with N up to this bound")
    p.set_defaults(func=cmd_radical)

    p = sub.add_parser("eliminate", parents=[common, infile], help="elimination ideal")
    p.add_argument("--vars", required=True, help="comma-separated variables to eliminate")
    p.set_defaults(func=cmd_eliminate)

    p = sub.add_parser("hilbert", parents=[common, infile], help="codimension and degree")
    p.set_defaults(func=cmd_hilbert)

    p = sub.add_parser("build-sigma", parents=[common, infile], help="print the surface equation")
    p.set_defaults(func=cmd_build_sigma)

    p = sub.add_parser("verify", parents=[common, infile], help="run the nodal/Segre/even-set checks")
    p.add_argument("--power", type=int, help="literal w^N reduction instead of the radical test")
    p.add_argument("--seed", type=int, default=0, help="seed for re-drawn weights")
    p.add_argument("--retries", type=int, default=5, help="re-draws of the weights after a failed attempt")
    p.add_argument("--jobs", type=int, default=1, help="worker processes for the charts")
    p.add_argument("--affine-check", action="store_true",
                   help="cross-check each chart with the affine singular locus")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("invariants", parents=[common], help="closed-form surface invariants")
    mode = p.add_mutually_exclusive_group(required=True)
    mode.add_argument("--node-count", action="store_true", help="4(1+p_g+q)")
    mode.add_argument("--castelnuovo", nargs=3, type=int, metavar=("A", "B", "C"))
    mode.add_argument("--double-cover", action="store_true", help="(chi(O_X), K_X^2)")
    mode.add_argument("--c2", action="store_true", help="Noether c_2 against the fibre bound")
    mode.add_argument("--chow", nargs=3, metavar="M,N", help="intersect three classes mT+nL")
    p.add_argument("--pg", type=int)
    p.add_argument("--q", type=int)
    p.add_argument("--k2", type=int)
    p.add_argument("--nu", type=int)
    p.add_argument("--g", type=int)
    p.add_argument("--abc", help="bundle data a,b,c for --chow")
    p.set_defaults(func=cmd_invariants)

    p = sub.add_parser("enumerate-type2", parents=[common], help="type-II numerical possibilities")
    p.add_argument("--gmax", type=int, required=True)
    p.set_defaults(func=cmd_enumerate)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_OK if e.code == 0 else EXIT_INPUT
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s", stream=sys.stderr)
    try:
        return args.func(args)
    except InputError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INPUT
    except (ValueError, ArithmeticError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INPUT
    except Exception as e:  # keep the exit-code contract for unforeseen failures
        print(f"internal error: {type(e).__name__}: {e}", file=sys.stderr)
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
