"""Command-line driver: ``clifford-malliavin <subcommand> ...``.

Exit codes: 0 when every assertion passes, 1 when any fails, 2 on usage or input errors.
"""
from __future__ import annotations

import argparse
import sys

from .antisym import AntiTensor
from .errors import DimensionCapError
from .grid import TimeGrid
from .report import Report, emit_report
from .serialization import load_element, load_tensor, process_to_dict
from .suites import SUITES, SuiteConfig, run_suite


class UsageError(Exception):
    pass


def _positive_int(text: str) -> int:
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text}")
    return v


def _positive_float(text: str) -> float:
    v = float(text)
    if not v > 0:
        raise argparse.ArgumentTypeError(f"expected a positive number, got {text}")
    return v


def _suite_list(text: str) -> tuple[str, ...]:
    if text == "all":
        return SUITES
    names = tuple(s.strip() for s in text.split(",") if s.strip())
    bad = [s for s in names if s not in SUITES]
    if bad or not names:
        raise argparse.ArgumentTypeError(f"unknown suite {','.join(bad) or text!r}; choose all or from {', '.join(SUITES)}")
    return names


def build_parser() -> argparse.ArgumentParser:
    out = argparse.ArgumentParser(add_help=False)
    out.add_argument("--out", help="write the report here instead of stdout")
    out.add_argument("--format", choices=("json", "csv"), default="json")

    grid = argparse.ArgumentParser(add_help=False)
    grid.add_argument("--slots", type=_positive_int, default=6, help="number of grid slots d")
    grid.add_argument("--width", type=_positive_float, default=1.0, help="slot width")
    grid.add_argument("--seed", type=int, default=42)
    grid.add_argument("--tol", type=_positive_float, default=1e-10)
    grid.add_argument("--cases", type=_positive_int, default=20, help="random cases per property")

    p = argparse.ArgumentParser(prog="clifford-malliavin", description="Clifford chaos and Malliavin calculus checks")
    sub = p.add_subparsers(dest="command", required=True)

    v = sub.add_parser("verify", parents=[grid, out], help="run the property suites")
    v.add_argument("--suite", type=_suite_list, default=SUITES, help="all, or a comma list of " + ", ".join(SUITES))

    sub.add_parser("oracle-check", parents=[grid, out], help="run the matrix-oracle suite")

    fm = sub.add_parser("fourth-moment", parents=[out], help="fourth-moment decomposition of J_q(f)")
    fm.add_argument("--input", required=True, help="tensor JSON")
    fm.add_argument("--tol", type=_positive_float, default=1e-9)

    c2 = sub.add_parser("claim2", parents=[out], help="K(F) for f = e_1 ^ e_2 ^ e_3 ^ e_4")
    c2.add_argument("--dim", type=int, default=4)
    c2.add_argument("--width", type=_positive_float, default=1.0)

    cc = sub.add_parser("concentrate", parents=[out], help="spectral tail against the concentration bounds")
    cc.add_argument("--input", required=True, help="CliffordElement JSON")
    cc.add_argument("--xmax", type=_positive_float, default=1.0)
    cc.add_argument("--xsteps", type=_positive_int, default=20)
    cc.add_argument("--ssteps", type=_positive_int, default=400)

    ls = sub.add_parser("logsobolev", parents=[out], help="two-point log-Sobolev inequality")
    ls.add_argument("--phi1", type=float, required=True, help="phi(+1)")
    ls.add_argument("--phim1", type=float, required=True, help="phi(-1)")
    ls.add_argument("--slots", type=_positive_int, default=4)

    co = sub.add_parser("clark-ocone", parents=[out], help="Clark-Ocone integrand of an element")
    co.add_argument("--input", required=True, help="CliffordElement JSON")
    co.add_argument("--tol", type=_positive_float, default=1e-10)
    return p


def _grid_header(grid: TimeGrid) -> dict:
    return {"slots": grid.slots, "width": grid.width}


def _verify(args, suites) -> Report:
    cfg = SuiteConfig(args.slots, args.width, args.seed, args.tol, tuple(suites), args.cases)
    return run_suite(cfg)


def _fourth_moment(args) -> Report:
    from .applications import fourth_moment
    from .oracle import max_dim

    f = load_tensor(args.input)
    # beyond the oracle cap the decomposition is still reported, without the oracle check
    res = fourth_moment(f, oracle=f.grid.slots <= max_dim())
    rep = res.to_report(args.tol)
    rep.inputs = {"grid": _grid_header(f.grid), "input": args.input, **rep.inputs}
    return rep


def _claim2(args) -> Report:
    from .applications import claim2_witness

    if args.dim < 4:
        raise UsageError("claim2 needs --dim >= 4")
    grid = TimeGrid(args.dim, args.width)
    res = claim2_witness(*(AntiTensor.basis(grid, k) for k in range(1, 5)))
    rep = res.to_report()
    rep.inputs = {"grid": _grid_header(grid), "f": "e_1, e_2, e_3, e_4"}
    return rep


def _concentrate(args) -> Report:
    from .applications import concentration_tail

    F = load_element(args.input)
    res = concentration_tail(F, xmax=args.xmax, xsteps=args.xsteps, ssteps=args.ssteps)
    rep = res.to_report()
    rep.inputs = {"grid": _grid_header(F.grid), "input": args.input, **rep.inputs}
    return rep


def _logsobolev(args) -> Report:
    from .applications import log_sobolev_check
    from .applications.functional import unit_grid

    rep = log_sobolev_check(args.phi1, args.phim1, args.slots).to_report()
    rep.inputs = {"grid": _grid_header(unit_grid(args.slots)), **rep.inputs}
    return rep


def _clark_ocone(args) -> Report:
    from .ito import check_adapted, clark_ocone, reconstruct

    F = load_element(args.input)
    mean, u = clark_ocone(F)
    err = (F - reconstruct(mean, u)).norm()
    rep = Report(inputs={"grid": _grid_header(F.grid), "input": args.input})
    rep.quantities.update(mean=mean, integrand=process_to_dict(u), reconstruction_error=err)
    rep.check_le("||F - m(F) - int dPsi u||", err, args.tol)
    rep.check_true("integrand adapted", check_adapted(u))
    return rep


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "verify":
            rep = _verify(args, args.suite)
        elif args.command == "oracle-check":
            rep = _verify(args, ("oracle",))
        elif args.command == "fourth-moment":
            rep = _fourth_moment(args)
        elif args.command == "claim2":
            rep = _claim2(args)
        elif args.command == "concentrate":
            rep = _concentrate(args)
        elif args.command == "logsobolev":
            rep = _logsobolev(args)
        else:
            rep = _clark_ocone(args)
    except (UsageError, DimensionCapError, OSError, KeyError, ValueError) as exc:
        # malformed input files and invalid parameters are usage errors
        parser.exit(2, f"{parser.prog} {args.command}: error: {exc}\n")
    data = emit_report(rep, args.format)
    if args.out:
        with open(args.out, "wb") as fh:
            fh.write(data)
    else:
        sys.stdout.buffer.write(data)
        sys.stdout.flush()
    return 0 if rep.passed else 1


if __name__ == "__main__":
    sys.exit(main())
