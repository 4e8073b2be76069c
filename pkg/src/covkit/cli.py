"""Command-line front end.

Subcommands map one-to-one onto the library surface: `transform` runs
the engine over a grid, `reconstruct` inverts a saved transform along
the Haar or Hardy route, `maximal`/`radon`/`numrange`/`mobius` run the
named examples, and `check` executes the seeded property suites.

All outputs are flat files (CSV for tables, JSON for reports) written
deterministically: identical configurations produce identical bytes.
Exit codes: 0 success, 1 domain error (and failing `check` suites),
2 usage error.  Domain diagnostics are one line on stderr naming the
module and operation that rejected the input.
"""
from __future__ import annotations

import argparse
import json
import math
import os
import sys
from dataclasses import dataclass

import numpy as np

from .checks import available_suites, run_suites
from .fiducials import parse_fiducial
from .groups import GridAxis, GridSpecError, Su11Element, make_grid
from .inversion import (InadmissibleVacuumError, Pairing, inverse_haar,
                        inverse_hardy, parse_a_sequence)
from .operators import (mobius_apply, numerical_range_hull, numrange_transform,
                        read_matrix_json, read_vector_json, spectral_radius,
                        UnitaryOrbit, write_matrix_json)
from .representations import AffineRep, EuclideanRep
from .signals import (read_signal_csv, read_signal2_csv, write_signal_csv)
from .transform import (covariant_transform, hardy_maximal, line_motion,
                        radon_transform, radon_values, read_transform_csv,
                        write_transform_csv)

_COMMANDS = ("transform", "reconstruct", "maximal", "radon", "numrange",
             "mobius", "check")


class UsageError(Exception):
    """Bad invocation: malformed spec string or missing input file."""


class DomainError(Exception):
    """Valid invocation rejected by the mathematics; carries module.op."""

    def __init__(self, where: str, message: str):
        super().__init__(f"{where}: {message}")


@dataclass(frozen=True)
class RunConfig:
    """A validated invocation: the command plus its parsed-spec record.

    Construction fails when the command is unknown or a referenced input
    file is absent, so a config that exists is runnable.
    """

    command: str
    specs: tuple = ()
    inputs: tuple = ()
    output: str | None = None
    options: tuple = ()

    def __post_init__(self):
        if self.command not in _COMMANDS:
            raise UsageError(f"unknown command {self.command!r}")
        for path in self.inputs:
            if not os.path.isfile(path):
                raise UsageError(f"input file not found: {path}")


def _fmt(v: float) -> str:
    return format(float(v), ".17g")


def _axis_values(label: str, spec: str) -> np.ndarray:
    parts = spec.split(":")
    if len(parts) != 4:
        raise UsageError(f"{label} must be <kind>:<lo>:<hi>:<n>, got {spec!r}")
    try:
        axis = GridAxis(label, parts[0], float(parts[1]), float(parts[2]),
                        int(parts[3]))
    except (ValueError, GridSpecError) as exc:
        raise UsageError(f"{label}: {exc}") from None
    return axis.values()


def _parse_p(text: str) -> float:
    if text in ("inf", "infinity", "oo"):
        return math.inf
    try:
        p = float(text)
    except ValueError:
        raise UsageError(f"p must be a number >= 1 or 'inf', got {text!r}") \
            from None
    if not p >= 1.0:
        raise UsageError(f"p must be a number >= 1 or 'inf', got {text!r}")
    return p


class _Rebrand:
    """Context manager tagging low-level errors with module.operation."""

    def __init__(self, where: str, as_usage: bool):
        self.where = where
        self.as_usage = as_usage

    def __enter__(self):
        return self

    def __exit__(self, exc_type, exc, tb):
        if exc_type is None:
            return False
        if issubclass(exc_type, (UsageError, DomainError)):
            return False
        if issubclass(exc_type, (ValueError, OSError)):
            if self.as_usage:
                raise UsageError(f"{self.where}: {exc}") from None
            raise DomainError(self.where, str(exc)) from None
        return False


def _domain(where: str) -> _Rebrand:
    return _Rebrand(where, as_usage=False)


def _usage(where: str) -> _Rebrand:
    """For spec-string parsing: malformed specs are invocation mistakes."""
    return _Rebrand(where, as_usage=True)


# ---------------------------------------------------------------------------
# Handlers


def _cmd_transform(ns) -> int:
    RunConfig("transform",
              specs=(("grid", ns.grid), ("fiducial", ns.fiducial)),
              inputs=(ns.signal,), output=ns.out)
    with _usage("groups.make_grid"):
        grid = make_grid(ns.grid)
    if grid.group != ns.group:
        raise UsageError(f"grid is over {grid.group!r} but --group says "
                         f"{ns.group!r}")
    with _usage("fiducials.parse_fiducial"):
        fid = parse_fiducial(ns.fiducial, read_signal=read_signal_csv,
                             tail_policy=ns.tail)
    if ns.group == "affine":
        rep = AffineRep(_parse_p(ns.p))
    else:
        if ns.p != "2":
            raise UsageError("--p applies to the affine group only")
        rep = EuclideanRep()
    reader = read_signal2_csv if fid.signal_ndim == 2 else read_signal_csv
    with _domain("signals.read_signal_csv"):
        v = reader(ns.signal)
    with _domain("transform.covariant_transform"):
        res = covariant_transform(rep, fid, v, grid, workers=ns.workers)
    write_transform_csv(res, ns.out)
    print(f"wrote {ns.out} ({len(grid)} rows, output dim {res.output_dim})")
    return 0


def _cmd_reconstruct(ns) -> int:
    inputs = [ns.transform, ns.vacuum]
    if ns.reference:
        inputs.append(ns.reference)
    specs = (("a-sequence", ns.a_sequence),) if ns.a_sequence else ()
    RunConfig("reconstruct", specs=specs, inputs=tuple(inputs), output=ns.out)
    with _domain("transform.read_transform_csv"):
        w = read_transform_csv(ns.transform)
    with _domain("signals.read_signal_csv"):
        v0 = read_signal_csv(ns.vacuum)
        ref = read_signal_csv(ns.reference) if ns.reference else None
    if ns.route == "haar":
        rep = AffineRep(_parse_p(ns.p) if ns.p else 2.0)
        with _domain("inversion.inverse_haar"):
            report = inverse_haar(w, rep, v0, reference=ref)
    else:
        rep = AffineRep(_parse_p(ns.p) if ns.p else 1.0)
        pairing = None
        if ns.a_sequence:
            with _usage("inversion.parse_a_sequence"):
                pairing = Pairing("hardy", parse_a_sequence(ns.a_sequence))
        with _domain("inversion.inverse_hardy"):
            report = inverse_hardy(w, rep, v0, pairing=pairing, reference=ref)
    if ns.out:
        write_signal_csv(report.result, ns.out)
    text = json.dumps(report.to_json_dict(), sort_keys=True, indent=2) + "\n"
    if ns.report:
        with open(ns.report, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0


def _cmd_maximal(ns) -> int:
    RunConfig("maximal", specs=(("a-grid", ns.a_grid), ("b-grid", ns.b_grid)),
              inputs=(ns.signal,), output=ns.out)
    with _domain("signals.read_signal_csv"):
        f = read_signal_csv(ns.signal)
    with _domain("transform.hardy_maximal"):
        m = hardy_maximal(f, ns.b_grid, ns.a_grid, workers=ns.workers)
    write_signal_csv(m, ns.out)
    print(f"wrote {ns.out} ({m.n} rows)")
    return 0


def _cmd_radon(ns) -> int:
    if bool(ns.grid) == bool(ns.thetas or ns.offsets):
        raise UsageError("give either --grid or both --thetas and --offsets")
    RunConfig("radon", specs=tuple(s for s in (("grid", ns.grid),)
                                   if s[1]),
              inputs=(ns.signal,), output=ns.out)
    with _domain("signals.read_signal2_csv"):
        f = read_signal2_csv(ns.signal)
    if ns.grid:
        with _usage("groups.make_grid"):
            motions = make_grid(ns.grid)
        with _domain("transform.radon_transform"):
            res = radon_transform(f, motions, workers=ns.workers)
        write_transform_csv(res, ns.out)
        print(f"wrote {ns.out} ({len(motions)} rows)")
        return 0
    if not (ns.thetas and ns.offsets):
        raise UsageError("sinogram mode needs both --thetas and --offsets")
    thetas = _axis_values("thetas", ns.thetas)
    offsets = _axis_values("offsets", ns.offsets)
    motions = [line_motion(t, d) for t in thetas for d in offsets]
    with _domain("transform.radon_values"):
        vals = radon_values(f, motions, workers=ns.workers)
    with open(ns.out, "w", newline="", encoding="utf-8") as fh:
        fh.write(f"# covkit-sinogram thetas={ns.thetas} offsets={ns.offsets}\n")
        fh.write("theta,offset,re,im\n")
        k = 0
        for t in thetas:
            for d in offsets:
                fh.write(f"{_fmt(t)},{_fmt(d)},{_fmt(vals[k].real)},"
                         f"{_fmt(vals[k].imag)}\n")
                k += 1
    print(f"wrote {ns.out} ({len(motions)} rows)")
    return 0


def _cmd_numrange(ns) -> int:
    RunConfig("numrange", specs=(("t-grid", ns.t_grid),),
              inputs=(ns.matrix, ns.hermitian, ns.x), output=ns.out)
    with _domain("operators.read_matrix_json"):
        a = read_matrix_json(ns.matrix)
        h = read_matrix_json(ns.hermitian)
    with _domain("operators.read_vector_json"):
        x = read_vector_json(ns.x)
    t_vals = _axis_values("t-grid", ns.t_grid)
    with _domain("operators.numrange_transform"):
        orbit = UnitaryOrbit(h, x, t_vals)
        forms = numrange_transform(a, orbit, n_theta=ns.n_theta)
    with open(ns.out, "w", newline="", encoding="utf-8") as fh:
        fh.write(f"# covkit-numrange t_grid={ns.t_grid}\n")
        fh.write("t,re,im\n")
        for t, z in zip(t_vals, forms):
            fh.write(f"{_fmt(t)},{_fmt(z.real)},{_fmt(z.imag)}\n")
    if ns.hull:
        with _domain("operators.numerical_range_hull"):
            hull = numerical_range_hull(a, n_theta=ns.n_theta)
        with open(ns.hull, "w", newline="", encoding="utf-8") as fh:
            fh.write(f"# covkit-numrange-hull n_theta={ns.n_theta}\n")
            fh.write("re,im\n")
            for z in hull:
                fh.write(f"{_fmt(z.real)},{_fmt(z.imag)}\n")
    print(f"wrote {ns.out} ({len(t_vals)} rows)")
    return 0


def _cmd_mobius(ns) -> int:
    RunConfig("mobius", inputs=(ns.matrix,), output=ns.out)
    try:
        alpha, beta = complex(ns.alpha), complex(ns.beta)
    except ValueError:
        raise UsageError("--alpha/--beta must be complex literals like "
                         "'1.25+0.5j'") from None
    with _domain("groups.Su11Element"):
        g = Su11Element(alpha, beta)
    with _domain("operators.read_matrix_json"):
        a = read_matrix_json(ns.matrix)
    with _domain("operators.mobius_apply"):
        moved = mobius_apply(g, a)
    write_matrix_json(ns.out, moved)
    print(f"wrote {ns.out} (spectral radius {spectral_radius(moved):.12g})")
    return 0


def _cmd_check(ns) -> int:
    suites = tuple(ns.suite) if ns.suite else ("all",)
    RunConfig("check", specs=tuple(("suite", s) for s in suites),
              output=ns.out, options=(("seed", ns.seed),))
    try:
        report = run_suites(suites, seed=ns.seed)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    text = json.dumps(report, sort_keys=True, indent=2) + "\n"
    if ns.out:
        with open(ns.out, "w", encoding="utf-8") as fh:
            fh.write(text)
        print(f"{report['n_checks'] - report['n_failed']}/"
              f"{report['n_checks']} checks passed (seed {report['seed']})")
    else:
        sys.stdout.write(text)
    return 0 if report["passed"] else 1


# ---------------------------------------------------------------------------
# Parser


def _build_parser() -> argparse.ArgumentParser:
    top = argparse.ArgumentParser(
        prog="covkit",
        description="Covariant transforms over concrete groups: run the "
                    "engine, invert transforms, and verify the library's "
                    "property suites.")
    sub = top.add_subparsers(dest="command", required=True)

    t = sub.add_parser("transform", help="run the covariant transform over "
                                         "a group grid")
    t.add_argument("--group", choices=("affine", "e2"), required=True)
    t.add_argument("--p", default="2", help="affine L_p exponent (or 'inf')")
    t.add_argument("--fiducial", required=True,
                   help="cauchy+ | cauchy- | combo:<c+>:<c-> | jump | poisson"
                        " | inner:<v0.csv> | avg | radonline")
    t.add_argument("--signal", required=True, help="input signal CSV")
    t.add_argument("--grid", required=True, help="group grid spec string")
    t.add_argument("--tail", choices=("truncate", "rational-tail"),
                   default="truncate")
    t.add_argument("--workers", type=int, default=None)
    t.add_argument("--out", required=True)
    t.set_defaults(func=_cmd_transform)

    r = sub.add_parser("reconstruct", help="invert a saved transform")
    r.add_argument("--route", choices=("haar", "hardy"), required=True)
    r.add_argument("--transform", required=True, help="transform CSV")
    r.add_argument("--vacuum", required=True, help="vacuum signal CSV")
    r.add_argument("--p", default=None,
                   help="synthesis exponent (default 2 haar / 1 hardy)")
    r.add_argument("--a-sequence", default=None, help="geo:<a0>:<ratio>:<n>")
    r.add_argument("--reference", default=None, help="reference signal CSV")
    r.add_argument("--out", default=None, help="reconstructed signal CSV")
    r.add_argument("--report", default=None, help="report JSON path "
                                                  "(default: stdout)")
    r.set_defaults(func=_cmd_reconstruct)

    m = sub.add_parser("maximal", help="averaged-modulus maximal function")
    m.add_argument("--signal", required=True)
    m.add_argument("--a-grid", required=True, help="e.g. log:0.05:20:200")
    m.add_argument("--b-grid", required=True, help="e.g. lin:-4:4:161")
    m.add_argument("--workers", type=int, default=None)
    m.add_argument("--out", required=True)
    m.set_defaults(func=_cmd_maximal)

    d = sub.add_parser("radon", help="line integrals over Euclidean motions")
    d.add_argument("--signal", required=True, help="2D signal CSV")
    d.add_argument("--grid", default=None, help="e2 grid spec string")
    d.add_argument("--thetas", default=None, help="angle axis kind:lo:hi:n")
    d.add_argument("--offsets", default=None,
                   help="signed line offsets kind:lo:hi:n")
    d.add_argument("--workers", type=int, default=None)
    d.add_argument("--out", required=True)
    d.set_defaults(func=_cmd_radon)

    n = sub.add_parser("numrange", help="numerical-range samples along a "
                                        "unitary orbit")
    n.add_argument("--matrix", required=True, help="operator JSON")
    n.add_argument("--hermitian", required=True, help="orbit generator JSON")
    n.add_argument("--x", required=True, help="unit vector JSON")
    n.add_argument("--t-grid", required=True, help="kind:lo:hi:n")
    n.add_argument("--n-theta", type=int, default=360)
    n.add_argument("--hull", default=None, help="also write hull boundary CSV")
    n.add_argument("--out", required=True)
    n.set_defaults(func=_cmd_numrange)

    b = sub.add_parser("mobius", help="disc automorphism acting on a "
                                      "contraction matrix")
    b.add_argument("--alpha", required=True)
    b.add_argument("--beta", required=True)
    b.add_argument("--matrix", required=True)
    b.add_argument("--out", required=True)
    b.set_defaults(func=_cmd_mobius)

    c = sub.add_parser("check", help="run seeded property suites")
    c.add_argument("--suite", action="append", default=None,
                   help=f"one of {', '.join(available_suites())} "
                        "(repeatable; default all)")
    c.add_argument("--seed", type=int, default=0)
    c.add_argument("--out", default=None, help="report JSON path "
                                               "(default: stdout)")
    c.set_defaults(func=_cmd_check)
    return top


def main(argv=None) -> int:
    parser = _build_parser()
    ns = parser.parse_args(argv)
    try:
        return ns.func(ns)
    except UsageError as exc:
        print(f"covkit: usage error: {exc}", file=sys.stderr)
        return 2
    except DomainError as exc:
        print(f"covkit: {exc}", file=sys.stderr)
        return 1
    except GridSpecError as exc:
        print(f"covkit: groups.make_grid: {exc}", file=sys.stderr)
        return 2
    except InadmissibleVacuumError as exc:
        print(f"covkit: inversion.admissibility_constant: {exc}",
              file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
