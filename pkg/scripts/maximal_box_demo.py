"""Maximal function of a box indicator against its closed form.

For the indicator of [-1, 1] the average over [b - a, b + a] is the
overlap length divided by 2a, so the maximal function over a dilation
window [a_lo, a_hi] can be written down exactly:

    M(b) = max over a of (1/2a) * len([b - a, b + a] & [-1, 1])

with the maximum attained at a = |b| - 1 for |b| > 1 (reaching back to
the near edge) and equal to 1 inside the box.  The script runs the
sampled engine, evaluates the formula on the same a-grid, and reports
the worst pointwise gap.
"""
from __future__ import annotations

import argparse
import sys

import numpy as np

from covkit import (GridAxis, SampledSignal1D, hardy_maximal,
                    signal_from_function, write_signal_csv)


def box_signal(dx: float) -> SampledSignal1D:
    return signal_from_function(
        lambda x: np.where(np.abs(x) <= 1.0, 1.0, 0.0), -4.0, 4.0, dx)


def reference_maximal(bs: np.ndarray, a_vals: np.ndarray) -> np.ndarray:
    """Exact overlap formula maximised over the same sampled dilations."""
    b = bs[:, None]
    a = a_vals[None, :]
    overlap = np.maximum(0.0, np.minimum(1.0, b + a) - np.maximum(-1.0, b - a))
    return (overlap / (2.0 * a)).max(axis=1)


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--dx", type=float, default=0.01)
    ap.add_argument("--a-grid", default="log:0.05:20:200")
    ap.add_argument("--b-grid", default="lin:-4:4:161")
    ap.add_argument("--out", default="maximal_box.csv")
    ns = ap.parse_args()

    f = box_signal(ns.dx)
    m = hardy_maximal(f, ns.b_grid, ns.a_grid)

    kind, lo, hi, n = ns.a_grid.split(":")
    a_vals = GridAxis("a", kind, float(lo), float(hi), int(n)).values()
    ref = reference_maximal(m.xs, a_vals)

    gap = np.abs(m.values.real - ref)
    away = np.abs(np.abs(m.xs) - 1.0) > 2.0 * ns.dx
    at_zero = float(np.interp(0.0, m.xs, m.values.real))
    at_two = float(np.interp(2.0, m.xs, m.values.real))
    print(f"M(0) = {at_zero:.6f}   (exact 1)")
    print(f"M(2) = {at_two:.6f}   (exact 1/3 = {1.0 / 3.0:.6f})")
    print(f"worst |engine - formula| away from the box edges: "
          f"{float(gap[away].max()):.3e}")
    print(f"worst at the edges: {float(gap.max()):.3e} "
          f"(the rasterised jump carries half a pixel of extra mass, "
          f"visible at the smallest dilations)")

    write_signal_csv(m, ns.out)
    print(f"wrote {ns.out}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
