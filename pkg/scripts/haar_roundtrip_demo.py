"""Wavelet round trip: analyse with the Mexican hat, rebuild, compare.

Runs the inner-product transform of a zero-mean test signal against the
Mexican hat over a log-spaced dilation window, then feeds the surface
back through the Haar-weighted synthesis.  A bounded window can only
reproduce the band of frequencies it covers, so the test signal must
integrate to zero; with that in place the relative L2 residual lands
well under 5 percent on a 40 x 481 grid.
"""
from __future__ import annotations

import argparse
import sys

import numpy as np

from covkit import (AffineRep, Fiducial, admissibility_constant,
                    covariant_transform, inverse_haar, lp_norm, make_grid,
                    signal_from_function, write_signal_csv)


def mexican_hat(dx: float):
    return signal_from_function(
        lambda x: (1.0 - x ** 2) * np.exp(-x ** 2 / 2.0), -12.0, 12.0, dx)


SIGNALS = {
    "mexhat": lambda x: (1.0 - x ** 2) * np.exp(-x ** 2 / 2.0),
    "packet": lambda x: np.exp(-x ** 2 / 2.0) * np.sin(3.0 * x),
    "dog": lambda x: np.exp(-x ** 2 / 2.0) - 0.5 * np.exp(-x ** 2 / 8.0),
}


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--signal", choices=sorted(SIGNALS), default="packet")
    ap.add_argument("--dx", type=float, default=0.02)
    ap.add_argument("--grid", default="affine:a=log:0.12:6:40,b=lin:-12:12:481")
    ap.add_argument("--out", default="haar_roundtrip.csv")
    ns = ap.parse_args()

    v0 = mexican_hat(ns.dx)
    c = admissibility_constant(v0)
    print(f"admissibility constant of the vacuum: {c:.6f} "
          f"(exact pi = {np.pi:.6f})")

    f = signal_from_function(SIGNALS[ns.signal], -12.0, 12.0, ns.dx)
    grid = make_grid(ns.grid)
    w = covariant_transform(AffineRep(2.0), Fiducial("inner", v0=v0), f, grid)
    report = inverse_haar(w, AffineRep(2.0), v0, reference=f)

    print(f"signal {ns.signal!r}, grid {grid.spec}")
    print(f"relative L2 residual: {report.residual:.4f}")
    print(f"reconstruction norm:  {lp_norm(report.result, 2.0):.6f} "
          f"(reference {lp_norm(f, 2.0):.6f})")

    write_signal_csv(report.result, ns.out)
    print(f"wrote {ns.out}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
