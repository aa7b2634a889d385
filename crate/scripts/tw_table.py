"""Tabulate Tracy-Widom F1/F2 quantiles and moments.

Fredholm determinants are discretised with Gauss-Legendre Nystrom quadrature
(Bornemann's method). Output is pasted into crates/core/src/specfun/tracy_widom.rs.
"""
import numpy as np
from scipy.special import airy
from scipy.optimize import brentq

M = 80
L = 14.0
gx, gw = np.polynomial.legendre.leggauss(M)


def nodes(s):
    x = s + (gx + 1.0) * L / 2.0
    w = gw * L / 2.0
    return x, w


def f2(s):
    x, w = nodes(s)
    ai, aip, _, _ = airy(x)
    X, Y = np.meshgrid(x, x, indexing="ij")
    with np.errstate(divide="ignore", invalid="ignore"):
        k = (np.outer(ai, aip) - np.outer(aip, ai)) / (X - Y)
    k[np.diag_indices(M)] = aip**2 - x * ai**2
    sw = np.sqrt(w)
    return np.linalg.det(np.eye(M) - sw[:, None] * k * sw[None, :])


def f1(s):
    # kernel decays only once (x+y)/2 + s > 0, so widen the window for negative s
    span = L + 2.0 * max(0.0, -s)
    g, gw1 = np.polynomial.legendre.leggauss(2 * M)
    u = (g + 1.0) * span / 2.0
    w = gw1 * span / 2.0
    U, V = np.meshgrid(u, u, indexing="ij")
    k = 0.5 * airy((U + V) / 2.0 + s)[0]
    sw = np.sqrt(w)
    return np.linalg.det(np.eye(2 * M) - sw[:, None] * k * sw[None, :])


def moments(cdf, lo, hi):
    xs, ws = np.polynomial.legendre.leggauss(400)
    # integrate by parts on [lo, hi]: E[X] = hi - int F
    x = lo + (xs + 1) * (hi - lo) / 2
    w = ws * (hi - lo) / 2
    F = np.array([cdf(v) for v in x])
    m1 = hi - np.sum(w * F)
    # E[X^2] = hi^2 - int 2x F
    m2 = hi**2 - np.sum(w * 2 * x * F)
    return m1, m2 - m1**2


probs = [0.001, 0.0025, 0.005, 0.01, 0.02, 0.03, 0.04] + [round(0.05 * k, 2) for k in range(1, 20)] + [0.96, 0.97, 0.98, 0.99, 0.995, 0.9975, 0.999]
probs = sorted(set(probs))
for name, cdf, lo, hi in (("F2", f2, -9.0, 6.0), ("F1", f1, -11.0, 8.0)):
    mean, var = moments(cdf, lo, hi)
    print(f"{name} mean={mean:.10f} var={var:.10f}")
    for p in probs:
        q = brentq(lambda s: cdf(s) - p, lo, hi, xtol=1e-12)
        print(f"    ({p}, {q:.8f}),")
