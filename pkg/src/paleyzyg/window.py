"""The fixed Littlewood-Paley window and its scaled dyadic family.

``eta`` is even, supported in +-[1, 3], identically 1 on [3/2, 2], and affine
on the ramps [1, 3/2] and [2, 3].  The dyadic family eta(2**-k * xi) then
telescopes: ramp-up at scale k matches ramp-down at scale k+1, so the family
sums to exactly 1 at every xi != 0 (and in particular the partition sum stays
inside [1, 2] on any covered band).
"""

import numpy as np

SUPPORT_LO = 1.0
SUPPORT_HI = 3.0


def eta(xi):
    """Evaluate the window at xi (scalar or array)."""
    t = np.abs(np.asarray(xi, dtype=float))
    out = np.zeros_like(t)
    ramp_up = (t >= 1.0) & (t < 1.5)
    out[ramp_up] = 2.0 * (t[ramp_up] - 1.0)
    flat = (t >= 1.5) & (t <= 2.0)
    out[flat] = 1.0
    ramp_dn = (t > 2.0) & (t <= 3.0)
    out[ramp_dn] = 3.0 - t[ramp_dn]
    return out if out.ndim else float(out)


def eta_scaled(xi, k):
    """eta(2**-k * xi), computed as a division so scales up to |k| ~ 1000
    stay inside the float range."""
    return eta(np.asarray(xi, dtype=float) / 2.0 ** float(k))


def blocks_meeting(lo, hi):
    """Integer scales k whose window eta(2**-k .) is nonzero somewhere on [lo, hi].

    The window at scale k lives on 2**k < |xi| < 3 * 2**k.  lo, hi are
    positive magnitudes with 0 < lo <= hi.
    """
    if hi <= 0:
        return range(0, 0)
    lo = max(lo, np.finfo(float).tiny)
    k_lo = int(np.floor(np.log2(lo / 3.0))) + 1
    k_hi = int(np.ceil(np.log2(hi)))
    ks = [k for k in range(k_lo - 1, k_hi + 1)
          if 2.0 ** k < hi and 3.0 * 2.0 ** k > lo]
    return ks


def partition_sum(xi, k_min=None, k_max=None):
    """sum_k eta(2**-k * xi) over k in [k_min, k_max] (full telescoping sum if None)."""
    xi = np.asarray(xi, dtype=float)
    mags = np.abs(xi[xi != 0]) if xi.ndim else np.array([abs(float(xi))])
    if mags.size == 0:
        return np.zeros_like(xi)
    if k_min is None:
        k_min = int(np.floor(np.log2(mags.min() / 3.0)))
    if k_max is None:
        k_max = int(np.ceil(np.log2(mags.max())))
    total = np.zeros(np.shape(xi))
    for k in range(k_min, k_max + 1):
        total = total + eta_scaled(xi, k)
    return total if total.ndim else float(total)


_GL_CACHE = {}


def _gauss_legendre(n):
    if n not in _GL_CACHE:
        x, w = np.polynomial.legendre.leggauss(n)
        _GL_CACHE[n] = (x, w)
    return _GL_CACHE[n]


def eta_inverse_transform(x, nodes=96):
    """The inverse Fourier transform of eta at points x.

    eta is even and piecewise linear, so the transform is real and even:
    2 * int_1^3 eta(s) cos(2 pi s x) ds, evaluated by Gauss-Legendre
    quadrature on the three linear pieces (exact to machine precision at
    this node count for the x ranges used here).
    """
    x = np.asarray(x, dtype=float)
    gx, gw = _gauss_legendre(nodes)
    total = np.zeros(x.shape)
    for a, b in ((1.0, 1.5), (1.5, 2.0), (2.0, 3.0)):
        s = 0.5 * (b - a) * gx + 0.5 * (a + b)
        w = 0.5 * (b - a) * gw
        total = total + 2.0 * np.cos(2.0 * np.pi * np.outer(x, s)) @ (w * eta(s))
    return total
