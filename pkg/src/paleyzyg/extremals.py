"""Extremal constructions: Fejer and de la Vallee Poussin kernels, the
log^{1/2} sharpness sweep, and the Ingham-series example.

The Fejer kernel of order n carries coefficients 1 - |j|/(n+1) for |j| <= n,
so its L1 norm is exactly 1 (positivity) and its value at 0 is n+1.  The de
la Vallee Poussin kernel combines two of them, 2 K_{2^{N+1}-1} - K_{2^N-1},
and is flat (coefficient 1) on |n| <= 2^N; the first coefficient past the
flat part is 1 - 2^-N.
"""

import csv
import io
import json
import math
from dataclasses import dataclass

import numpy as np

from .multipliers import MultiplierSeq
from .torus import (TrigPoly, lp_norm, next_pow2, orlicz_functional, synthesize,
                    weighted_l2)


def fejer(n: int) -> TrigPoly:
    """Fejer kernel of order n: coefficients 1 - |j|/(n+1), |j| <= n."""
    n = int(n)
    if n < 1:
        raise ValueError("order must be >= 1")
    j = np.arange(-n, n + 1)
    c = 1.0 - np.abs(j) / (n + 1.0)
    return TrigPoly(1, {int(jj): complex(cc) for jj, cc in zip(j, c)})


def vallee_poussin(N: int) -> TrigPoly:
    """V_{2^N} = 2 K_{2^{N+1}-1} - K_{2^N-1}; flat coefficient 1 on |n| <= 2^N."""
    N = int(N)
    if N < 1:
        raise ValueError("N must be >= 1")
    big = fejer(2 ** (N + 1) - 1).scaled(2.0)
    small = fejer(2 ** N - 1).scaled(-1.0)
    return big.plus(small)


def _ols_slope(xs, ys):
    x = np.log(np.asarray(xs, dtype=float))
    y = np.log(np.asarray(ys, dtype=float))
    A = np.vstack([x, np.ones_like(x)]).T
    sol, *_ = np.linalg.lstsq(A, y, rcond=None)
    return float(sol[0]), float(sol[1])


@dataclass(frozen=True)
class SharpnessTable:
    """Rows per N of the weighted l2 size of V_{2^N} against its Orlicz
    functionals, with fitted log-log slopes."""

    n_values: tuple
    r_values: tuple
    lhs: tuple                  # weighted_l2(V_{2^N}, inverse-sqrt)
    phi: dict                   # r -> tuple of functionals per N
    ratios: dict                # r -> tuple lhs/(1+phi) per N
    lhs_slope: float
    phi_slopes: dict
    grids: tuple

    def to_csv(self):
        buf = io.StringIO()
        w = csv.writer(buf)
        header = ["N", "L_N"]
        for r in self.r_values:
            header += [f"phi_{r}", f"ratio_{r}"]
        header.append("grid")
        w.writerow(header)
        for i, n in enumerate(self.n_values):
            row = [n, repr(self.lhs[i])]
            for r in self.r_values:
                row += [repr(self.phi[r][i]), repr(self.ratios[r][i])]
            row.append(self.grids[i])
            w.writerow(row)
        return buf.getvalue()

    def to_json(self):
        return json.dumps({
            "N": list(self.n_values),
            "r": list(self.r_values),
            "L": list(self.lhs),
            "phi": {str(r): list(v) for r, v in self.phi.items()},
            "ratio": {str(r): list(v) for r, v in self.ratios.items()},
            "lhs_slope": self.lhs_slope,
            "phi_slopes": {str(r): v for r, v in self.phi_slopes.items()},
            "grids": list(self.grids),
        })


def sharpness_experiment(n_range, r_list=(0.25, 0.5), oversample=8) -> SharpnessTable:
    """Sweep N over n_range: exact weighted l2 of V_{2^N} under the
    inverse-sqrt weight versus the Orlicz functionals Phi_r on grids of at
    least oversample * 2^{N+1} points."""
    n_values = tuple(int(N) for N in n_range)
    if any(N < 1 for N in n_values):
        raise ValueError("N values must be >= 1")
    if oversample < 8:
        raise ValueError("oversample must be >= 8 so sup and L1 readings are trustworthy")
    r_values = tuple(float(r) for r in r_list)
    lhs, grids = [], []
    phi = {r: [] for r in r_values}
    for N in n_values:
        vp = vallee_poussin(N)
        m = MultiplierSeq.inverse_sqrt(2 ** (N + 1))
        lhs.append(weighted_l2(vp, m))
        M = next_pow2(oversample * 2 ** (N + 1))
        grids.append(M)
        vals = synthesize(vp, M)
        for r in r_values:
            phi[r].append(orlicz_functional(vals, r))
    ratios = {r: tuple(lhs[i] / (1.0 + phi[r][i]) for i in range(len(n_values)))
              for r in r_values}
    lhs_slope, _ = _ols_slope(n_values, lhs)
    phi_slopes = {r: _ols_slope(n_values, phi[r])[0] for r in r_values}
    return SharpnessTable(
        n_values=n_values, r_values=r_values, lhs=tuple(lhs),
        phi={r: tuple(v) for r, v in phi.items()}, ratios=ratios,
        lhs_slope=lhs_slope, phi_slopes=phi_slopes, grids=tuple(grids))


def ingham_coefficient_magnitudes(c, n_lo, n_hi):
    n = np.arange(n_lo, n_hi + 1, dtype=float)
    return 1.0 / (np.sqrt(n) * np.log(n) ** c)


def ingham_partial_sum(gamma, c, M) -> TrigPoly:
    """Partial sum of the modulated series sum_{n >= 2} a_n e^{2 pi i n x}
    with a_n = e^{2 pi i n (ln n)^gamma} / (n^{1/2} (ln n)^c).

    Parameters must satisfy 0 < gamma < 1 and (gamma+1)/2 < c <= 1, the
    window in which the full series converges uniformly.
    """
    gamma = float(gamma)
    c = float(c)
    M = int(M)
    if not (0.0 < gamma < 1.0):
        raise ValueError("gamma must lie in (0, 1)")
    if not ((gamma + 1.0) / 2.0 < c <= 1.0):
        raise ValueError("c must lie in ((gamma+1)/2, 1]")
    if M < 3:
        raise ValueError("M must be >= 3")
    n = np.arange(2, M + 1, dtype=float)
    ln = np.log(n)
    a = np.exp(2j * np.pi * n * ln ** gamma) / (np.sqrt(n) * ln ** c)
    return TrigPoly(1, {int(nn): complex(aa) for nn, aa in zip(n, a)})


def ingham_tail_sup(gamma, c, M, oversample=8) -> float:
    """Grid sup-norm of S_{2M} - S_M (frequencies M+1 .. 2M), a probe of the
    cited uniform convergence."""
    gamma = float(gamma)
    c = float(c)
    M = int(M)
    n = np.arange(M + 1, 2 * M + 1, dtype=float)
    ln = np.log(n)
    a = np.exp(2j * np.pi * n * ln ** gamma) / (np.sqrt(n) * ln ** c)
    G = next_pow2(oversample * (2 * M + 1))
    spec = np.zeros(G, dtype=np.complex128)
    np.add.at(spec, np.arange(M + 1, 2 * M + 1) % G, a)
    vals = np.fft.ifft(spec) * G
    return float(np.abs(vals).max())


@dataclass(frozen=True)
class DivergenceReport:
    partial_sum: float
    integral_estimate: float        # closed form int_2^M dx / (x ln^c x)
    corrected_estimate: float       # integral + f(2)/2 (first Euler-Maclaurin term)
    c: float
    M: int


def sidon_weight_divergence(c, M) -> DivergenceReport:
    """Partial sum of sum_{2 <= n <= M} 1/(n (ln n)^c) with integral cross-checks.

    The closed-form integral ((ln M)^{1-c} - (ln 2)^{1-c}) / (1-c)
    underestimates the sum by about f(2)/2; the corrected estimate adds that
    endpoint term and tracks the sum to well under 5 percent at M = 10^6.
    """
    c = float(c)
    M = int(M)
    if not (0.0 < c <= 1.0):
        raise ValueError("c must lie in (0, 1]")
    n = np.arange(2, M + 1, dtype=float)
    partial = float(np.sum(1.0 / (n * np.log(n) ** c)))
    if c == 1.0:
        integral = math.log(math.log(M)) - math.log(math.log(2.0))
    else:
        integral = (math.log(M) ** (1.0 - c) - math.log(2.0) ** (1.0 - c)) / (1.0 - c)
    f2 = 1.0 / (2.0 * math.log(2.0) ** c)
    return DivergenceReport(partial_sum=partial, integral_estimate=integral,
                            corrected_estimate=integral + 0.5 * f2, c=c, M=M)


def ingham_weight_trend(gamma, c, m_values, oversample=8):
    """Rows (M, weighted coefficient sum, grid sup, ratio) for the partial
    sums S_M under the inverse-sqrt weight.

    The numerator sum_{2<=n<=M} 1/(n (ln n)^c) diverges in M while the sup
    norms stay bounded, so the ratio grows without bound: the weight is not
    sup-norm dominated on this spectrum.  Reported as a trend, not a proof.
    """
    rows = []
    for M in m_values:
        M = int(M)
        p = ingham_partial_sum(gamma, c, M)
        num = sidon_weight_divergence(c, M).partial_sum
        G = next_pow2(oversample * (M + 1))
        sup = lp_norm(synthesize(p, G), math.inf)
        rows.append((M, num, sup, num / sup))
    return rows
