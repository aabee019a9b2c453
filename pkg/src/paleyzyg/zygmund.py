"""Greedy dyadic-max selection, the even/odd lacunary split, and ratio harnesses.

The shifted integer blocks I_k = [2^k - 1, 2^{k+1} - 2] partition the
non-negative integers.  Block 0 = {0} cannot contribute to a lacunary
sequence, so selection starts at k = 1 and the mean coefficient is tracked
separately (|f_hat(0)| <= 1 + the log^{1/2} functional, an absolute-constant
change only).
"""

import json
import math
from dataclasses import dataclass

import numpy as np

from .multipliers import MultiplierSeq, paley_block_sums
from .spectra import DyadicBlocks, LacunarySeq, is_lacunary_with_ratio_in
from .torus import TrigPoly, next_pow2, orlicz_functional, synthesize, weighted_l2


@dataclass(frozen=True)
class GreedySelection:
    """Per-block argmax frequencies lambda_k and |f_hat(lambda_k)|, k >= 1."""

    block_indices: tuple
    lambdas: tuple
    maxima: tuple
    skipped_mean: float  # |f_hat(0)|, the block-0 contribution

    def energy(self):
        return sum(m * m for m in self.maxima)


@dataclass(frozen=True)
class ZygmundReport:
    lhs: float
    rhs: float
    ratio: float
    grid: int
    multiplier: str

    def to_json(self):
        return json.dumps({"lhs": self.lhs, "rhs": self.rhs, "ratio": self.ratio,
                           "grid": self.grid, "multiplier": self.multiplier})


def dyadic_max_select(p: TrigPoly) -> GreedySelection:
    """For each shifted block I_k meeting supp(p), k >= 1, pick the frequency
    of largest |f_hat| (ties resolved to the smallest frequency)."""
    if p.dim != 1:
        raise ValueError("selection is 1D")
    if any(n < 0 for n in p.coeffs):
        raise ValueError("support must be non-negative; split +- parts first")
    per_block = {}
    for n, c in p.coeffs.items():
        if n == 0:
            continue
        k = DyadicBlocks.shifted_block_of(n)
        mag = abs(c)
        cur = per_block.get(k)
        if cur is None or mag > cur[1] or (mag == cur[1] and n < cur[0]):
            per_block[k] = (n, mag)
    ks = tuple(sorted(per_block))
    return GreedySelection(
        block_indices=ks,
        lambdas=tuple(per_block[k][0] for k in ks),
        maxima=tuple(per_block[k][1] for k in ks),
        skipped_mean=abs(p.coeffs.get(0, 0j)),
    )


def even_odd_split(sel: GreedySelection):
    """Split the selected frequencies into even- and odd-indexed block
    subsequences and verify both are lacunary.

    Adjacent surviving pairs must have ratio >= 2; pairs from consecutive
    present blocks (index gap exactly 2) must also stay <= 16.  A violation
    raises, since it would falsify the construction.
    """
    even, odd = [], []
    for k, lam in zip(sel.block_indices, sel.lambdas):
        (even if k % 2 == 0 else odd).append((k, lam))
    out = []
    for part in (even, odd):
        terms = [lam for _, lam in part]
        if terms:
            for i in range(len(terms) - 1):
                r = terms[i + 1] / terms[i]
                gap = part[i + 1][0] - part[i][0]
                hi = 16.0 if gap == 2 else math.inf
                if not (2.0 <= r <= hi):
                    raise ValueError(
                        f"split ratio {r} outside [2, {hi}] at pair "
                        f"({terms[i]}, {terms[i + 1]})")
            ok, witness = is_lacunary_with_ratio_in(terms, 2.0, math.inf)
            if not ok:
                raise ValueError(f"split not lacunary, witness {witness}")
            out.append(LacunarySeq(tuple(terms)))
        else:
            out.append(None)
    return out[0], out[1]


def _check_bounded(m: MultiplierSeq):
    K = max(2, m.horizon.bit_length() - 2)
    while 2 ** (K + 1) > m.horizon:
        K -= 1
    if K < 0:
        return
    report = paley_block_sums(m, K)
    if report.verdict != "bounded-up-to-horizon":
        raise ValueError("multiplier fails the dyadic block-sum criterion "
                         f"(verdict {report.verdict})")


def zygmund_ratio(p: TrigPoly, m: MultiplierSeq, grid=None, check_multiplier=True) -> ZygmundReport:
    """weighted_l2(p, m) / (1 + Phi_{1/2}(f)) on the given grid.

    Phi_{1/2} is the mean of |f| log^{1/2}(1 + |f|).  The multiplier must
    pass the block-sum criterion up to its horizon.
    """
    if check_multiplier:
        _check_bounded(m)
    if grid is None:
        # L1-type quadrature: the smallest alias-free grid already carries
        # ~1e-6 relative accuracy, and the report records the size
        grid = next_pow2(max(2 * p.degree + 1, 16))
    if p.coeffs:
        vals = synthesize(p, grid)
        phi = orlicz_functional(vals, 0.5)
    else:
        phi = 0.0
    lhs = weighted_l2(p, m)
    rhs = 1.0 + phi
    return ZygmundReport(lhs=lhs, rhs=rhs, ratio=lhs / rhs, grid=grid, multiplier=m.form)


def inverse_sqrt_ratio_check(p: TrigPoly, grid=None) -> ZygmundReport:
    """Ratio harness specialised to the 1/sqrt|n| weight: the left side is
    (sum_{n != 0} |f_hat(n)|^2 / |n|)^{1/2}."""
    horizon = max(p.degree, 1)
    m = MultiplierSeq.inverse_sqrt(horizon)
    return zygmund_ratio(p, m, grid=grid, check_multiplier=False)


def block_filling_corpus(count, k_lo=1, k_hi=18, seed=20240, max_per_block=3):
    """Seeded random polynomials whose support meets every shifted block
    k in [k_lo, k_hi]; coefficients are complex gaussians."""
    polys = []
    for t in range(count):
        rng = np.random.default_rng([seed, t])
        coeffs = {}
        for k in range(k_lo, k_hi + 1):
            lo, hi = DyadicBlocks.shifted_block_range(k)
            width = hi - lo + 1
            picks = rng.integers(lo, hi + 1, size=min(max_per_block, width))
            for n in set(int(v) for v in picks):
                re, im = rng.standard_normal(2)
                coeffs[n] = complex(re, im)
        polys.append(TrigPoly(1, coeffs))
    return polys
