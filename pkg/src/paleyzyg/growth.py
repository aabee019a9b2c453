"""Moment-growth probes, ensemble maximisation, and the 2D Gram-matrix algebra.

Suprema over all polynomials on a spectrum are approximated from below by
ensemble maxima, so every reported constant or exponent is a lower-bound
probe with one-sided semantics.  L^p means use even p only, with grids sized
past p * degree so the rectangle rule is exact.

Structured spectra keep their generators: a k-fold signed sumset draws
coefficients as products of per-term signs or phases (the order-k chaos
supported on the sumset), and a tensor product draws rank-one coefficient
tables, whose p-th power means factor exactly across axes.  The fitted
growth exponent is the least-squares slope of the squared best ratios
(energy ratios) against p.
"""

import json
import math
from dataclasses import dataclass
from itertools import combinations, product

import numpy as np

from . import _kernels
from .spectra import FrequencySet, LacunarySeq, sumset_bonami
from .torus import TrigPoly, next_pow2

_MAX_GRID_POINTS = 1 << 24


@dataclass(frozen=True)
class Ensemble:
    """A reproducible family of coefficient draws on a spectrum.

    kinds: 'random-signs' (+-1 coefficients), 'steinhaus' (unimodular random
    phases), 'flat' (all ones, one deterministic member), 'phase-ascent'
    (flat start, cyclic coordinate phase maximisation of the probe target,
    deterministic).
    """

    kind: str
    seed: int = 0
    trials: int = 16

    KINDS = ("random-signs", "steinhaus", "flat", "phase-ascent")

    def __post_init__(self):
        if self.kind not in self.KINDS:
            raise ValueError(f"unknown ensemble kind {self.kind!r}")
        if self.trials < 1:
            raise ValueError("trials must be >= 1")

    def member_count(self):
        return 1 if self.kind in ("flat", "phase-ascent") else self.trials


def _draw_factors(rng, size, kind):
    if kind == "random-signs":
        return rng.choice(np.array([-1.0 + 0j, 1.0 + 0j]), size=size)
    if kind == "steinhaus":
        return np.exp(2j * np.pi * rng.random(size))
    if kind == "flat":
        return np.ones(size, dtype=np.complex128)
    raise ValueError(f"no direct draw for kind {kind!r}")


class PlainSpectrum:
    """A bare frequency set; draws are independent per frequency."""

    def __init__(self, freqs: FrequencySet):
        self.freqs = freqs

    @property
    def dim(self):
        return self.freqs.dim

    def frequency_set(self):
        return self.freqs

    def draw(self, ensemble: Ensemble, trial: int):
        elems = self.freqs.sorted_elements()
        if ensemble.kind == "flat":
            return {n: 1.0 + 0j for n in elems}
        rng = np.random.default_rng([ensemble.seed, trial])
        vals = _draw_factors(rng, len(elems), ensemble.kind)
        return dict(zip(elems, vals))

    def describe(self):
        return f"set({len(self.freqs)} freqs, dim {self.dim})"


class SumsetSpectrum:
    """The k-fold signed sumset of a lacunary base, carrying its generators.

    Draws assign each strictly decreasing index tuple the product of its
    per-term factors (signs or phases); the 2**k sign patterns of a tuple
    share that amplitude, and colliding sums accumulate.
    """

    def __init__(self, base: LacunarySeq, k: int, cap: int = 4096):
        self.base = base
        self.k = int(k)
        fset, used = sumset_bonami(base, self.k, cap)
        self.used_terms = used
        self._fset = fset

    @property
    def dim(self):
        return 1

    def frequency_set(self):
        return self._fset

    def draw(self, ensemble: Ensemble, trial: int):
        terms = self.base.terms[:self.used_terms]
        if ensemble.kind == "flat":
            eps = np.ones(len(terms), dtype=np.complex128)
        else:
            rng = np.random.default_rng([ensemble.seed, trial])
            eps = _draw_factors(rng, len(terms), ensemble.kind)
        coeffs = {}
        for tup in combinations(range(len(terms)), self.k):
            amp = complex(np.prod(eps[list(tup)]))
            vals = [terms[i] for i in tup]
            for signs in product((1, -1), repeat=self.k):
                freq = sum(s * v for s, v in zip(signs, vals))
                coeffs[freq] = coeffs.get(freq, 0j) + amp
        return {n: c for n, c in coeffs.items() if c != 0}

    def describe(self):
        return f"sumset(k={self.k}, base {self.used_terms} terms, {len(self._fset)} freqs)"


class TensorSpectrum:
    """Cartesian product of 1D spectra; draws are rank-one coefficient tables."""

    def __init__(self, factors):
        for f in factors:
            if f.dim != 1:
                raise ValueError("tensor factors must be 1D")
        self.factors = list(factors)

    @property
    def dim(self):
        return len(self.factors)

    def frequency_set(self):
        elems = set(product(*(f.frequency_set().sorted_elements() for f in self.factors)))
        return FrequencySet(self.dim, frozenset(elems))

    def draw_factors(self, ensemble: Ensemble, trial: int):
        sub = []
        for a, f in enumerate(self.factors):
            e = Ensemble(ensemble.kind, seed=ensemble.seed + 7919 * (a + 1),
                         trials=ensemble.trials) if ensemble.kind != "flat" else ensemble
            sub.append(f.draw(e, trial))
        return sub

    def draw(self, ensemble: Ensemble, trial: int):
        parts = self.draw_factors(ensemble, trial)
        coeffs = {}
        for combo in product(*(p.items() for p in parts)):
            freq = tuple(n for n, _ in combo)
            amp = 1.0 + 0j
            for _, c in combo:
                amp *= c
            coeffs[freq] = amp
        return coeffs

    def describe(self):
        return "tensor(" + " x ".join(f.describe() for f in self.factors) + ")"


def as_spectrum(obj):
    if isinstance(obj, (PlainSpectrum, SumsetSpectrum, TensorSpectrum)):
        return obj
    if isinstance(obj, FrequencySet):
        return PlainSpectrum(obj)
    if isinstance(obj, LacunarySeq):
        return PlainSpectrum(FrequencySet(1, frozenset(obj.terms)))
    raise TypeError(f"cannot interpret {obj!r} as a spectrum")


def _check_even_p(p):
    if int(p) != p or p < 2 or p % 2 != 0:
        raise ValueError("p must be an even integer >= 2 (exact quadrature regime)")
    return int(p)


def even_p_ratio(coeffs, p) -> float:
    """||f||_p / ||f||_2 for a 1D coefficient table, exact rectangle rule."""
    p = _check_even_p(p)
    if not coeffs:
        raise ValueError("empty coefficient table")
    d = max(abs(n) for n in coeffs)
    M = next_pow2(p * d + 1)
    if M > _MAX_GRID_POINTS:
        raise ValueError(f"exact grid {M} exceeds the memory cap")
    spec = np.zeros(M, dtype=np.complex128)
    for n, c in coeffs.items():
        spec[n % M] += c
    vals = np.fft.ifft(spec) * M
    m2 = np.abs(vals) ** 2
    l2 = math.sqrt(float(np.mean(m2)))
    lp = float(np.mean(m2 ** (p // 2))) ** (1.0 / p)
    return lp / l2


def even_p_ratio_nd(coeffs, p) -> float:
    """nD analogue of even_p_ratio via the nD transform."""
    p = _check_even_p(p)
    if not coeffs:
        raise ValueError("empty coefficient table")
    dim = len(next(iter(coeffs)))
    degs = [max(abs(n[a]) for n in coeffs) for a in range(dim)]
    sizes = tuple(next_pow2(p * d + 1) for d in degs)
    if math.prod(sizes) > _MAX_GRID_POINTS:
        raise ValueError(f"exact grid {sizes} exceeds the memory cap")
    spec = np.zeros(sizes, dtype=np.complex128)
    for n, c in coeffs.items():
        spec[tuple(n[a] % sizes[a] for a in range(dim))] += c
    vals = np.fft.ifftn(spec) * math.prod(sizes)
    m2 = np.abs(vals) ** 2
    l2 = math.sqrt(float(np.mean(m2)))
    lp = float(np.mean(m2 ** (p // 2))) ** (1.0 / p)
    return lp / l2


def phase_ascent_ratio(freqs, p, n_phases=16, sweeps=3) -> float:
    """Deterministic coordinate maximisation of ||f||_p/||f||_2 over unit
    coefficient phases, starting flat."""
    p = _check_even_p(p)
    freqs = sorted(freqs)
    K = len(freqs)
    d = max(abs(n) for n in freqs)
    M = next_pow2(p * d + 1)
    if M * max(K, 1) > (_MAX_GRID_POINTS << 3):
        raise ValueError("ascent character table exceeds the memory cap")
    j = np.arange(M)
    chars = np.exp(2j * np.pi * np.multiply.outer(np.asarray(freqs) % M, j) / M)
    coeffs = np.ones(K, dtype=np.complex128)
    f = chars.sum(axis=0)
    phases = np.exp(2j * np.pi * np.arange(n_phases) / n_phases)
    best = float(np.mean(np.abs(f) ** p))
    for _ in range(sweeps):
        for i in range(K):
            base = f - coeffs[i] * chars[i]
            b, obj = _kernels.best_phase_pow(base, chars[i], phases, p)
            if obj > best:
                best = obj
                coeffs[i] = phases[b]
                f = base + phases[b] * chars[i]
    l2 = math.sqrt(K)
    return best ** (1.0 / p) / l2


@dataclass(frozen=True)
class GrowthReport:
    descriptor: str
    p_grid: tuple
    ratios: tuple               # best ||f||_p / ||f||_2 per p
    alpha: float                # slope of log(ratio**2) against log(p)
    intercept: float
    degenerate: bool
    ensembles: tuple
    seed_info: str

    def to_json(self):
        return json.dumps({
            "descriptor": self.descriptor, "p_grid": list(self.p_grid),
            "ratios": list(self.ratios), "alpha": self.alpha,
            "intercept": self.intercept, "degenerate": self.degenerate,
            "ensembles": [list(e) for e in self.ensembles], "seeds": self.seed_info,
        })


def _fit_energy_exponent(p_grid, ratios):
    x = np.log(np.asarray(p_grid, dtype=float))
    y = 2.0 * np.log(np.asarray(ratios, dtype=float))
    A = np.vstack([x, np.ones_like(x)]).T
    sol, *_ = np.linalg.lstsq(A, y, rcond=None)
    return float(sol[0]), float(sol[1])


def lambda_p_ratio(freqs, p, ensemble: Ensemble, n_phases=16, sweeps=3) -> float:
    """Best ||f||_p / ||f||_2 over the ensemble on a 1D spectrum."""
    p = _check_even_p(p)
    spectrum = as_spectrum(freqs)
    if spectrum.dim != 1:
        raise ValueError("lambda_p_ratio is 1D; use tensor_growth for products")
    if ensemble.kind == "phase-ascent":
        return phase_ascent_ratio(spectrum.frequency_set().sorted_elements(), p,
                                  n_phases=n_phases, sweeps=sweeps)
    best = 0.0
    for t in range(ensemble.member_count()):
        best = max(best, even_p_ratio(spectrum.draw(ensemble, t), p))
    return best


def growth_exponent(spectrum, p_grid, ensembles, n_phases=16, sweeps=3) -> GrowthReport:
    """Fit the growth exponent of the best ratios over a p grid.

    ``ensembles`` is one Ensemble or a sequence; the best ratio per p is the
    max over every member of every ensemble.
    """
    spectrum = as_spectrum(spectrum)
    if isinstance(ensembles, Ensemble):
        ensembles = (ensembles,)
    p_grid = tuple(_check_even_p(p) for p in p_grid)
    if len(p_grid) < 3:
        raise ValueError("need at least 3 p values for a slope fit")
    best = {p: 0.0 for p in p_grid}
    for ens in ensembles:
        for p in p_grid:
            if ens.kind == "phase-ascent":
                r = phase_ascent_ratio(spectrum.frequency_set().sorted_elements(), p,
                                       n_phases=n_phases, sweeps=sweeps)
                best[p] = max(best[p], r)
            else:
                for t in range(ens.member_count()):
                    best[p] = max(best[p], even_p_ratio(spectrum.draw(ens, t), p))
    ratios = tuple(best[p] for p in p_grid)
    degenerate = all(abs(r - 1.0) < 1e-9 for r in ratios)
    if degenerate:
        alpha, intercept = 0.0, 0.0
    else:
        alpha, intercept = _fit_energy_exponent(p_grid, ratios)
    return GrowthReport(
        descriptor=spectrum.describe(), p_grid=p_grid, ratios=ratios,
        alpha=alpha, intercept=intercept, degenerate=degenerate,
        ensembles=tuple((e.kind, e.seed, e.trials) for e in ensembles),
        seed_info=";".join(f"{e.kind}:{e.seed}" for e in ensembles))


def tensor_growth(factors, p_grid, ensembles, n_phases=16, sweeps=3) -> GrowthReport:
    """Growth exponent for a tensor-product spectrum (dims <= 3).

    Rank-one draws factor exactly: the nD rectangle-rule ratio of a product
    table equals the product of the per-axis 1D ratios, so the probe runs
    per axis (the identity is pinned against the full nD transform in the
    test suite).
    """
    spectrum = TensorSpectrum([as_spectrum(f) for f in factors])
    if spectrum.dim > 3:
        raise ValueError("tensor probes support dims <= 3")
    if isinstance(ensembles, Ensemble):
        ensembles = (ensembles,)
    p_grid = tuple(_check_even_p(p) for p in p_grid)
    if len(p_grid) < 3:
        raise ValueError("need at least 3 p values for a slope fit")
    best = {p: 0.0 for p in p_grid}
    for ens in ensembles:
        for p in p_grid:
            if ens.kind == "phase-ascent":
                r = 1.0
                for f in spectrum.factors:
                    r *= phase_ascent_ratio(f.frequency_set().sorted_elements(), p,
                                            n_phases=n_phases, sweeps=sweeps)
                best[p] = max(best[p], r)
            else:
                for t in range(ens.member_count()):
                    parts = spectrum.draw_factors(ens, t)
                    r = 1.0
                    for part in parts:
                        r *= even_p_ratio(part, p)
                    best[p] = max(best[p], r)
    ratios = tuple(best[p] for p in p_grid)
    degenerate = all(abs(r - 1.0) < 1e-9 for r in ratios)
    if degenerate:
        alpha, intercept = 0.0, 0.0
    else:
        alpha, intercept = _fit_energy_exponent(p_grid, ratios)
    return GrowthReport(
        descriptor=spectrum.describe(), p_grid=p_grid, ratios=ratios,
        alpha=alpha, intercept=intercept, degenerate=degenerate,
        ensembles=tuple((e.kind, e.seed, e.trials) for e in ensembles),
        seed_info=";".join(f"{e.kind}:{e.seed}" for e in ensembles))


@dataclass(frozen=True)
class EMatrix:
    """Gram matrix E[n, n'] = sum_m f_hat(m, n) conj(f_hat(m, n')) over the
    summed axis, indexed by the sorted kept-axis spectrum."""

    freqs: tuple
    matrix: np.ndarray

    @property
    def trace(self):
        return float(np.trace(self.matrix).real)


def e_matrix(f: TrigPoly, axis=1) -> EMatrix:
    """Build the Gram matrix of a 2D polynomial along the kept axis."""
    if f.dim != 2:
        raise ValueError("e_matrix needs a 2D polynomial")
    if axis not in (0, 1):
        raise ValueError("axis must be 0 or 1")
    other = 1 - axis
    kept = sorted({n[axis] for n in f.coeffs})
    summed = sorted({n[other] for n in f.coeffs})
    ki = {n: i for i, n in enumerate(kept)}
    si = {m: i for i, m in enumerate(summed)}
    A = np.zeros((len(summed), len(kept)), dtype=np.complex128)
    for n, c in f.coeffs.items():
        A[si[n[other]], ki[n[axis]]] = c
    E = A.T @ np.conj(A)
    return EMatrix(freqs=tuple(kept), matrix=E)


@dataclass(frozen=True)
class CauchySchwarzReport:
    frobenius_sq: float
    bound_sq: float
    equality_gap: float


def cauchy_schwarz_check(E: EMatrix, f: TrigPoly, rel_tol=1e-10) -> CauchySchwarzReport:
    """sum |E|^2 <= (sum |f_hat|^2)^2; a violation beyond tolerance raises."""
    frob = float(np.sum(np.abs(E.matrix) ** 2))
    total = sum(abs(c) ** 2 for c in f.coeffs.values())
    bound = total * total
    if frob > bound * (1.0 + rel_tol):
        raise AssertionError(
            f"Cauchy-Schwarz violated: {frob} > {bound} (this falsifies the algebra)")
    gap = (bound - frob) / bound if bound > 0 else 0.0
    return CauchySchwarzReport(frobenius_sq=frob, bound_sq=bound, equality_gap=gap)


def offdiagonal_split(E: EMatrix, order=None):
    """Split E into diagonal, upper (n < n'), and lower (n > n') parts with
    respect to an ordering of the kept-axis spectrum; the parts recombine
    entrywise."""
    n = len(E.freqs)
    if order is None:
        perm = np.arange(n)
    else:
        pos = {f: i for i, f in enumerate(E.freqs)}
        perm = np.array([pos[f] for f in order])
        if sorted(perm.tolist()) != list(range(n)):
            raise ValueError("order must be a permutation of the kept-axis spectrum")
    M = E.matrix[np.ix_(perm, perm)]
    diag = np.diag(np.diag(M))
    upper = np.triu(M, 1)
    lower = np.tril(M, -1)
    return diag, upper, lower


def sidon_lower_bound(m, freqs, ensembles, oversample=8, n_phases=16, sweeps=3) -> float:
    """Best sum |m(n) f_hat(n)| / sup|f| over the ensemble (grid sup).

    For unimodular draws the numerator is fixed at sum |m|, so the
    phase-ascent member minimises the grid sup norm instead.  The result is
    a lower bound on the best weighted-coefficient-sum constant, up to the
    grid sup-norm defect.
    """
    spectrum = as_spectrum(freqs)
    if spectrum.dim != 1:
        raise ValueError("sidon_lower_bound is 1D")
    if isinstance(ensembles, Ensemble):
        ensembles = (ensembles,)
    elems = spectrum.frequency_set().sorted_elements()
    if not elems:
        raise ValueError("empty spectrum")
    d = max(max(abs(n) for n in elems), 1)
    M = next_pow2(max(oversample * (d + 1), 16))
    j = np.arange(M)
    chars = np.exp(2j * np.pi * np.multiply.outer(np.asarray(elems) % M, j) / M)
    weights = np.array([abs(m.value_at(n)) for n in elems])
    best = 0.0
    for ens in ensembles:
        if ens.kind == "phase-ascent":
            coeffs = np.ones(len(elems), dtype=np.complex128)
            f = chars.sum(axis=0)
            phases = np.exp(2j * np.pi * np.arange(n_phases) / n_phases)
            sup = float(np.abs(f).max())
            for _ in range(sweeps):
                for i in range(len(elems)):
                    base = f - coeffs[i] * chars[i]
                    b, s = _kernels.min_sup_phase(base, chars[i], phases)
                    if s < sup:
                        sup = s
                        coeffs[i] = phases[b]
                        f = base + phases[b] * chars[i]
            num = float(weights.sum())
            best = max(best, num / sup)
        else:
            for t in range(ens.member_count()):
                coeffs = spectrum.draw(ens, t)
                cvec = np.array([coeffs.get(n, 0j) for n in elems])
                num = float(np.sum(weights * np.abs(cvec)))
                f = cvec @ chars
                sup = float(np.abs(f).max())
                if sup > 0:
                    best = max(best, num / sup)
    return best
