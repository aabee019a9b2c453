"""Command-line driver: every experiment as a reproducible subcommand.

Reports carry a lossless config echo plus provenance (grids, seeds, caps);
re-running an echoed config reproduces the rows bit-identically.  Exit codes:
0 success, 1 usage error, 2 verdict failure.
"""

import argparse
import csv
import json
import os
import sys

from . import extremals, growth, multipliers, realline, spectra, zygmund
from ._kernels import USING_NUMBA


class Report:
    def __init__(self, subcommand, config, columns, rows, provenance, verdict=None):
        self.subcommand = subcommand
        self.config = config
        self.columns = columns
        self.rows = rows
        self.provenance = provenance
        self.verdict = verdict

    def to_json(self):
        return json.dumps({
            "subcommand": self.subcommand,
            "config": self.config,
            "columns": self.columns,
            "rows": self.rows,
            "provenance": self.provenance,
            "verdict": self.verdict,
        }, indent=2)

    def to_csv(self):
        import io
        buf = io.StringIO()
        w = csv.writer(buf)
        w.writerow(self.columns)
        for row in self.rows:
            w.writerow([repr(v) if isinstance(v, float) else v for v in row])
        return buf.getvalue()

    def write(self, path, fmt):
        text = self.to_json() if fmt == "json" else self.to_csv()
        if path in (None, "-"):
            sys.stdout.write(text)
            if not text.endswith("\n"):
                sys.stdout.write("\n")
        else:
            with open(path, "w") as fh:
                fh.write(text)
            print(f"wrote {fmt} report to {path}")


def _out_args(sp):
    sp.add_argument("--output", "-o", default=None,
                    help="output path (default: stdout, or $PALEYZYG_OUT_DIR/<name>)")
    sp.add_argument("--format", choices=("csv", "json"), default="json")


def _resolve_output(args, name):
    if args.output is not None:
        return args.output
    out_dir = os.environ.get("PALEYZYG_OUT_DIR")
    if out_dir:
        return os.path.join(out_dir, f"{name}.{args.format}")
    return None


def _parse_multiplier(args):
    if args.form == "inverse-sqrt":
        return multipliers.MultiplierSeq.inverse_sqrt(args.horizon,
                                                      positive_only=not args.two_sided)
    if args.form == "constant":
        return multipliers.MultiplierSeq.constant(1.0, args.horizon)
    if args.form.startswith("indicator:"):
        vals = [int(v) for v in args.form.split(":", 1)[1].split(",") if v]
        fs = spectra.FrequencySet(1, frozenset(vals))
        return multipliers.MultiplierSeq.indicator(fs, args.horizon)
    raise SystemExit(f"unknown multiplier form {args.form!r}")


def cmd_paley_check(args):
    m = _parse_multiplier(args)
    rep = multipliers.paley_block_sums(m, args.k)
    rows = [[k, 2 ** k, s] for k, s in enumerate(rep.block_sums)]
    config = {"form": args.form, "k": args.k, "horizon": args.horizon,
              "two_sided": args.two_sided}
    prov = {"sup": rep.sup, "verdict": rep.verdict}
    return Report("paley-check", config, ["k", "N", "block_sum"], rows, prov), 0


def cmd_zygmund_ratio(args):
    m = multipliers.MultiplierSeq.inverse_sqrt(args.horizon)
    rows = []
    if args.vp is not None:
        p = extremals.vallee_poussin(args.vp)
        rep = zygmund.zygmund_ratio(p, m, check_multiplier=False)
        rows.append(["vp", args.vp, rep.lhs, rep.rhs, rep.ratio, rep.grid])
    if args.corpus > 0:
        polys = zygmund.block_filling_corpus(args.corpus, k_lo=args.k_lo, k_hi=args.k_hi,
                                             seed=args.seed)
        for i, p in enumerate(polys):
            rep = zygmund.zygmund_ratio(p, m, check_multiplier=False)
            rows.append(["corpus", i, rep.lhs, rep.rhs, rep.ratio, rep.grid])
    config = {"vp": args.vp, "corpus": args.corpus, "k_lo": args.k_lo,
              "k_hi": args.k_hi, "seed": args.seed, "horizon": args.horizon}
    ratios = [r[4] for r in rows]
    prov = {"max_ratio": max(ratios) if ratios else 0.0}
    return Report("zygmund-ratio", config, ["kind", "index", "lhs", "rhs", "ratio", "grid"],
                  rows, prov), 0


def cmd_sharpness(args):
    rs = [float(v) for v in args.r.split(",") if v]
    table = extremals.sharpness_experiment(range(args.n_min, args.n_max + 1), rs)
    rows = []
    for i, N in enumerate(table.n_values):
        row = [N, table.lhs[i]]
        for r in table.r_values:
            row += [table.phi[r][i], table.ratios[r][i]]
        row.append(table.grids[i])
        rows.append(row)
    cols = ["N", "L_N"]
    for r in table.r_values:
        cols += [f"phi_{r}", f"ratio_{r}"]
    cols.append("grid")
    config = {"n_min": args.n_min, "n_max": args.n_max, "r": rs}
    prov = {"lhs_slope": table.lhs_slope,
            "phi_slopes": {str(r): s for r, s in table.phi_slopes.items()}}
    return Report("sharpness", config, cols, rows, prov), 0


def cmd_ingham(args):
    rows = []
    prev = None
    monotone = True
    for k in range(args.m_min, args.m_max + 1):
        t = extremals.ingham_tail_sup(args.gamma, args.c, 2 ** k)
        if prev is not None and t >= prev:
            monotone = False
        rows.append([k, 2 ** k, t])
        prev = t
    div = extremals.sidon_weight_divergence(args.c, args.sum_limit)
    config = {"gamma": args.gamma, "c": args.c, "m_min": args.m_min,
              "m_max": args.m_max, "sum_limit": args.sum_limit}
    prov = {"tails_strictly_decreasing": monotone,
            "weight_partial_sum": div.partial_sum,
            "integral_estimate": div.integral_estimate,
            "corrected_estimate": div.corrected_estimate}
    verdict = monotone
    return Report("ingham", config, ["k", "M", "tail_sup"], rows, prov, verdict), (0 if verdict else 2)


def _base_seq(args):
    return spectra.geometric_lacunary(args.ratio, args.count, args.start)


def cmd_lambda_p(args):
    lam = _base_seq(args)
    fs = spectra.FrequencySet(1, frozenset(lam.terms))
    ens = growth.Ensemble(args.ensemble, seed=args.seed, trials=args.trials)
    rows = []
    for p in (int(v) for v in args.p.split(",")):
        rows.append([p, growth.lambda_p_ratio(fs, p, ens)])
    config = {"ratio": args.ratio, "count": args.count, "start": args.start,
              "p": args.p, "ensemble": args.ensemble, "seed": args.seed,
              "trials": args.trials}
    return Report("lambda-p", config, ["p", "best_ratio"], rows,
                  {"spectrum": f"geometric({args.ratio},{args.count},{args.start})"}), 0


def cmd_bonami(args):
    lam = _base_seq(args)
    spec = growth.SumsetSpectrum(lam, args.k, cap=args.cap)
    enss = [growth.Ensemble(kind, seed=args.seed, trials=args.trials)
            for kind in args.ensemble.split(",")]
    p_grid = [int(v) for v in args.p.split(",")]
    rep = growth.growth_exponent(spec, p_grid, enss)
    rows = [[p, r] for p, r in zip(rep.p_grid, rep.ratios)]
    config = {"ratio": args.ratio, "count": args.count, "start": args.start,
              "k": args.k, "cap": args.cap, "p": args.p,
              "ensemble": args.ensemble, "seed": args.seed, "trials": args.trials}
    prov = {"alpha": rep.alpha, "intercept": rep.intercept,
            "descriptor": rep.descriptor, "used_terms": spec.used_terms}
    return Report("bonami", config, ["p", "best_ratio"], rows, prov), 0


def cmd_sidon_lb(args):
    lam = _base_seq(args)
    fs = spectra.FrequencySet(1, frozenset(lam.terms))
    m = multipliers.MultiplierSeq.constant(1.0, max(lam.terms)) \
        if args.form == "constant" else _parse_multiplier(args)
    enss = [growth.Ensemble(kind, seed=args.seed, trials=args.trials)
            for kind in args.ensemble.split(",")]
    bound = growth.sidon_lower_bound(m, fs, enss)
    config = {"ratio": args.ratio, "count": args.count, "start": args.start,
              "form": args.form, "ensemble": args.ensemble, "seed": args.seed,
              "trials": args.trials}
    return Report("sidon-lb", config, ["lower_bound"], [[bound]],
                  {"spectrum_size": len(fs)}), 0


def _parse_measure(args):
    if args.measure == "inverse-abs":
        return realline.PaleyMeasure.inverse_abs(args.k_min, args.k_max)
    if args.measure.startswith("atoms:"):
        pairs = []
        for part in args.measure.split(":", 1)[1].split(";"):
            xi, w = part.split(",")
            pairs.append((float(xi), float(w)))
        return realline.PaleyMeasure.from_atoms(pairs, gap=args.gap)
    raise SystemExit(f"unknown measure {args.measure!r}")


def cmd_rline_paley(args):
    mu = _parse_measure(args)
    corpus = realline.random_mean_zero_corpus(args.corpus, seed=args.seed)
    rep = realline.paley_inequality_probe(mu, corpus)
    sup_rep = realline.paley_sup(mu, (args.k_min, args.k_max))
    rows = [list(r) for r in rep.rows]
    config = {"measure": args.measure, "k_min": args.k_min, "k_max": args.k_max,
              "corpus": args.corpus, "seed": args.seed, "gap": args.gap}
    prov = {"max_ratio": rep.max_ratio, "paley_sup": sup_rep.sup,
            "sup_verdict": sup_rep.verdict}
    return Report("rline-paley", config, ["index", "mu_l2", "square_fn", "ratio"],
                  rows, prov), 0


def cmd_rline_zygmund(args):
    mu = _parse_measure(args)
    corpus = realline.random_mean_zero_corpus(args.corpus, seed=args.seed)
    rows = []
    for i, s in enumerate(corpus):
        rep = realline.zygmund_realline_probe(mu, s)
        rows.append([i, rep.lhs, rep.rhs, rep.ratio])
    config = {"measure": args.measure, "k_min": args.k_min, "k_max": args.k_max,
              "corpus": args.corpus, "seed": args.seed, "gap": args.gap}
    prov = {"max_ratio": max((r[3] for r in rows), default=0.0)}
    return Report("rline-zygmund", config, ["index", "lhs", "rhs", "ratio"], rows, prov), 0


def cmd_selftest(args):
    import pytest
    target = args.tests_path
    if not os.path.exists(target):
        print(f"tests path {target!r} not found", file=sys.stderr)
        return None, 1
    code = pytest.main([target, "-q"])
    return None, (0 if code == 0 else 2)


def build_parser():
    ap = argparse.ArgumentParser(
        prog="paleyzyg",
        description="Numerical experiments around Paley/Zygmund type inequalities "
                    f"(numba kernels {'on' if USING_NUMBA else 'off'})")
    sub = ap.add_subparsers(dest="cmd", required=True)

    sp = sub.add_parser("paley-check", help="dyadic block sums of a multiplier")
    sp.add_argument("--form", default="inverse-sqrt")
    sp.add_argument("--k", type=int, default=20)
    sp.add_argument("--horizon", type=int, default=2 ** 22)
    sp.add_argument("--two-sided", action="store_true",
                    help="sum both signs for the inverse-sqrt form "
                         "(default: positive frequencies only)")
    _out_args(sp)
    sp.set_defaults(fn=cmd_paley_check)

    sp = sub.add_parser("zygmund-ratio", help="weighted l2 against 1 + Phi_{1/2}")
    sp.add_argument("--vp", type=int, default=None, help="use the flat kernel of order 2^N")
    sp.add_argument("--corpus", type=int, default=0)
    sp.add_argument("--k-lo", type=int, default=1)
    sp.add_argument("--k-hi", type=int, default=12)
    sp.add_argument("--seed", type=int, default=20240)
    sp.add_argument("--horizon", type=int, default=2 ** 21)
    _out_args(sp)
    sp.set_defaults(fn=cmd_zygmund_ratio)

    sp = sub.add_parser("sharpness", help="kernel sweep for the log^r functionals")
    sp.add_argument("--n-min", type=int, default=4)
    sp.add_argument("--n-max", type=int, default=14)
    sp.add_argument("--r", default="0.25,0.5")
    _out_args(sp)
    sp.set_defaults(fn=cmd_sharpness)

    sp = sub.add_parser("ingham", help="tail sup-norms and the divergent weight sum")
    sp.add_argument("--gamma", type=float, default=0.5)
    sp.add_argument("--c", type=float, default=0.8)
    sp.add_argument("--m-min", type=int, default=10)
    sp.add_argument("--m-max", type=int, default=16)
    sp.add_argument("--sum-limit", type=int, default=10 ** 6)
    _out_args(sp)
    sp.set_defaults(fn=cmd_ingham)

    for name, fn, extra in (("lambda-p", cmd_lambda_p, False),
                            ("bonami", cmd_bonami, True),
                            ("sidon-lb", cmd_sidon_lb, False)):
        sp = sub.add_parser(name)
        sp.add_argument("--ratio", type=int, default=2)
        sp.add_argument("--count", type=int, default=8)
        sp.add_argument("--start", type=int, default=1)
        sp.add_argument("--p", default="4,8,16,32,64")
        sp.add_argument("--ensemble", default="random-signs")
        sp.add_argument("--seed", type=int, default=101)
        sp.add_argument("--trials", type=int, default=32)
        if extra:
            sp.add_argument("--k", type=int, default=2)
            sp.add_argument("--cap", type=int, default=4096)
        if name == "sidon-lb":
            sp.add_argument("--form", default="constant")
            sp.add_argument("--horizon", type=int, default=2 ** 20)
            sp.add_argument("--two-sided", action="store_true")
        _out_args(sp)
        sp.set_defaults(fn=fn)

    for name, fn in (("rline-paley", cmd_rline_paley), ("rline-zygmund", cmd_rline_zygmund)):
        sp = sub.add_parser(name)
        sp.add_argument("--measure", default="inverse-abs")
        sp.add_argument("--k-min", type=int, default=-2)
        sp.add_argument("--k-max", type=int, default=4)
        sp.add_argument("--gap", type=float, default=0.0)
        sp.add_argument("--corpus", type=int, default=20)
        sp.add_argument("--seed", type=int, default=513)
        _out_args(sp)
        sp.set_defaults(fn=fn)

    sp = sub.add_parser("selftest", help="run the acceptance suite")
    sp.add_argument("--tests-path", default="tests/test_acceptance.py")
    sp.set_defaults(fn=cmd_selftest)
    return ap


def main(argv=None):
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as e:
        return 1 if e.code not in (0, None) else 0
    try:
        report, code = args.fn(args)
    except SystemExit:
        return 1
    except (ValueError, TypeError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 1
    if report is not None:
        report.write(_resolve_output(args, report.subcommand), args.format)
    return code


if __name__ == "__main__":
    sys.exit(main())
