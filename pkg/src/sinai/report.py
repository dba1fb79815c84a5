"""Report generation: delimited tables plus matplotlib figures on disk.

``generate_report`` writes, for each diagnostic, a CSV table and a PNG
rendering side by side under the output directory:

* excursion_probability.{csv,png}: n^(1/2) p_n against its limit;
* meander_probability.{csv,png}:   n^(1/4) meander probability vs its limit;
* local_limit.{csv,png}:           n^2 B_n / 2^(4n) drifting to sqrt(3)/(4 pi);
* levy_scaled.{csv,png}:           n^(3/2) xi_n vs 1/(8 sqrt(2 pi));
* lambda_partial_sums.{csv,png}:   partial sums with the enclosure band.

The CSV files are the authoritative output; figures are renderings of the
same rows.
"""

from __future__ import annotations

import csv
from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt
from mpmath import mp, mpf

from . import asymptotics
from .excursion_counts import (
    excursion_count_table_recurrence,
    nonneg_area_bridge_table,
    zero_area_bridge_table,
)


def _write_csv(path: Path, header: list[str], rows: list[list]) -> None:
    with path.open("w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(header)
        writer.writerows(rows)


def _line_figure(path: Path, xs, ys, hline, title: str, ylabel: str, hlabel: str) -> None:
    fig, ax = plt.subplots(figsize=(6.4, 4.0))
    ax.plot(xs, ys, marker="o", ms=3, lw=1.2, label=ylabel)
    ax.axhline(hline, color="crimson", lw=1.0, ls="--", label=hlabel)
    ax.set_xlabel("n")
    ax.set_ylabel(ylabel)
    ax.set_title(title)
    ax.legend(frameon=False)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def generate_report(out_dir: str | Path, max_n: int = 40, terms: int = 2000,
                    digits: int = 50) -> list[Path]:
    """Write all report tables and figures; returns the created file paths."""
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    created: list[Path] = []

    enc = asymptotics.lambda_enclosure(terms=terms, digits=digits)
    consts = asymptotics.limit_constants(enc, digits=digits)
    phi = excursion_count_table_recurrence(max_n)
    bridges = zero_area_bridge_table(max_n)
    meander_counts = nonneg_area_bridge_table(max_n)

    # excursion probability convergence
    rows = asymptotics.exact_excursion_probability_table(max_n, phi, bridges, consts)
    path = out / "excursion_probability.csv"
    _write_csv(
        path,
        ["n", "p", "p_decimal", "sqrt_n_p", "ratio_to_limit"],
        [[r.n, f"{r.probability.numerator}/{r.probability.denominator}",
          float(r.probability), r.scaled, r.ratio_to_limit] for r in rows],
    )
    created.append(path)
    fig = out / "excursion_probability.png"
    _line_figure(fig, [r.n for r in rows[1:]], [r.scaled for r in rows[1:]],
                 float(consts.c_excursion.midpoint),
                 "Excursion probability of a zero-area bridge",
                 "sqrt(n) * p_n", "limit")
    created.append(fig)

    # meander probability convergence
    rows = asymptotics.exact_meander_probability_table(max_n, meander_counts, consts)
    path = out / "meander_probability.csv"
    _write_csv(
        path,
        ["n", "p", "p_decimal", "n14_p", "ratio_to_limit"],
        [[r.n, f"{r.probability.numerator}/{r.probability.denominator}",
          float(r.probability), r.scaled, r.ratio_to_limit] for r in rows],
    )
    created.append(path)
    fig = out / "meander_probability.png"
    _line_figure(fig, [r.n for r in rows[1:]], [r.scaled for r in rows[1:]],
                 float(consts.c_meander.midpoint),
                 "Nonnegative-area probability of a bridge",
                 "n^(1/4) * probability", "limit")
    created.append(fig)

    # local limit trend
    trend = asymptotics.local_limit_trend(max_n, bridges)
    path = out / "local_limit.csv"
    _write_csv(path, ["n", "n2_bridges_over_16n"], [[n, v] for n, v in trend])
    created.append(path)
    fig = out / "local_limit.png"
    _line_figure(fig, [n for n, _ in trend], [v for _, v in trend],
                 float(consts.c_local.midpoint),
                 "Zero-area bridge local limit", "n^2 B_n / 2^(4n)", "sqrt(3)/(4 pi)")
    created.append(fig)

    # scaled subset counts
    levy = asymptotics.levy_checks(min(max_n * 5, 400), digits=digits)
    path = out / "levy_scaled.csv"
    _write_csv(
        path,
        ["n", "nu", "n32_xi", "nu_ratio", "conv_ratio"],
        [[r.n, f"{r.nu.numerator}/{r.nu.denominator}", r.scaled, r.ratio, r.conv_ratio]
         for r in levy.rows],
    )
    created.append(path)
    fig = out / "levy_scaled.png"
    _line_figure(fig, [r.n for r in levy.rows], [r.scaled for r in levy.rows],
                 levy.target, "Scaled modular subset counts", "n^(3/2) * xi_n", "limit")
    created.append(fig)

    # partial sums of the renewal mass
    mp.dps = digits
    xs = asymptotics.scaled_subset_counts(min(terms, 2000))
    partial = []
    acc = mpf(0)
    for k, x in enumerate(xs, start=1):
        acc += x / k
        partial.append((k, float(acc)))
    path = out / "lambda_partial_sums.csv"
    _write_csv(path, ["terms", "partial_sum"], [[k, v] for k, v in partial])
    created.append(path)
    figp = out / "lambda_partial_sums.png"
    figobj, ax = plt.subplots(figsize=(6.4, 4.0))
    ax.semilogx([k for k, _ in partial], [v for _, v in partial], lw=1.2,
                label="partial sum")
    ax.axhspan(float(enc.lower), float(enc.upper), color="crimson", alpha=0.3,
               label="enclosure (heuristic tail)")
    ax.set_xlabel("terms")
    ax.set_ylabel("total renewal mass")
    ax.set_title("Convergence of the renewal-mass series")
    ax.legend(frameon=False)
    figobj.tight_layout()
    figobj.savefig(figp, dpi=150)
    plt.close(figobj)
    created.append(figp)

    return created
