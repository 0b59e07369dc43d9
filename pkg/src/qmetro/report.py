"""Flat CSV serialization of sweep results.

One row per (alpha, nu, true angle) plus one 'mean' row per (alpha, nu).
Numbers carry 12 significant digits so files round-trip exactly.
"""

from __future__ import annotations

from dataclasses import dataclass

from .ensemble import SweepResult

CSV_HEADER = "alpha,eta,n_steps,nu,phi_true,mu_phi_mp,sigma_phi_mp,mu_l_ci,sigma_l_ci,baseline_ratio"

MEAN_TOKEN = "mean"


def format_number(x: float) -> str:
    return f"{x:.12g}"


@dataclass(frozen=True)
class ResultRow:
    alpha: float
    eta: float
    n_steps: int
    nu: int
    phi_true: float | None  # None marks the per-(alpha, nu) mean row
    mu_phi_mp: float | None
    sigma_phi_mp: float | None
    mu_l_ci: float
    sigma_l_ci: float | None
    baseline_ratio: float | None = None


def rows_from_sweep(result: SweepResult) -> list[ResultRow]:
    rows: list[ResultRow] = []
    for cell in result.rows:
        for phi, m in zip(cell.phis, cell.per_phi):
            rows.append(
                ResultRow(
                    alpha=cell.alpha,
                    eta=cell.eta,
                    n_steps=cell.n_steps,
                    nu=cell.nu,
                    phi_true=phi,
                    mu_phi_mp=m.mu_phi_mp,
                    sigma_phi_mp=m.sigma_phi_mp,
                    mu_l_ci=m.mu_l_ci,
                    sigma_l_ci=m.sigma_l_ci,
                )
            )
        rows.append(
            ResultRow(
                alpha=cell.alpha,
                eta=cell.eta,
                n_steps=cell.n_steps,
                nu=cell.nu,
                phi_true=None,
                mu_phi_mp=None,
                sigma_phi_mp=None,
                mu_l_ci=cell.mean_mu_l_ci,
                sigma_l_ci=None,
                baseline_ratio=cell.baseline_ratio,
            )
        )
    return rows


def _cell_text(value: float | None) -> str:
    return "" if value is None else format_number(value)


def render_csv(rows: list[ResultRow]) -> str:
    lines = [CSV_HEADER]
    for r in rows:
        lines.append(
            ",".join(
                (
                    format_number(r.alpha),
                    format_number(r.eta),
                    str(r.n_steps),
                    str(r.nu),
                    MEAN_TOKEN if r.phi_true is None else format_number(r.phi_true),
                    _cell_text(r.mu_phi_mp),
                    _cell_text(r.sigma_phi_mp),
                    format_number(r.mu_l_ci),
                    _cell_text(r.sigma_l_ci),
                    _cell_text(r.baseline_ratio),
                )
            )
        )
    return "\n".join(lines) + "\n"


def parse_csv(text: str) -> list[ResultRow]:
    lines = text.strip().splitlines()
    if not lines or lines[0] != CSV_HEADER:
        raise ValueError("unrecognized CSV header")
    rows = []
    for line in lines[1:]:
        f = line.split(",")
        if len(f) != 10:
            raise ValueError(f"malformed CSV row: {line!r}")
        rows.append(
            ResultRow(
                alpha=float(f[0]),
                eta=float(f[1]),
                n_steps=int(f[2]),
                nu=int(f[3]),
                phi_true=None if f[4] == MEAN_TOKEN else float(f[4]),
                mu_phi_mp=float(f[5]) if f[5] else None,
                sigma_phi_mp=float(f[6]) if f[6] else None,
                mu_l_ci=float(f[7]),
                sigma_l_ci=float(f[8]) if f[8] else None,
                baseline_ratio=float(f[9]) if f[9] else None,
            )
        )
    return rows
