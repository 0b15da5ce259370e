"""Monte Carlo study harness: replicate simulate -> fit -> forecast.

Each replication draws its own seed from the master seed (stream
splitting, so replication m never depends on how many replications run),
simulates a path, fits it, and forecasts one-step-ahead VaR/ES.  Risk
truths are replication-specific: the true parameters applied to that
path's realized history, averaged for the table's "true" column.
Non-convergent fits are recorded and excluded from the aggregates, never
re-seeded.
"""

from __future__ import annotations

import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .dist import STUDENT_T, derive_seed
from .estimate import FitOptions, fit, param_names
from .model import RhygarchParams
from .risk import es_forecast, forecast_h, var_forecast
from .sim import simulate

WORKERS_ENV = "RHYGARCH_THREADS"


@dataclass(frozen=True)
class SummaryRow:
    name: str
    true_value: float
    mean: float
    mse: float

    def to_dict(self) -> dict:
        return {"name": self.name, "true_value": self.true_value,
                "mean": self.mean, "mse": self.mse}


@dataclass
class McSummary:
    """Aggregated study output shaped like the published summary tables."""

    model_label: str
    T: int
    M: int
    K: int
    dist: str
    rows: list[SummaryRow]
    risk_rows: list[SummaryRow]
    convergence_rate: float
    master_seed: int
    levels: tuple[float, ...]
    conventions: tuple[str, ...]
    t_quantile: str

    def to_dict(self) -> dict:
        return {
            "model_label": self.model_label,
            "T": self.T,
            "M": self.M,
            "K": self.K,
            "dist": self.dist,
            "rows": [r.to_dict() for r in self.rows],
            "risk_rows": [r.to_dict() for r in self.risk_rows],
            "convergence_rate": self.convergence_rate,
            "master_seed": self.master_seed,
            "levels": list(self.levels),
            "conventions": list(self.conventions),
            "t_quantile": self.t_quantile,
        }


@dataclass
class StudyConfig:
    """Study configuration mirroring the JSON config file schema."""

    params: RhygarchParams
    T: int
    M: int
    K: int = 1000
    burn_in: int = 2000
    levels: tuple[float, ...] = (0.05, 0.01)
    conventions: tuple[str, ...] = ("paper",)
    t_quantile: str = "standardized"
    master_seed: int = 0
    dist: str | None = None          # fitted likelihood; defaults to the model's
    model_label: str = ""
    fit_params: bool = True
    workers: int | None = None
    fit_options: FitOptions = field(default_factory=FitOptions)

    @classmethod
    def from_dict(cls, obj: dict) -> "StudyConfig":
        params = RhygarchParams.from_dict(obj["model"])
        dist = obj.get("dist", params.innovation.kind)
        if dist == STUDENT_T and not params.innovation.is_student_t:
            raise ValueError("student_t fit requested but model has no nu")
        return cls(
            params=params,
            T=int(obj["T"]),
            M=int(obj["M"]),
            K=int(obj.get("K", 1000)),
            burn_in=int(obj.get("burn_in", 2000)),
            levels=tuple(float(a) for a in obj.get("levels", (0.05, 0.01))),
            conventions=tuple(obj.get("conventions", ("paper",))),
            t_quantile=obj.get("t_quantile", "standardized"),
            master_seed=int(obj.get("master_seed", 0)),
            dist=dist,
            model_label=obj.get("label", ""),
            fit_params=bool(obj.get("fit", True)),
            workers=obj.get("workers"),
        )

    def to_dict(self) -> dict:
        return {
            "model": self.params.to_dict(),
            "dist": self.dist or self.params.innovation.kind,
            "T": self.T,
            "M": self.M,
            "K": self.K,
            "burn_in": self.burn_in,
            "levels": list(self.levels),
            "conventions": list(self.conventions),
            "t_quantile": self.t_quantile,
            "master_seed": self.master_seed,
            "label": self.model_label,
            "fit": self.fit_params,
        }


def resolve_workers(requested: int | None) -> int:
    """Explicit argument, then RHYGARCH_THREADS, then the CPU count."""
    if requested is not None:
        return max(1, int(requested))
    env = os.environ.get(WORKERS_ENV)
    if env:
        return max(1, int(env))
    return os.cpu_count() or 1


def _risk_values(params: RhygarchParams, realized, K, levels, conventions,
                 t_quantile) -> dict[str, float]:
    h = forecast_h(params, realized, K)
    out = {}
    for alpha in levels:
        tag = f"{100 * alpha:g}%"
        out[tag + "VaR"] = var_forecast(h, alpha, params.innovation,
                                        conventions[0], t_quantile)
        for j, conv in enumerate(conventions):
            name = tag + "ES" if j == 0 else f"{tag}ES[{conv}]"
            out[name] = es_forecast(h, alpha, params.innovation, conv, t_quantile)
    return out


def _replicate(args) -> dict:
    (true_params, dist_kind, T, burn_in, K, rep_seed, levels, conventions,
     t_quantile, fit_params, options) = args
    try:
        data = simulate(true_params, T, burn_in, K, seed=rep_seed,
                        keep_latents=False)
        truth = _risk_values(true_params, data.realized, K, levels,
                             conventions, t_quantile)
        if fit_params:
            result = fit(data, dist_kind, K, options=options)
            estimates, converged = result.estimates, result.converged
        else:
            estimates, converged = true_params, True
        est_risk = _risk_values(estimates, data.realized, K, levels,
                                conventions, t_quantile)
        values = {name: getattr(estimates, name)
                  for name in param_names(dist_kind) if name != "nu"}
        if dist_kind == STUDENT_T:
            values["nu"] = estimates.innovation.nu
        return {"ok": True, "converged": converged, "estimates": values,
                "risk_true": truth, "risk_est": est_risk}
    except Exception as exc:  # recorded, never aborts the study
        return {"ok": False, "converged": False, "error": repr(exc)}


ROW_ORDER = ("omega", "gamma", "beta", "delta", "d", "nu",
             "xi", "phi", "tau1", "tau2", "sigma_u")


def run_study(true_params: RhygarchParams, T: int, M: int, K: int = 1000,
              levels=(0.05, 0.01), conventions=("paper",),
              master_seed: int = 0, *, dist_kind: str | None = None,
              burn_in: int = 2000, t_quantile: str = "standardized",
              fit_params: bool = True, workers: int | None = None,
              fit_options: FitOptions | None = None,
              model_label: str = "") -> McSummary:
    """Run M replications and aggregate mean/MSE per parameter and risk row."""
    dist_kind = dist_kind or true_params.innovation.kind
    options = fit_options or FitOptions()
    jobs = [
        (true_params, dist_kind, T, burn_in, K, derive_seed(master_seed, m),
         tuple(levels), tuple(conventions), t_quantile, fit_params, options)
        for m in range(M)
    ]
    n_workers = min(resolve_workers(workers), M)
    if n_workers <= 1:
        outcomes = [_replicate(job) for job in jobs]
    else:
        with ProcessPoolExecutor(max_workers=n_workers) as pool:
            outcomes = list(pool.map(_replicate, jobs, chunksize=1))

    kept = [o for o in outcomes if o["ok"] and o["converged"]]
    rate = len(kept) / M if M else 0.0

    true_values = {name: getattr(true_params, name)
                   for name in param_names(dist_kind) if name != "nu"}
    if dist_kind == STUDENT_T:
        true_values["nu"] = true_params.innovation.nu

    rows = []
    for name in ROW_ORDER:
        if name not in true_values:
            continue
        truth = float(true_values[name])
        est = np.array([o["estimates"][name] for o in kept])
        rows.append(SummaryRow(
            name=name,
            true_value=truth,
            mean=float(est.mean()) if est.size else float("nan"),
            mse=float(np.mean((est - truth) ** 2)) if est.size else float("nan"),
        ))

    risk_rows = []
    if kept:
        for name in kept[0]["risk_true"]:
            tr = np.array([o["risk_true"][name] for o in kept])
            es = np.array([o["risk_est"][name] for o in kept])
            risk_rows.append(SummaryRow(
                name=name,
                true_value=float(tr.mean()),
                mean=float(es.mean()),
                mse=float(np.mean((es - tr) ** 2)),
            ))

    return McSummary(
        model_label=model_label,
        T=int(T), M=int(M), K=int(K), dist=dist_kind,
        rows=rows, risk_rows=risk_rows,
        convergence_rate=rate, master_seed=int(master_seed),
        levels=tuple(float(a) for a in levels),
        conventions=tuple(conventions), t_quantile=t_quantile,
    )


def run_study_config(config: StudyConfig) -> McSummary:
    return run_study(
        config.params, config.T, config.M, config.K,
        levels=config.levels, conventions=config.conventions,
        master_seed=config.master_seed, dist_kind=config.dist,
        burn_in=config.burn_in, t_quantile=config.t_quantile,
        fit_params=config.fit_params, workers=config.workers,
        fit_options=config.fit_options, model_label=config.model_label,
    )


def emit_table(summary: McSummary, format: str = "text") -> str:
    """Render the study as text (4-decimal columns), CSV, or JSON."""
    if format == "json":
        import json

        return json.dumps(summary.to_dict(), indent=2)
    all_rows = list(summary.rows) + list(summary.risk_rows)
    if format == "csv":
        lines = ["parameter,true,mse,mean"]
        for r in all_rows:
            lines.append(f"{r.name},{r.true_value:.17g},{r.mse:.17g},{r.mean:.17g}")
        return "\n".join(lines) + "\n"
    if format != "text":
        raise ValueError(f"unknown table format {format!r}")
    head = (f"{summary.model_label or 'RHYGARCH(1,d,1)'}  dist={summary.dist}"
            f"  T={summary.T}  M={summary.M}  K={summary.K}"
            f"  seed={summary.master_seed}"
            f"  converged={summary.convergence_rate:.1%}")
    width = max([len("parameter")] + [len(r.name) for r in all_rows])
    lines = [head, f"{'parameter':<{width}}  {'true':>10}  {'MSE':>10}  {'mean':>10}"]
    for i, r in enumerate(all_rows):
        if summary.risk_rows and i == len(summary.rows):
            lines.append("-" * len(lines[1]))
        lines.append(f"{r.name:<{width}}  {r.true_value:>10.4f}  "
                     f"{r.mse:>10.4f}  {r.mean:>10.4f}")
    return "\n".join(lines) + "\n"
