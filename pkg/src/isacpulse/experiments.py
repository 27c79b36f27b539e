"""Experiment orchestration: design, figure sweeps, validation.

Reproduces the three headline experiments: SACF curves for one roll-off
(theory vs Monte-Carlo, RRC vs optimized), second-sidelobe level versus bit
rate across the roll-off sweep, and ISLR versus bit rate.  Every emitted
file embeds the resolved configuration and seed schedule.
"""

from __future__ import annotations

import hashlib
import json
import logging
import os
from dataclasses import dataclass, field, replace

import numpy as np

from . import serialize
from .acf_stats import AlphaCoefficients, alpha_coefficients, theoretical_islr, theoretical_stats
from .constellation import Constellation, from_name
from .grid import GridSpec
from .isi_check import DEFAULT_TOL, check_acf_zeros, check_folded_spectrum
from .optimizer import DesignResult, build_problem, sidelobe_region, solve
from .simulate import measure, run_monte_carlo
from .spectrum import SpectrumVector, rrc_spectrum, spectrum_to_acf, spectrum_to_pulse

log = logging.getLogger(__name__)

__all__ = [
    "ExperimentConfig",
    "DesignBundle",
    "design_for_beta",
    "cmd_design",
    "cmd_fig1",
    "cmd_fig2",
    "cmd_fig3",
    "cmd_validate",
    "DEFAULT_BETA_SWEEP",
]

DEFAULT_BETA_SWEEP = [round(0.05 * i, 2) for i in range(21)]


@dataclass(frozen=True)
class ExperimentConfig:
    """Resolved experiment parameters; betas may hold one or many points."""

    betas: tuple[float, ...] = (0.3,)
    frame_length: int = 256
    constellation: str = "qam16"
    nt: int = 32
    lg_target: int = 8192
    region_lo: int = 1
    region_hi: int = 8
    n_frames: int = 1000
    base_seed: int = 20240901
    out_dir: str = "."
    bandwidth_hz: float = 20e6

    def __post_init__(self) -> None:
        if not self.betas:
            raise ValueError("at least one roll-off value is required")

    @classmethod
    def from_file(cls, path: str, **overrides) -> "ExperimentConfig":
        raw = serialize.read_json(path)
        raw.update({k: v for k, v in overrides.items() if v is not None})
        return cls.from_dict(raw)

    @classmethod
    def from_dict(cls, raw: dict) -> "ExperimentConfig":
        raw = dict(raw)
        betas = raw.pop("betas", raw.pop("beta", (0.3,)))
        if isinstance(betas, (int, float)):
            betas = (float(betas),)
        else:
            betas = tuple(float(b) for b in betas)
        known = {f.name for f in cls.__dataclass_fields__.values()}  # type: ignore[attr-defined]
        unknown = set(raw) - known
        if unknown:
            raise ValueError(f"unknown config keys: {sorted(unknown)}")
        return cls(betas=betas, **raw)

    def with_overrides(self, **overrides) -> "ExperimentConfig":
        clean = {k: v for k, v in overrides.items() if v is not None}
        if "betas" in clean:
            clean["betas"] = tuple(float(b) for b in clean["betas"])
        return replace(self, **clean)

    def constellation_obj(self) -> Constellation:
        return from_name(self.constellation)

    def grid_for(self, beta: float) -> GridSpec:
        return GridSpec.for_rolloff(beta, nt=self.nt, lg_target=self.lg_target)

    def meta(self, beta: float | None = None) -> dict:
        d = {
            "betas": list(self.betas),
            "frame_length": self.frame_length,
            "constellation": self.constellation,
            "nt": self.nt,
            "lg_target": self.lg_target,
            "region_lo": self.region_lo,
            "region_hi": self.region_hi,
            "n_frames": self.n_frames,
            "base_seed": self.base_seed,
            "seed_schedule": "base_seed + frame_index",
            "bandwidth_hz": self.bandwidth_hz,
        }
        if beta is not None:
            d["beta"] = beta
        return d


@dataclass(frozen=True)
class DesignBundle:
    """Everything produced by one design run at one roll-off."""

    beta: float
    grid: GridSpec
    alpha: AlphaCoefficients
    region: np.ndarray
    rrc: SpectrumVector
    result: DesignResult
    cache_hit: bool = field(default=False, compare=False)


def _mu4_for(cfg: ExperimentConfig) -> float:
    return float(cfg.constellation_obj().mu4)


def _design_cache_key(cfg: ExperimentConfig, beta: float, grid: GridSpec) -> str:
    payload = {
        "beta": beta,
        "grid": grid.to_dict(),
        "L": cfg.frame_length,
        "mu4": _mu4_for(cfg),
        "region": [cfg.region_lo, cfg.region_hi],
    }
    return hashlib.sha256(json.dumps(payload, sort_keys=True).encode()).hexdigest()[:20]


def design_for_beta(cfg: ExperimentConfig, beta: float, use_cache: bool = True) -> DesignBundle:
    """Solve (or load from cache) the design problem at one roll-off."""
    grid = cfg.grid_for(beta)
    alpha = alpha_coefficients(cfg.frame_length, _mu4_for(cfg))
    region = sidelobe_region(grid, cfg.region_lo, cfg.region_hi)
    rrc = rrc_spectrum(grid)

    cache_dir = os.path.join(cfg.out_dir, "cache")
    cache_path = os.path.join(cache_dir, f"design_{_design_cache_key(cfg, beta, grid)}.json")
    if use_cache and os.path.exists(cache_path):
        raw = serialize.read_json(cache_path)
        result = DesignResult(
            omega_opt=serialize.spectrum_from_dict(raw["omega_opt"]),
            objective=raw["objective"],
            kkt_residual=raw["kkt_residual"],
            baseline_objective=raw["baseline_objective"],
            iterations=raw["iterations"],
        )
        return DesignBundle(beta, grid, alpha, region, rrc, result, cache_hit=True)

    result = solve(build_problem(grid, alpha, region))
    os.makedirs(cache_dir, exist_ok=True)
    serialize.write_json(
        cache_path,
        {
            "omega_opt": serialize.spectrum_to_dict(result.omega_opt),
            "objective": result.objective,
            "kkt_residual": result.kkt_residual,
            "baseline_objective": result.baseline_objective,
            "iterations": result.iterations,
        },
    )
    return DesignBundle(beta, grid, alpha, region, rrc, result)


def _beta_tag(beta: float) -> str:
    return f"{beta:.2f}".replace(".", "p")


def cmd_design(cfg: ExperimentConfig) -> list[str]:
    """Design at every configured roll-off; emit spectrum, pulse and result files."""
    os.makedirs(cfg.out_dir, exist_ok=True)
    paths = []
    for beta in cfg.betas:
        bundle = design_for_beta(cfg, beta)
        tag = _beta_tag(beta)
        spectrum_path = os.path.join(cfg.out_dir, f"spectrum_beta{tag}.csv")
        pulse_path = os.path.join(cfg.out_dir, f"pulse_beta{tag}.csv")
        result_path = os.path.join(cfg.out_dir, f"result_beta{tag}.json")

        meta = cfg.meta(beta)
        meta.update(bundle.grid.to_dict())
        serialize.write_csv(
            spectrum_path,
            {"bin": np.arange(bundle.grid.nb + 1), "omega_opt": bundle.result.omega_opt.omega,
             "omega_rrc": bundle.rrc.omega},
            meta,
        )
        pulse = spectrum_to_pulse(bundle.result.omega_opt)
        serialize.write_csv(
            pulse_path, {"sample": np.arange(pulse.size), "pulse": pulse}, meta
        )
        degenerate = bundle.grid.flat_end == bundle.grid.nb
        serialize.write_json(
            result_path,
            {
                "config": meta,
                "objective": bundle.result.objective,
                "baseline_objective": bundle.result.baseline_objective,
                "kkt_residual": bundle.result.kkt_residual,
                "iterations": bundle.result.iterations,
                "degenerate_feasible_set": degenerate,
            },
        )
        paths.extend([spectrum_path, pulse_path, result_path])
    return paths


def _mc_sacf_db(cfg: ExperimentConfig, bundle: DesignBundle, spec: SpectrumVector):
    stats = theoretical_stats(spectrum_to_acf(spec), bundle.alpha)
    pulse = spectrum_to_pulse(spec)
    maxlag = cfg.region_hi * bundle.grid.nt
    rep = measure(
        run_monte_carlo(
            cfg.constellation_obj(), cfg.frame_length, pulse, bundle.grid.nt,
            maxlag, cfg.n_frames, cfg.base_seed,
        ),
        stats,
        bundle.region,
        n_lobes=cfg.region_hi,
    )
    return stats, rep


def cmd_fig1(cfg: ExperimentConfig) -> str:
    """Normalized SACF curves, theory and Monte-Carlo, RRC and optimized."""
    os.makedirs(cfg.out_dir, exist_ok=True)
    beta = cfg.betas[0]
    bundle = design_for_beta(cfg, beta)
    maxlag = cfg.region_hi * bundle.grid.nt
    window = np.arange(0, maxlag + 1)

    stats_rrc, rep_rrc = _mc_sacf_db(cfg, bundle, bundle.rrc)
    stats_opt, rep_opt = _mc_sacf_db(cfg, bundle, bundle.result.omega_opt)

    path = os.path.join(cfg.out_dir, "sacf_curves.csv")
    meta = cfg.meta(beta)
    meta.update(bundle.grid.to_dict())
    serialize.write_csv(
        path,
        {
            "lag": window,
            "theory_rrc_db": stats_rrc.normalized_sacf_db()[window],
            "mc_rrc_db": rep_rrc.avg_sacf_db,
            "theory_opt_db": stats_opt.normalized_sacf_db()[window],
            "mc_opt_db": rep_opt.avg_sacf_db,
        },
        meta,
    )
    return path


def bit_rate(bandwidth_hz: float, beta: float, bits_per_symbol: int = 4) -> float:
    """Throughput bits_per_symbol/T with BT = 1 + beta."""
    return bits_per_symbol * bandwidth_hz / (beta + 1.0)


def _sweep_bundles(cfg: ExperimentConfig) -> list[DesignBundle]:
    bundles = []
    for beta in cfg.betas:
        try:
            bundles.append(design_for_beta(cfg, beta))
        except ValueError as exc:
            hints = GridSpec.valid_nb_hint(beta, cfg.nt, cfg.lg_target)
            log.warning("skipping beta=%s (%s); nearby valid nb values: %s", beta, exc, hints)
    if not bundles:
        raise ValueError("no valid roll-off points in the sweep")
    return bundles


def _second_sidelobe_db(bundle: DesignBundle, spec: SpectrumVector) -> float:
    stats = theoretical_stats(spectrum_to_acf(spec), bundle.alpha)
    db = stats.normalized_sacf_db()
    nt = bundle.grid.nt
    return float(np.max(db[2 * nt + 1 : 3 * nt]))


def cmd_fig2(cfg: ExperimentConfig) -> str:
    """Theoretical second-sidelobe level versus bit rate across the sweep."""
    os.makedirs(cfg.out_dir, exist_ok=True)
    bundles = _sweep_bundles(cfg)
    rows = {
        "beta": [b.beta for b in bundles],
        "bit_rate_bps": [bit_rate(cfg.bandwidth_hz, b.beta) for b in bundles],
        "rrc_second_sidelobe_db": [_second_sidelobe_db(b, b.rrc) for b in bundles],
        "opt_second_sidelobe_db": [_second_sidelobe_db(b, b.result.omega_opt) for b in bundles],
    }
    rows["gap_db"] = [r - o for r, o in zip(rows["rrc_second_sidelobe_db"], rows["opt_second_sidelobe_db"])]
    path = os.path.join(cfg.out_dir, "sidelobe_vs_bitrate.csv")
    serialize.write_csv(path, rows, cfg.meta())
    return path


def cmd_fig3(cfg: ExperimentConfig) -> str:
    """Theoretical expected ISLR versus bit rate across the sweep."""
    os.makedirs(cfg.out_dir, exist_ok=True)
    bundles = _sweep_bundles(cfg)

    def islr_db(bundle: DesignBundle, spec: SpectrumVector) -> float:
        val = theoretical_islr(spectrum_to_acf(spec), bundle.alpha, bundle.region)
        return float(10.0 * np.log10(val))

    rows = {
        "beta": [b.beta for b in bundles],
        "bit_rate_bps": [bit_rate(cfg.bandwidth_hz, b.beta) for b in bundles],
        "rrc_islr_db": [islr_db(b, b.rrc) for b in bundles],
        "opt_islr_db": [islr_db(b, b.result.omega_opt) for b in bundles],
    }
    path = os.path.join(cfg.out_dir, "islr_vs_bitrate.csv")
    serialize.write_csv(path, rows, cfg.meta())
    return path


def cmd_validate(cfg: ExperimentConfig) -> dict:
    """Run the independent feasibility checks on every designed spectrum."""
    report: dict = {"points": [], "ok": True}
    for bundle in _sweep_bundles(cfg):
        opt = bundle.result.omega_opt
        point = {
            "beta": bundle.beta,
            "folded_spectrum_dev_rrc": check_folded_spectrum(bundle.rrc),
            "folded_spectrum_dev_opt": check_folded_spectrum(opt),
            "acf_zero_dev_rrc": check_acf_zeros(spectrum_to_acf(bundle.rrc)),
            "acf_zero_dev_opt": check_acf_zeros(spectrum_to_acf(opt)),
            "kkt_residual": bundle.result.kkt_residual,
            "objective": bundle.result.objective,
            "baseline_objective": bundle.result.baseline_objective,
        }
        point["ok"] = bool(
            point["folded_spectrum_dev_rrc"] <= DEFAULT_TOL
            and point["folded_spectrum_dev_opt"] <= DEFAULT_TOL
            and point["acf_zero_dev_rrc"] <= DEFAULT_TOL
            and point["acf_zero_dev_opt"] <= DEFAULT_TOL
            and point["kkt_residual"] <= 1e-7
            and point["objective"] <= point["baseline_objective"] + 1e-9
        )
        report["ok"] = report["ok"] and point["ok"]
        report["points"].append(point)
    return report
