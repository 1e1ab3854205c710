"""Experiment runners: dispersion, power, throughput, and beam-pattern sweeps.

Every runner is deterministic for a fixed config: Monte Carlo drop i uses seed
base_seed + i, workers only parallelize independent drops, and the final
reduction always walks drops in index order.
"""
from __future__ import annotations

import dataclasses
import math
from concurrent.futures import ThreadPoolExecutor

import numpy as np

from .beamform import (
    ArrayGeometry,
    beam_squint_direction,
    peak_direction,
    phase_only_weights,
    array_factor_pattern,
    ttd_weights,
)
from .config import ExperimentConfig
from .errors import InfeasibleBudgetError, NoRealBeamError, NullSentinelError
from .geometry import Scenario, generate_layout, udn_association
from .optics import Scheme, dispersion_fading_db, fronthaul_snr_db
from .power import crossover_length, system_power, solve_tx_power
from .tables import ResultTable
from .units import SPEED_OF_LIGHT_M_S, db_to_linear
from .wireless import (
    bbof_per_rap_cap_bps,
    cellfree_sinr_components,
    combine_fronthaul_noise,
    draw_channels,
    sum_throughput,
    udn_sinr_components,
)

DISPERSION_COLUMNS = ("scheme", "f_hz", "fiber_km", "fading_db")
POWER_COLUMNS = (
    "scheme", "f_rf_hz", "fiber_km", "p_tx_w", "cu_w", "rap_w", "fiber_comp_w", "total_w"
)
THROUGHPUT_COLUMNS = (
    "arch", "scheme", "M", "J", "drops", "p_tx_w", "mean_sumrate_bps", "ci95_bps"
)
BEAM_COLUMNS = ("mode", "f_hz", "theta_deg", "af_mag", "af_phase_rad")


def _base_metadata(cfg: ExperimentConfig, kind: str) -> dict:
    return {"kind": kind, "config_hash": cfg.config_hash(), "config": cfg.resolved()}


def _json_safe(value: float):
    if isinstance(value, float) and math.isinf(value):
        return "inf" if value > 0 else "-inf"
    return value


def run_dispersion_sweep(cfg: ExperimentConfig, allow_null: bool = False) -> ResultTable:
    """Fading-vs-length curves per scheme; RFoF gets one curve per frequency."""
    table = ResultTable("dispersion_sweep", DISPERSION_COLUMNS,
                        metadata=_base_metadata(cfg, "dispersion_sweep"))

    def fading_at(f_hz: float, length_km: float) -> float:
        fib = dataclasses.replace(cfg.fiber, length_km=length_km)
        fading = dispersion_fading_db(fib, f_hz)
        if math.isinf(fading) and not allow_null:
            raise NullSentinelError(
                f"dispersion null at {length_km} km for {f_hz/1e9:g} GHz; "
                "pass --allow-null to emit the sentinel"
            )
        return fading

    for scheme in cfg.schemes:
        sc = cfg.scheme_config(scheme)
        if scheme is Scheme.BBOF:
            for length in cfg.sweep.fiber_km:
                table.append(scheme.value, 0.0, float(length), 0.0)
        elif scheme is Scheme.IFOF:
            for length in cfg.sweep.fiber_km:
                table.append(
                    scheme.value, sc.if_carrier_hz, float(length),
                    fading_at(sc.if_carrier_hz, float(length)),
                )
        else:
            for f_hz in cfg.sweep.frequencies_hz:
                for length in cfg.sweep.fiber_km:
                    table.append(
                        scheme.value, float(f_hz), float(length),
                        fading_at(float(f_hz), float(length)),
                    )
    return table


def run_power_sweep(cfg: ExperimentConfig, allow_null: bool = False) -> ResultTable:
    """System power vs fiber length per scheme, plus RFoF/BBoF crossovers."""
    table = ResultTable("power_sweep", POWER_COLUMNS,
                        metadata=_base_metadata(cfg, "power_sweep"))
    m = cfg.sweep.power_num_raps
    p_tx = cfg.sweep.power_p_tx_w

    def emit(sc, f_rf_hz: float) -> None:
        for length in cfg.sweep.fiber_km:
            fib = dataclasses.replace(cfg.fiber, length_km=float(length))
            breakdown = system_power(sc, m, p_tx, fib, cfg.power)
            if math.isinf(breakdown.total_watts) and not allow_null:
                raise NullSentinelError(
                    f"dispersion null at {length} km for {sc.scheme.value}; "
                    "pass --allow-null to emit the sentinel"
                )
            table.append(
                sc.scheme.value, f_rf_hz, float(length), p_tx,
                breakdown.cu_watts, breakdown.per_rap_watts,
                breakdown.fiber_comp_watts, breakdown.total_watts,
            )

    for scheme in cfg.schemes:
        sc = cfg.scheme_config(scheme)
        if scheme is Scheme.RFOF:
            for f_hz in cfg.sweep.frequencies_hz:
                emit(dataclasses.replace(sc, rf_carrier_hz=float(f_hz)), float(f_hz))
        else:
            emit(sc, sc.rf_carrier_hz)

    crossovers = []
    if Scheme.RFOF in cfg.schemes and Scheme.BBOF in cfg.schemes:
        rfof = cfg.scheme_config(Scheme.RFOF)
        bbof = cfg.scheme_config(Scheme.BBOF)
        for f_hz in cfg.sweep.frequencies_hz:
            found = crossover_length(
                rfof, bbof, cfg.fiber, m, p_tx, cfg.sweep.crossover_range_km,
                cfg.power, rf_carrier_hz=float(f_hz),
            )
            crossovers.append(
                {"scheme_a": "rfof", "scheme_b": "bbof", "f_rf_hz": float(f_hz),
                 "crossover_km": found}
            )
    table.metadata["crossovers"] = crossovers
    return table


def _throughput_drop(cfg: ExperimentConfig, m: int, j: int, drop_seed: int):
    """Power-normalized SINR components shared by every scheme at this drop."""
    scenario = Scenario(
        area_width_m=cfg.scenario.area_width_m,
        area_height_m=cfg.scenario.area_height_m,
        num_raps=m,
        num_ues=j,
        fiber_length_km=cfg.fiber.length_km,
        rng_seed=drop_seed,
    )
    layout = generate_layout(scenario)
    realization = draw_channels(layout, cfg.channel_model(), drop_seed)
    assoc = udn_association(layout, mode=cfg.sweep.association_mode)
    ud_sig, ud_itf = udn_sinr_components(realization, assoc)
    cf_sig, cf_itf = cellfree_sinr_components(realization)
    return {"udn": (ud_sig, ud_itf), "cellfree": (cf_sig, cf_itf)}


def run_throughput_sweep(cfg: ExperimentConfig) -> ResultTable:
    """Budget-constrained mean sum throughput vs RAP count, per arch and scheme.

    A (scheme, M) point whose fixed power already exceeds the budget cannot
    operate and contributes zero-throughput rows; the sweep fails only when no
    point is feasible at all.
    """
    table = ResultTable("throughput_sweep", THROUGHPUT_COLUMNS,
                        metadata=_base_metadata(cfg, "throughput_sweep"))
    model = cfg.channel_model()
    noise_w = model.noise_power_w
    drops = cfg.monte_carlo_drops

    scheme_cfgs = {s: cfg.scheme_config(s) for s in cfg.schemes}
    fh_linear = {
        s: db_to_linear(fronthaul_snr_db(sc, cfg.fiber)) for s, sc in scheme_cfgs.items()
    }

    p_tx: dict[tuple[Scheme, int], float] = {}
    feasible: dict[tuple[Scheme, int], bool] = {}
    for s, sc in scheme_cfgs.items():
        for m in cfg.sweep.m_values:
            try:
                p_tx[(s, m)] = solve_tx_power(sc, m, cfg.fiber, cfg.budget_w, cfg.power)
                feasible[(s, m)] = True
            except InfeasibleBudgetError:
                p_tx[(s, m)] = 0.0
                feasible[(s, m)] = False
    if not any(feasible.values()):
        raise InfeasibleBudgetError(
            f"budget {cfg.budget_w} W infeasible for every scheme and RAP count"
        )

    rates: dict[tuple[str, Scheme, int], list[float]] = {}
    j_of_m: dict[int, int] = {}
    for m in cfg.sweep.m_values:
        j = max(1, round(0.5 * m))
        j_of_m[m] = j
        seeds = [cfg.base_seed + i for i in range(drops)]
        if cfg.workers > 1:
            with ThreadPoolExecutor(max_workers=cfg.workers) as pool:
                drop_components = list(
                    pool.map(lambda seed: _throughput_drop(cfg, m, j, seed), seeds)
                )
        else:
            drop_components = [_throughput_drop(cfg, m, j, seed) for seed in seeds]

        for arch in ("udn", "cellfree"):
            for s, sc in scheme_cfgs.items():
                p = p_tx[(s, m)]
                cap = (
                    bbof_per_rap_cap_bps(
                        sc.fiber_bit_rate_bps, cfg.digitization_bits_per_sample_pair
                    )
                    if s is Scheme.BBOF
                    else None
                )
                per_drop = []
                for comps in drop_components:
                    sig, itf = comps[arch]
                    sinr = p * sig / (p * itf + noise_w)
                    effective = [
                        combine_fronthaul_noise(float(v), fh_linear[s]) for v in sinr
                    ]
                    per_drop.append(
                        sum_throughput(
                            effective, sc.wireless_bandwidth_hz, m, j,
                            overhead=cfg.overhead, per_rap_cap_bps=cap,
                        )
                    )
                rates[(arch, s, m)] = per_drop

    for arch in ("udn", "cellfree"):
        for s in cfg.schemes:
            for m in cfg.sweep.m_values:
                per_drop = np.asarray(rates[(arch, s, m)])
                mean = float(per_drop.mean())
                ci95 = (
                    float(1.96 * per_drop.std(ddof=1) / math.sqrt(drops))
                    if drops > 1
                    else 0.0
                )
                table.append(
                    arch, s.value, m, j_of_m[m], drops, p_tx[(s, m)], mean, ci95
                )

    table.metadata["solver"] = {
        s.value: {
            str(m): {"p_tx_w": p_tx[(s, m)], "feasible": feasible[(s, m)]}
            for m in cfg.sweep.m_values
        }
        for s in cfg.schemes
    }
    table.metadata["fronthaul_snr_db"] = {
        s.value: _json_safe(fronthaul_snr_db(sc, cfg.fiber))
        for s, sc in scheme_cfgs.items()
    }
    return table


def run_beam_pattern(cfg: ExperimentConfig) -> ResultTable:
    """|AF| over a (frequency, angle) grid for phase-only and TTD steering."""
    sweep = cfg.sweep
    f_lo, f_hi = sweep.band_hz
    spacing = sweep.array_spacing_m
    if spacing is None:
        spacing = SPEED_OF_LIGHT_M_S / f_lo / 2.0
    geom = ArrayGeometry.ula(sweep.array_elements, spacing, f_lo, band_hz=(f_lo, f_hi))
    theta0 = math.radians(sweep.steer_theta_deg)
    specs = {
        "phase_only": phase_only_weights(geom, theta0),
        "ttd": ttd_weights(geom, theta0),
    }
    freqs = np.linspace(f_lo, f_hi, sweep.num_band_points)
    lo_deg, hi_deg, step_deg = sweep.theta_grid_deg
    count = int(round((hi_deg - lo_deg) / step_deg)) + 1
    thetas_deg = lo_deg + step_deg * np.arange(count)
    thetas_rad = np.radians(thetas_deg)

    table = ResultTable("beam_pattern", BEAM_COLUMNS,
                        metadata=_base_metadata(cfg, "beam_pattern"))
    for mode, spec in specs.items():
        for f_hz in freqs:
            values = array_factor_pattern(geom, spec, float(f_hz), thetas_rad)
            for theta_deg, af in zip(thetas_deg, values):
                table.append(
                    mode, float(f_hz), float(theta_deg), float(abs(af)),
                    float(np.angle(af)),
                )

    # Peak trajectory, searched on the steering side to dodge grating lobes.
    window = (0.0, math.pi / 2) if theta0 >= 0 else (-math.pi / 2, 0.0)
    peaks = []
    for mode, spec in specs.items():
        for f_hz in freqs:
            measured = peak_direction(geom, spec, float(f_hz), *window)
            try:
                predicted = math.degrees(beam_squint_direction(float(f_hz), f_lo, theta0))
            except NoRealBeamError:
                predicted = None
            peaks.append(
                {"mode": mode, "f_hz": float(f_hz),
                 "peak_deg": math.degrees(measured),
                 "squint_prediction_deg": predicted if mode == "phase_only" else None}
            )
    table.metadata["peaks"] = peaks
    return table
