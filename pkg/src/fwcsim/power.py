"""Per-scheme power consumption model, budget solving, and crossover planning.

Module placement mirrors the three fronthaul architectures:

    BBoF  CU {BBU, E-O}                   RAP {O-E, DUC, DPD, DAC, RFU, CM, PA}
    IFoF  CU {BBU, DUC, DAC, IFM, E-O}    RAP {O-E, RFU, CM, PA}
    RFoF  CU {BBU, DUC, DAC, RFU, E-O}    RAP {O-E, PA}

Digital pre-distortion exists only in BBoF, which is also why its PA
efficiency is higher.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, replace
from enum import Enum

from .errors import InfeasibleBudgetError, ValidationError
from .optics import FiberParams, Scheme, SchemeConfig, attenuation_db, scheme_fading_db
from .units import db_to_linear

# Default drive power of the analog optical link at zero fiber loss. Calibrated
# once so the single-link RFoF/BBoF crossover at 10 GHz sits at 13.5 km; see
# README "Calibration".
DEFAULT_P_LINK0_W = 0.1834

_SOLVER_TOL_W = 1e-9


class NodeRole(Enum):
    CU_SHARE = "cu_share"
    RAP = "rap"


@dataclass(frozen=True)
class PowerParams:
    """Catalogue wattages and loss fractions for commercial FWC hardware."""

    p_bbu_w: float = 58.0
    p_ifm_w: float = 2.0
    p_duc_w: float = 3.0
    p_dpd_w: float = 5.0
    p_dac_w: float = 2.0
    p_rfu_w: float = 2.0
    p_cm_w: float = 1.0
    p_eo_w: float = 1.0  # E-O interface, not catalogued; configurable
    p_oe_w: float = 1.0  # O-E interface, not catalogued; configurable
    pa_eff_bbof: float = 0.25
    pa_eff_ifof: float = 0.15
    pa_eff_rfof: float = 0.15
    pa_gain_db: float = 10.0  # amplifier property; enters no wattage sum
    feeder_loss: float = 0.5  # fraction lost in the PA-to-antenna coax
    supply_loss_frac: float = 0.15
    cooling_frac: float = 0.2
    p_link0_w: float = DEFAULT_P_LINK0_W

    def __post_init__(self):
        for name in (
            "p_bbu_w", "p_ifm_w", "p_duc_w", "p_dpd_w", "p_dac_w", "p_rfu_w",
            "p_cm_w", "p_eo_w", "p_oe_w", "supply_loss_frac", "cooling_frac",
            "p_link0_w", "pa_gain_db",
        ):
            if getattr(self, name) < 0:
                raise ValidationError(f"{name} must be >= 0")
        for name in ("pa_eff_bbof", "pa_eff_ifof", "pa_eff_rfof"):
            eff = getattr(self, name)
            if not 0.0 < eff <= 1.0:
                raise ValidationError(f"{name} must be in (0, 1], got {eff}")
        if not 0.0 <= self.feeder_loss < 1.0:
            raise ValidationError(f"feeder_loss must be in [0, 1), got {self.feeder_loss}")

    def pa_efficiency(self, scheme: Scheme) -> float:
        return {
            Scheme.BBOF: self.pa_eff_bbof,
            Scheme.IFOF: self.pa_eff_ifof,
            Scheme.RFOF: self.pa_eff_rfof,
        }[Scheme(scheme)]

    @property
    def overhead_multiplier(self) -> float:
        """Supply and cooling losses as additive fractions of functional power."""
        return 1.0 + self.supply_loss_frac + self.cooling_frac


@dataclass(frozen=True)
class PowerBreakdown:
    """Itemized system consumption; components are functional (pre-overhead)."""

    cu_watts: float
    per_rap_watts: float
    fiber_comp_watts: float
    overhead_watts: float
    total_watts: float
    num_raps: int


def pa_input_power(p_tx_antenna_w: float, scheme: Scheme, params: PowerParams) -> float:
    """DC input drawing of the PA delivering p_tx at the antenna port."""
    if p_tx_antenna_w < 0:
        raise ValidationError(f"transmit power must be >= 0, got {p_tx_antenna_w}")
    return p_tx_antenna_w / (params.pa_efficiency(scheme) * (1.0 - params.feeder_loss))


def _cu_share_w(scheme: Scheme, params: PowerParams) -> float:
    if scheme is Scheme.BBOF:
        return params.p_bbu_w + params.p_eo_w
    if scheme is Scheme.IFOF:
        return params.p_bbu_w + params.p_duc_w + params.p_dac_w + params.p_ifm_w + params.p_eo_w
    return params.p_bbu_w + params.p_duc_w + params.p_dac_w + params.p_rfu_w + params.p_eo_w


def _rap_fixed_w(scheme: Scheme, params: PowerParams) -> float:
    if scheme is Scheme.BBOF:
        return (
            params.p_oe_w + params.p_duc_w + params.p_dpd_w + params.p_dac_w
            + params.p_rfu_w + params.p_cm_w
        )
    if scheme is Scheme.IFOF:
        return params.p_oe_w + params.p_rfu_w + params.p_cm_w
    return params.p_oe_w


def node_functional_power(
    scheme: Scheme, role: NodeRole, p_tx_w: float, params: PowerParams
) -> float:
    """Sum of the modules placed at the node; the RAP adds its PA input."""
    scheme = Scheme(scheme)
    if role is NodeRole.CU_SHARE:
        return _cu_share_w(scheme, params)
    if role is NodeRole.RAP:
        return _rap_fixed_w(scheme, params) + pa_input_power(p_tx_w, scheme, params)
    raise ValidationError(f"unknown node role {role!r}")


def fiber_compensation_power(
    scheme: SchemeConfig, fiber: FiberParams, params: PowerParams
) -> float:
    """Drive power offsetting analog link loss: p_link0 * 10^(A_dB/10).

    A_dB is attenuation plus carrier fading; BBoF needs none. Returns math.inf
    at a dispersion null.
    """
    if scheme.scheme is Scheme.BBOF:
        return 0.0
    fading = scheme_fading_db(scheme, fiber)
    if math.isinf(fading):
        return math.inf
    return params.p_link0_w * db_to_linear(attenuation_db(fiber) + fading)


def system_power(
    scheme: SchemeConfig,
    num_raps: int,
    p_tx_w: float,
    fiber: FiberParams,
    params: PowerParams,
) -> PowerBreakdown:
    """Total consumption of CU plus num_raps RAPs incl. supply/cooling overhead."""
    if num_raps < 1:
        raise ValidationError(f"num_raps must be >= 1, got {num_raps}")
    cu = node_functional_power(scheme.scheme, NodeRole.CU_SHARE, 0.0, params)
    rap = node_functional_power(scheme.scheme, NodeRole.RAP, p_tx_w, params)
    comp = fiber_compensation_power(scheme, fiber, params)
    functional = cu + num_raps * (rap + comp)
    overhead = (params.overhead_multiplier - 1.0) * functional
    return PowerBreakdown(
        cu_watts=cu,
        per_rap_watts=rap,
        fiber_comp_watts=comp,
        overhead_watts=overhead,
        total_watts=functional + overhead,
        num_raps=num_raps,
    )


def solve_tx_power(
    scheme: SchemeConfig,
    num_raps: int,
    fiber: FiberParams,
    budget_w: float,
    params: PowerParams,
) -> float:
    """Per-RAP transmit power whose system total equals the budget.

    The model is affine in p_tx, so the inverse is closed-form. Raises
    InfeasibleBudgetError when the budget cannot cover the fixed consumption.
    """
    fixed = system_power(scheme, num_raps, 0.0, fiber, params).total_watts
    if not math.isfinite(fixed):
        raise InfeasibleBudgetError(
            f"{scheme.scheme.value} fixed power is infinite (dispersion null)"
        )
    if budget_w < fixed - _SOLVER_TOL_W:
        raise InfeasibleBudgetError(
            f"budget {budget_w} W below fixed consumption {fixed:.6f} W "
            f"for {scheme.scheme.value} with {num_raps} RAPs"
        )
    slope = (
        params.overhead_multiplier
        * num_raps
        / (params.pa_efficiency(scheme.scheme) * (1.0 - params.feeder_loss))
    )
    return max(0.0, (budget_w - fixed) / slope)


def crossover_length(
    scheme_a: SchemeConfig,
    scheme_b: SchemeConfig,
    fiber: FiberParams,
    num_raps: int,
    p_tx_w: float,
    length_range_km: tuple[float, float],
    params: PowerParams,
    rf_carrier_hz: float | None = None,
    num_scan: int = 512,
) -> float | None:
    """Smallest fiber length where scheme_a's total first exceeds scheme_b's.

    Scans the range, then bisects the bracketing segment. Returns None when no
    crossing exists in range. ``rf_carrier_hz`` re-carriers both schemes for
    frequency studies.
    """
    lo, hi = length_range_km
    if not lo < hi:
        raise ValidationError(f"bad length range {length_range_km}")
    if num_scan < 2:
        raise ValidationError("num_scan must be >= 2")
    if rf_carrier_hz is not None:
        scheme_a = replace(scheme_a, rf_carrier_hz=rf_carrier_hz)
        scheme_b = replace(scheme_b, rf_carrier_hz=rf_carrier_hz)

    def diff(length_km: float) -> float:
        fib = replace(fiber, length_km=length_km)
        total_a = system_power(scheme_a, num_raps, p_tx_w, fib, params).total_watts
        total_b = system_power(scheme_b, num_raps, p_tx_w, fib, params).total_watts
        if math.isinf(total_a) and math.isinf(total_b):
            return 0.0
        if math.isinf(total_a):
            return math.inf
        if math.isinf(total_b):
            return -math.inf
        return total_a - total_b

    step = (hi - lo) / (num_scan - 1)
    prev_l, prev_d = lo, diff(lo)
    if prev_d > 0:
        return lo
    for i in range(1, num_scan):
        cur_l = lo + i * step
        cur_d = diff(cur_l)
        if cur_d > 0:
            break
        prev_l, prev_d = cur_l, cur_d
    else:
        return None

    lo_l, hi_l = prev_l, cur_l
    for _ in range(80):
        mid = 0.5 * (lo_l + hi_l)
        if diff(mid) > 0:
            hi_l = mid
        else:
            lo_l = mid
        if hi_l - lo_l < 1e-9:
            break
    return 0.5 * (lo_l + hi_l)
