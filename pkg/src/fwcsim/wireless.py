"""Wireless access layer: Rayleigh channel draws, UDN and cell-free SINR,
fronthaul-noise coupling, and overhead-scaled sum throughput."""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import ValidationError
from .geometry import Association, NetworkLayout
from .units import thermal_noise_w

CHANNEL_RNG_STREAM = 1
MIN_PATH_DISTANCE_M = 1.0  # clamp below the pathloss reference distance

# BBoF fronthaul digitization: 30 bits per complex sample pair at 2 samples/Hz.
DIGITIZATION_BITS_PER_SAMPLE_PAIR = 30.0


@dataclass(frozen=True)
class ChannelModel:
    """Log-distance pathloss with Rayleigh small-scale fading."""

    pathloss_exponent: float = 3.5
    ref_loss_db: float = 40.0  # at 1 m
    noise_power_w: float = thermal_noise_w(10e6, noise_figure_db=9.0)

    def __post_init__(self):
        if self.pathloss_exponent <= 2.0:
            raise ValidationError(
                f"pathloss exponent must exceed 2, got {self.pathloss_exponent}"
            )
        if self.noise_power_w <= 0:
            raise ValidationError("noise power must be > 0")

    @classmethod
    def from_bandwidth(
        cls,
        bandwidth_hz: float,
        noise_figure_db: float = 9.0,
        pathloss_exponent: float = 3.5,
        ref_loss_db: float = 40.0,
    ) -> "ChannelModel":
        return cls(
            pathloss_exponent=pathloss_exponent,
            ref_loss_db=ref_loss_db,
            noise_power_w=thermal_noise_w(bandwidth_hz, noise_figure_db),
        )

    def pathloss_gain(self, distance_m):
        """Average power gain beta(d) = 10^(-ref/10) * d^(-n), d clamped at 1 m."""
        d = np.maximum(np.asarray(distance_m, dtype=float), MIN_PATH_DISTANCE_M)
        return 10.0 ** (-self.ref_loss_db / 10.0) * d ** (-self.pathloss_exponent)


@dataclass(frozen=True, eq=False)
class ChannelRealization:
    """Complex gains between every RAP and UE for one Monte Carlo drop."""

    gains: np.ndarray  # (num_raps, num_ues) complex128
    drop_seed: int

    @property
    def num_raps(self) -> int:
        return self.gains.shape[0]

    @property
    def num_ues(self) -> int:
        return self.gains.shape[1]


def draw_channels(
    layout: NetworkLayout, model: ChannelModel, drop_seed: int
) -> ChannelRealization:
    """g_mj = sqrt(beta_mj) * h_mj with h ~ CN(0, 1); deterministic per seed."""
    rng = np.random.default_rng([drop_seed, CHANNEL_RNG_STREAM])
    beta = model.pathloss_gain(layout.distance_matrix())
    shape = beta.shape
    h = (rng.standard_normal(shape) + 1j * rng.standard_normal(shape)) / math.sqrt(2.0)
    return ChannelRealization(gains=np.sqrt(beta) * h, drop_seed=drop_seed)


def udn_sinr_components(
    realization: ChannelRealization, assignment: Association
) -> tuple[np.ndarray, np.ndarray]:
    """Per-UE (signal, interference) power coefficients per watt of p_tx."""
    if assignment.num_raps != realization.num_raps or assignment.num_ues != realization.num_ues:
        raise ValidationError("assignment does not match realization dimensions")
    p2 = np.abs(realization.gains) ** 2
    m, j = p2.shape
    active_mask = np.zeros(m, dtype=bool)
    active_mask[list(assignment.active_raps)] = True
    serve_mask = np.zeros((m, j), dtype=bool)
    for ue, serving in enumerate(assignment.serving_sets):
        serve_mask[list(serving), ue] = True
    signal = np.where(serve_mask, p2, 0.0).sum(axis=0)
    interference = np.where(active_mask[:, None] & ~serve_mask, p2, 0.0).sum(axis=0)
    return signal, interference


def udn_sinr(
    realization: ChannelRealization,
    assignment: Association,
    p_tx_w: float,
    model: ChannelModel,
) -> list[float]:
    """SINR_j = p|g_aj,j|^2 / (sum over other serving RAPs p|g_mj|^2 + noise).

    Idle RAPs stay silent. In ``rap_nearest`` mode a UE's serving set may hold
    several RAPs; their powers add non-coherently.
    """
    if p_tx_w < 0:
        raise ValidationError("transmit power must be >= 0")
    signal, interference = udn_sinr_components(realization, assignment)
    sinr = p_tx_w * signal / (p_tx_w * interference + model.noise_power_w)
    return [float(v) for v in sinr]


def cellfree_sinr_components(
    realization: ChannelRealization,
) -> tuple[np.ndarray, np.ndarray]:
    """Per-UE (signal, interference) coefficients per watt of per-RAP power.

    Conjugate beamforming with perfect CSI; RAP m scales each UE's conjugate
    by sqrt(eta_m) with eta_m = p / sum_j |g_mj|^2, so every RAP spends
    exactly its per-RAP budget.
    """
    gains = realization.gains
    denom = (np.abs(gains) ** 2).sum(axis=1)
    if np.any(denom == 0.0):
        raise ValidationError("a RAP has zero gain to every UE")
    sqrt_eta = 1.0 / np.sqrt(denom)
    cross = gains.T @ (sqrt_eta[:, None] * np.conj(gains))  # (J, J)
    amp = np.real(np.diag(cross))
    signal = amp**2
    inter_sq = np.abs(cross) ** 2
    np.fill_diagonal(inter_sq, 0.0)
    interference = inter_sq.sum(axis=1)
    return signal, interference


def cellfree_sinr(
    realization: ChannelRealization, p_tx_per_rap_w: float, model: ChannelModel
) -> list[float]:
    """Downlink conjugate-beamforming SINR across the whole distributed array."""
    if p_tx_per_rap_w < 0:
        raise ValidationError("transmit power must be >= 0")
    signal, interference = cellfree_sinr_components(realization)
    sinr = p_tx_per_rap_w * signal / (p_tx_per_rap_w * interference + model.noise_power_w)
    return [float(v) for v in sinr]


def combine_fronthaul_noise(sinr_wireless: float, fronthaul_snr: float) -> float:
    """Harmonic combination 1 / (1/sinr + 1/snr_fronthaul), both linear."""
    if sinr_wireless < 0 or fronthaul_snr < 0:
        raise ValidationError("SINR terms must be >= 0")
    if math.isinf(fronthaul_snr):
        return sinr_wireless
    if math.isinf(sinr_wireless):
        return fronthaul_snr
    if sinr_wireless == 0.0 or fronthaul_snr == 0.0:
        return 0.0
    return 1.0 / (1.0 / sinr_wireless + 1.0 / fronthaul_snr)


@dataclass(frozen=True)
class OverheadModel:
    """Pilot overhead growing with the UE count over a coherence block."""

    coherence_block_symbols: float = 200.0
    max_fraction: float = 0.95

    def fraction(self, num_raps: int, num_ues: int) -> float:
        return min(num_ues / self.coherence_block_symbols, self.max_fraction)


def bbof_per_rap_cap_bps(
    fiber_bit_rate_bps: float,
    digitization_factor: float = DIGITIZATION_BITS_PER_SAMPLE_PAIR,
) -> float:
    """Wireless rate one digitized fronthaul can feed through a single RAP."""
    if fiber_bit_rate_bps <= 0 or digitization_factor <= 0:
        raise ValidationError("fiber bit rate and digitization factor must be > 0")
    return fiber_bit_rate_bps / digitization_factor


def sum_throughput(
    sinrs: Sequence[float],
    bandwidth_hz: float,
    num_raps: int,
    num_ues: int | None = None,
    overhead: OverheadModel | float | None = None,
    per_rap_cap_bps: float | None = None,
) -> float:
    """Overhead-scaled network sum rate sum_j B*(1 - ov)*log2(1 + SINR_j).

    ``overhead`` accepts a model or a literal fraction. ``per_rap_cap_bps``
    clips the total at num_raps times the cap (the BBoF digitization limit).
    """
    sinr_arr = np.asarray(list(sinrs), dtype=float)
    if np.any(sinr_arr < 0):
        raise ValidationError("SINRs must be >= 0")
    if bandwidth_hz <= 0:
        raise ValidationError("bandwidth must be > 0")
    if num_ues is None:
        num_ues = len(sinr_arr)
    if overhead is None:
        overhead = OverheadModel()
    if isinstance(overhead, OverheadModel):
        fraction = overhead.fraction(num_raps, num_ues)
    else:
        fraction = float(overhead)
    if not 0.0 <= fraction < 1.0:
        raise ValidationError(f"overhead fraction must be in [0, 1), got {fraction}")
    total = (1.0 - fraction) * bandwidth_hz * float(np.log2(1.0 + sinr_arr).sum())
    if per_rap_cap_bps is not None:
        total = min(total, num_raps * per_rap_cap_bps)
    return total
