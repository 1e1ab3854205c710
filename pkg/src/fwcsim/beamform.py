"""Mixed digital-optical beamforming: array factors, phase-only and true
time-delay weights, beam-squint prediction, and fiber/air delay alignment."""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .errors import DegenerateChannelError, NoRealBeamError, ValidationError
from .geometry import NetworkLayout, Point2D
from .units import SPEED_OF_LIGHT_M_S

FIBER_GROUP_INDEX = 1.468  # standard single-mode silica
# Phase-coherent combining needs all arrivals inside one symbol interval.
SYMBOL_COHERENCE_S = 1e-9


def coherent_within_symbol(arrival_times_s, symbol_interval_s: float = SYMBOL_COHERENCE_S) -> bool:
    """Whether an arrival-time spread permits phase-coherent combining."""
    times = list(arrival_times_s)
    if not times:
        raise ValidationError("no arrival times given")
    return max(times) - min(times) <= symbol_interval_s


@dataclass(frozen=True)
class ArrayGeometry:
    """Element positions with a center frequency and operating band."""

    element_positions: tuple[Point2D, ...]
    center_freq_hz: float
    band_hz: tuple[float, float]

    def __post_init__(self):
        if len(self.element_positions) < 1:
            raise ValidationError("array needs at least one element")
        f_lo, f_hi = self.band_hz
        if not 0 < f_lo <= self.center_freq_hz <= f_hi:
            raise ValidationError(
                f"band must satisfy 0 < f_lo <= f0 <= f_hi, got {self.band_hz} around "
                f"{self.center_freq_hz}"
            )

    @classmethod
    def ula(
        cls,
        num_elements: int,
        spacing_m: float,
        center_freq_hz: float,
        band_hz: tuple[float, float] | None = None,
    ) -> "ArrayGeometry":
        """Uniform linear array along x starting at the origin."""
        if num_elements < 1:
            raise ValidationError("num_elements must be >= 1")
        if spacing_m <= 0:
            raise ValidationError("spacing must be > 0")
        positions = tuple(Point2D(i * spacing_m, 0.0) for i in range(num_elements))
        if band_hz is None:
            band_hz = (center_freq_hz, center_freq_hz)
        return cls(positions, center_freq_hz, band_hz)

    @property
    def num_elements(self) -> int:
        return len(self.element_positions)

    def projections(self, theta_rad: float) -> np.ndarray:
        """Element projections onto the unit direction u = (sin t, cos t)."""
        ux, uy = math.sin(theta_rad), math.cos(theta_rad)
        return np.array([p.x * ux + p.y * uy for p in self.element_positions])


@dataclass(frozen=True)
class BeamformerSpec:
    """Complex weights plus true time delays, one pair per element."""

    weights: tuple[complex, ...]
    delays_s: tuple[float, ...]

    def __post_init__(self):
        if len(self.weights) != len(self.delays_s) or len(self.weights) < 1:
            raise ValidationError("weights and delays must be equal-length and nonempty")
        if any(not math.isfinite(d) or d < 0 for d in self.delays_s):
            raise ValidationError("delays must be finite and >= 0")
        if any(not (math.isfinite(w.real) and math.isfinite(w.imag)) for w in self.weights):
            raise ValidationError("weights must be finite")


def array_factor(
    geom: ArrayGeometry, spec: BeamformerSpec, f_hz: float, theta_rad: float
) -> complex:
    """AF = sum_m w_m * exp(-j*2*pi*f*tau_m) * exp(j*2*pi*f*(p_m . u)/c)."""
    if len(spec.weights) != geom.num_elements:
        raise ValidationError("spec length does not match element count")
    f_lo, f_hi = geom.band_hz
    if not f_lo <= f_hz <= f_hi:
        raise ValidationError(f"frequency {f_hz} outside band {geom.band_hz}")
    proj = geom.projections(theta_rad)
    w = np.asarray(spec.weights, dtype=complex)
    tau = np.asarray(spec.delays_s)
    terms = w * np.exp(-2j * math.pi * f_hz * tau) * np.exp(
        2j * math.pi * f_hz * proj / SPEED_OF_LIGHT_M_S
    )
    return complex(terms.sum())


def array_factor_pattern(
    geom: ArrayGeometry, spec: BeamformerSpec, f_hz: float, thetas_rad: np.ndarray
) -> np.ndarray:
    """Vectorized array factor over a grid of directions."""
    if len(spec.weights) != geom.num_elements:
        raise ValidationError("spec length does not match element count")
    f_lo, f_hi = geom.band_hz
    if not f_lo <= f_hz <= f_hi:
        raise ValidationError(f"frequency {f_hz} outside band {geom.band_hz}")
    thetas = np.asarray(thetas_rad, dtype=float)
    xy = np.array([[p.x, p.y] for p in geom.element_positions])
    u = np.stack([np.sin(thetas), np.cos(thetas)])  # (2, T)
    proj = xy @ u  # (N, T)
    w = np.asarray(spec.weights, dtype=complex)
    feed = w * np.exp(-2j * math.pi * f_hz * np.asarray(spec.delays_s))
    return feed @ np.exp(2j * math.pi * f_hz * proj / SPEED_OF_LIGHT_M_S)


def phase_only_weights(
    geom: ArrayGeometry, theta0_rad: float, f0_hz: float | None = None
) -> BeamformerSpec:
    """Narrowband steering: w_m = exp(-j*2*pi*f0*(p_m . u0)/c), no delays."""
    if f0_hz is None:
        f0_hz = geom.center_freq_hz
    proj = geom.projections(theta0_rad)
    weights = tuple(
        complex(cmath.exp(-2j * math.pi * f0_hz * p / SPEED_OF_LIGHT_M_S)) for p in proj
    )
    return BeamformerSpec(weights=weights, delays_s=(0.0,) * geom.num_elements)


def ttd_weights(geom: ArrayGeometry, theta0_rad: float) -> BeamformerSpec:
    """True time delays aligning all element emissions toward theta0.

    tau_m = (p_m . u0 - min projection)/c keeps the applied phase linear in
    frequency, so |AF(theta0, f)| = N across the whole band.
    """
    proj = geom.projections(theta0_rad)
    tau = (proj - proj.min()) / SPEED_OF_LIGHT_M_S
    return BeamformerSpec(
        weights=(complex(1.0),) * geom.num_elements,
        delays_s=tuple(max(0.0, float(t)) for t in tau),
    )


def beam_squint_direction(f_hz: float, f0_hz: float, theta0_rad: float) -> float:
    """ULA squint closed form: theta(f) = asin((f0/f) * sin(theta0))."""
    if f_hz <= 0 or f0_hz <= 0:
        raise ValidationError("frequencies must be > 0")
    arg = (f0_hz / f_hz) * math.sin(theta0_rad)
    if abs(arg) > 1.0:
        raise NoRealBeamError(
            f"(f0/f)*sin(theta0) = {arg:.4f} leaves no real steering direction"
        )
    return math.asin(arg)


def peak_direction(
    geom: ArrayGeometry,
    spec: BeamformerSpec,
    f_hz: float,
    theta_lo_rad: float = -math.pi / 2,
    theta_hi_rad: float = math.pi / 2,
    step_rad: float = math.radians(0.01),
) -> float:
    """Grid-search argmax of |AF| over [theta_lo, theta_hi].

    Grating lobes of equal height appear outside the mainlobe half-plane for
    wideband sweeps of half-wavelength arrays; restrict the window to the
    steering side when measuring squint.
    """
    if not theta_lo_rad < theta_hi_rad:
        raise ValidationError("empty search window")
    count = int(round((theta_hi_rad - theta_lo_rad) / step_rad)) + 1
    thetas = theta_lo_rad + step_rad * np.arange(count)
    mags = np.abs(array_factor_pattern(geom, spec, f_hz, thetas))
    return float(thetas[int(np.argmax(mags))])


def sync_delays(
    layout: NetworkLayout,
    target_ue: int,
    fiber_lengths_km: tuple[float, ...] | None = None,
    group_index: float = FIBER_GROUP_INDEX,
) -> list[float]:
    """Optical delay-line settings equalizing fiber-plus-air path delays.

    T_m = n_g*L_m/c + d_m/c; the returned delta_m = max T - T_m makes every
    compensated arrival time equal, with min delta = 0.
    """
    if not 0 <= target_ue < layout.num_ues:
        raise ValidationError(f"target UE {target_ue} out of range")
    if fiber_lengths_km is None:
        fiber_lengths_km = layout.fiber_length_km
    if len(fiber_lengths_km) != layout.num_raps:
        raise ValidationError("one fiber length per RAP required")
    ue = layout.ue_positions[target_ue]
    totals = [
        group_index * lk * 1e3 / SPEED_OF_LIGHT_M_S + rap.distance_to(ue) / SPEED_OF_LIGHT_M_S
        for rap, lk in zip(layout.rap_positions, fiber_lengths_km)
    ]
    t_max = max(totals)
    return [t_max - t for t in totals]


def mixed_beamformer(
    realization,
    layout: NetworkLayout,
    target_ue: int,
    fronthaul_gains,
    group_index: float = FIBER_GROUP_INDEX,
) -> BeamformerSpec:
    """Digital conjugate weights over the composite optical*wireless channel,
    with TTD delays compensating per-RAP propagation.

    Weights are unit magnitude per RAP (a RAP with zero composite gain stays
    silent), so every RAP spends its own PA budget; the effective channel
    w_m * q_m is real and nonnegative.
    """
    gains = np.asarray(fronthaul_gains, dtype=complex)
    if gains.shape != (layout.num_raps,):
        raise ValidationError("one fronthaul gain per RAP required")
    composite = gains * realization.gains[:, target_ue]
    mags = np.abs(composite)
    if not np.any(mags > 0):
        raise DegenerateChannelError("all composite gains are zero")
    weights = np.where(mags > 0, np.conj(composite) / np.where(mags > 0, mags, 1.0), 0.0)
    delays = sync_delays(layout, target_ue, group_index=group_index)
    return BeamformerSpec(
        weights=tuple(complex(w) for w in weights), delays_s=tuple(delays)
    )
