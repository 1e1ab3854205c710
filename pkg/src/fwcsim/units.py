"""Physical constants and dB helpers. All model internals are SI."""
from __future__ import annotations

import math

SPEED_OF_LIGHT_M_S = 299_792_458.0
BOLTZMANN_J_K = 1.380649e-23
ROOM_TEMPERATURE_K = 290.0


def db_to_linear(value_db: float) -> float:
    """Power ratio from dB; -inf maps to 0, +inf stays +inf."""
    if value_db == -math.inf:
        return 0.0
    if value_db == math.inf:
        return math.inf
    return 10.0 ** (value_db / 10.0)


def linear_to_db(value: float) -> float:
    """dB from a power ratio; 0 maps to -inf."""
    if value < 0.0:
        raise ValueError(f"power ratio must be >= 0, got {value}")
    if value == 0.0:
        return -math.inf
    if value == math.inf:
        return math.inf
    return 10.0 * math.log10(value)


def thermal_noise_w(bandwidth_hz: float, noise_figure_db: float = 0.0) -> float:
    """Receiver noise power k*T*B scaled by the noise figure."""
    if bandwidth_hz <= 0.0:
        raise ValueError(f"bandwidth must be > 0, got {bandwidth_hz}")
    return BOLTZMANN_J_K * ROOM_TEMPERATURE_K * bandwidth_hz * db_to_linear(noise_figure_db)
