"""Windowed spike-trace circuit: per-spike charge packets on a capacitor, pulse-width readout."""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

# Trace circuit sizing (1 V supply)
C_TR_DEFAULT = 100e-15        # F, storage capacitor
I_CHARGE_DEFAULT = 240e-9     # A, per-spike charging current (oversized vs. ideal for parasitics)
I_DISCHARGE_DEFAULT = 100e-9  # A, readout discharge current
V_BUF_DEFAULT = 0.7           # V, readout buffer threshold
V_DD_DEFAULT = 1.0            # V, supply
WINDOW_DEFAULT = 1e-6         # s, accumulation window


@dataclass(frozen=True)
class TraceParams:
    c_tr: float = C_TR_DEFAULT
    i_charge: float = I_CHARGE_DEFAULT
    i_discharge: float = I_DISCHARGE_DEFAULT
    v_buf: float = V_BUF_DEFAULT
    v_dd: float = V_DD_DEFAULT
    window: float = WINDOW_DEFAULT
    # Optional exponential trace decay; inf reproduces the hardware (pure spike counting).
    tau_z: float = math.inf

    def __post_init__(self):
        for name in ("c_tr", "i_charge", "i_discharge", "v_buf", "v_dd", "window", "tau_z"):
            if getattr(self, name) <= 0.0:
                raise ValueError(f"{name} must be > 0, got {getattr(self, name)}")
        if self.v_buf >= self.v_dd:
            raise ValueError(f"v_buf must be < v_dd, got v_buf={self.v_buf}, v_dd={self.v_dd}")


@dataclass(frozen=True)
class TraceState:
    """Voltage held on the trace capacitor."""

    v_ctr: float = 0.0

    def __post_init__(self):
        if self.v_ctr < 0.0:
            raise ValueError(f"v_ctr must be >= 0, got {self.v_ctr}")


def required_charge_current(params: TraceParams, nu_max: float, t_w: float) -> float:
    """Charging current in A that reaches v_dd exactly at the saturation spike rate."""
    if nu_max <= 0.0 or t_w <= 0.0:
        raise ValueError(f"nu_max and t_w must be > 0, got nu_max={nu_max}, t_w={t_w}")
    return params.v_dd * params.c_tr / (nu_max * params.window * t_w)


def accumulate_window(state: TraceState, params: TraceParams, spikes: int, t_w: float) -> TraceState:
    """Add one window's worth of spike charge packets, clamped at the supply.

    Each spike deposits t_w * i_charge / c_tr volts. With finite tau_z the
    packets decay exponentially; spikes are assumed evenly spread over the
    window, giving a closed-form geometric sum.
    """
    if spikes < 0:
        raise ValueError(f"spike count must be >= 0, got {spikes}")
    dv = t_w * params.i_charge / params.c_tr
    if spikes == 0:
        gain = 0.0
    elif math.isinf(params.tau_z):
        gain = float(spikes)
    else:
        r = math.exp(-params.window / (spikes * params.tau_z))
        gain = float(spikes) if r == 1.0 else (1.0 - r**spikes) / (1.0 - r)
    v = min(params.v_dd, state.v_ctr + dv * gain)
    return replace(state, v_ctr=v)


def pulse_width(state: TraceState, params: TraceParams) -> float:
    """Readout pulse width in s: discharge time from v_ctr down to the buffer threshold."""
    return max(0.0, (state.v_ctr - params.v_buf) * params.c_tr / params.i_discharge)


def normalized_value(state: TraceState, params: TraceParams) -> float:
    """Trace value in [0, 1]: pulse width relative to a capacitor charged to v_dd."""
    full = (params.v_dd - params.v_buf) * params.c_tr / params.i_discharge
    return pulse_width(state, params) / full
