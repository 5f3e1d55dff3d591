"""Behavioral LIF neuron: closed-form rate/count model plus a time-stepped membrane oracle."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Union

# Measured hardware values (45 nm behavioral fit)
PHI_DEFAULT = 0.7        # V, firing threshold of the output buffer chain
C_M_DEFAULT = 120e-15    # F, membrane capacitance
I_LEAK_DEFAULT = 365e-9  # A, constant leak current
T_R_DEFAULT = 12e-9      # s, absolute refractory period
T_W_DEFAULT = 13e-9      # s, output spike width

MAX_ORACLE_DT = 0.5e-9   # s, coarsest step the oracle accepts


@dataclass(frozen=True)
class NeuronParams:
    phi: float = PHI_DEFAULT
    c_m: float = C_M_DEFAULT
    i_leak: float = I_LEAK_DEFAULT
    t_r: float = T_R_DEFAULT
    t_w: float = T_W_DEFAULT

    def __post_init__(self):
        for name in ("phi", "c_m", "i_leak", "t_r", "t_w"):
            if getattr(self, name) <= 0.0:
                raise ValueError(f"{name} must be > 0, got {getattr(self, name)}")


@dataclass(frozen=True)
class SpikeTrain:
    """Oracle output: strictly increasing spike times within a window."""

    spike_times: tuple[float, ...]
    window: float


def max_rate(params: NeuronParams) -> float:
    """Saturation rate in Hz: one spike per spike-width plus refractory period."""
    return 1.0 / (params.t_r + params.t_w)


def spike_rate(params: NeuronParams, i_in: float) -> float:
    """Steady-state firing rate in Hz for a constant input current.

    Zero at or below the leak; saturates at max_rate for large currents.
    """
    if i_in <= params.i_leak:
        return 0.0
    charge_time = params.phi * params.c_m / (i_in - params.i_leak)
    return 1.0 / (charge_time + params.t_r + params.t_w)


def spike_count(params: NeuronParams, i_in: float, window: float) -> int:
    """Number of spikes emitted in a window of length `window` seconds."""
    if window <= 0.0:
        raise ValueError(f"window must be > 0, got {window}")
    return int(math.floor((window + params.t_r) * spike_rate(params, i_in)))


def integrate_oracle(
    params: NeuronParams,
    i_in: Union[float, Callable[[float], float]],
    dt: float,
    window: float,
) -> SpikeTrain:
    """Explicit-Euler integration of the membrane over one window.

    `i_in` is either a constant current in A or a callable t -> A evaluated at
    the start of each step. On threshold crossing the output is held high for
    t_w, the membrane resets to zero and integration is suppressed for a
    further t_r. The dynamics are piecewise linear, so Euler is exact between
    events; the only discretization error is the rounding of event times to
    the dt grid.
    """
    if dt <= 0.0 or window <= 0.0:
        raise ValueError(f"dt and window must be > 0, got dt={dt}, window={window}")
    if dt > MAX_ORACLE_DT:
        raise ValueError(f"dt must be <= {MAX_ORACLE_DT} s for acceptable event timing, got {dt}")

    current = i_in if callable(i_in) else (lambda t: i_in)
    # Output-high plus refractory interval, in whole steps (tolerate float slop).
    hold_steps = math.ceil((params.t_w + params.t_r) / dt - 1e-9)
    n_steps = int(math.floor(window / dt))
    dv_scale = dt / params.c_m

    spikes: list[float] = []
    v = 0.0
    hold = 0
    for k in range(n_steps):
        if hold > 0:
            hold -= 1
            continue
        v += dv_scale * (current(k * dt) - params.i_leak)
        if v < 0.0:
            v = 0.0
        elif v >= params.phi:
            spikes.append((k + 1) * dt)
            v = 0.0
            hold = hold_steps
    return SpikeTrain(spike_times=tuple(spikes), window=window)


def oracle_rate(train: SpikeTrain) -> float:
    """Mean inter-spike rate in Hz from an oracle spike train (needs >= 2 spikes)."""
    times = train.spike_times
    if len(times) < 2:
        raise ValueError(f"need at least 2 spikes to estimate a rate, got {len(times)}")
    return (len(times) - 1) / (times[-1] - times[0])
