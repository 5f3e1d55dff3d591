"""Semi-empirical memristor model: sinh I-V, linearized conductance, flux-linkage switching."""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

# Fitted device constants (bipolar metal-oxide cell)
G_ON_DEFAULT = 1.0 / 1800.0      # S, fully-on conductance
G_OFF_DEFAULT = 1.0 / 4.637e4    # S, fully-off conductance
V_TP_DEFAULT = 0.4               # V, positive switching threshold
V_TN_DEFAULT = -0.55             # V, negative switching threshold
XI_DEFAULT = 0.32                # V, sinh shape factor; keeps reads within 2% of linear up to 0.1 V
K_SWITCH_DEFAULT = 1e6           # 1/(V*s), state change per unit flux linkage above threshold


@dataclass(frozen=True)
class MemristorParams:
    """Static device parameters. All voltages in V, conductances in S."""

    g_on: float = G_ON_DEFAULT
    g_off: float = G_OFF_DEFAULT
    v_tp: float = V_TP_DEFAULT
    v_tn: float = V_TN_DEFAULT
    xi_pos: float = XI_DEFAULT
    xi_neg: float = XI_DEFAULT
    k_switch: float = K_SWITCH_DEFAULT

    def __post_init__(self):
        if not (self.g_on > self.g_off > 0.0):
            raise ValueError(f"require g_on > g_off > 0, got g_on={self.g_on}, g_off={self.g_off}")
        if self.v_tp <= 0.0:
            raise ValueError(f"v_tp must be > 0, got {self.v_tp}")
        if self.v_tn >= 0.0:
            raise ValueError(f"v_tn must be < 0, got {self.v_tn}")
        if self.xi_pos <= 0.0 or self.xi_neg <= 0.0:
            raise ValueError("xi_pos and xi_neg must be > 0")
        if self.k_switch <= 0.0:
            raise ValueError(f"k_switch must be > 0, got {self.k_switch}")


@dataclass(frozen=True)
class MemristorState:
    """One physical memristor: state variable chi in [0, 1] plus its parameters."""

    chi: float
    params: MemristorParams

    def __post_init__(self):
        if not (0.0 <= self.chi <= 1.0):
            raise ValueError(f"chi must lie in [0, 1], got {self.chi}")


def conductance(state: MemristorState) -> float:
    """Small-signal conductance in S: linear interpolation between g_off and g_on."""
    p = state.params
    return state.chi * p.g_on + (1.0 - state.chi) * p.g_off


def device_current(state: MemristorState, v: float) -> float:
    """Static (non-switching) current in A through the device at voltage v.

    The on-fraction conducts ohmically; the off-fraction follows a sinh
    characteristic with branch-specific shape factors.
    """
    p = state.params
    xi = p.xi_pos if v >= 0.0 else p.xi_neg
    return state.chi * p.g_on * v + (1.0 - state.chi) * p.g_off * xi * math.sinh(v / xi)


def apply_program_pulse(state: MemristorState, v: float, duration: float) -> MemristorState:
    """Move chi linearly in the applied flux linkage beyond either threshold.

    Sub-threshold voltages leave the state untouched; the result is hard
    clamped to [0, 1].
    """
    if duration < 0.0:
        raise ValueError(f"pulse duration must be >= 0, got {duration}")
    p = state.params
    chi = state.chi
    if v > p.v_tp:
        chi += p.k_switch * (v - p.v_tp) * duration
    elif v < p.v_tn:
        chi -= p.k_switch * (p.v_tn - v) * duration
    chi = min(1.0, max(0.0, chi))
    return replace(state, chi=chi)
