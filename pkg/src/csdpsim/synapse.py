"""Complementary two-memristor synapse: signed weight, current injection, pulse programming."""

from __future__ import annotations

from dataclasses import dataclass, replace

from .device import MemristorParams, MemristorState, apply_program_pulse, device_current

I_S_DEFAULT = 15e-6        # A, spike-to-current scale of the synapse current sources
PROGRAM_OVERDRIVE = 0.1    # V, programming drive beyond each switching threshold


@dataclass(frozen=True)
class SynapseState:
    """Excitatory/inhibitory memristor pair realizing a signed weight in [-1, 1]."""

    exc: MemristorState
    inh: MemristorState
    i_s: float = I_S_DEFAULT

    def __post_init__(self):
        if self.i_s <= 0.0:
            raise ValueError(f"i_s must be > 0, got {self.i_s}")


def synapse_from_weight(w: float, params: MemristorParams | None = None,
                        i_s: float = I_S_DEFAULT) -> SynapseState:
    """Build a complementary synapse programmed to weight w."""
    if params is None:
        params = MemristorParams()
    if not (-1.0 <= w <= 1.0):
        raise ValueError(f"weight must lie in [-1, 1], got {w}")
    return SynapseState(
        exc=MemristorState(chi=(1.0 + w) / 2.0, params=params),
        inh=MemristorState(chi=(1.0 - w) / 2.0, params=params),
        i_s=i_s,
    )


def weight_of(s: SynapseState) -> float:
    """Signed weight: difference of the two device states."""
    return s.exc.chi - s.inh.chi


def set_weight(s: SynapseState, w: float) -> SynapseState:
    """Place both devices at the complementary states realizing weight w exactly."""
    if not (-1.0 <= w <= 1.0):
        raise ValueError(f"weight must lie in [-1, 1], got {w}")
    return replace(
        s,
        exc=replace(s.exc, chi=(1.0 + w) / 2.0),
        inh=replace(s.inh, chi=(1.0 - w) / 2.0),
    )


def program_weight_delta(s: SynapseState, delta_w: float) -> SynapseState:
    """Shift the weight by delta_w through opposite-polarity programming pulses.

    The requested delta fixes the shared pulse duration; the excitatory and
    inhibitory devices receive mirrored super-threshold pulses so the weight
    moves by delta_w exactly, up to the hard state clamps at chi = 0 and 1.
    """
    if delta_w == 0.0:
        return s
    p = s.exc.params
    duration = abs(delta_w) / (2.0 * p.k_switch * PROGRAM_OVERDRIVE)
    v_set = p.v_tp + PROGRAM_OVERDRIVE
    v_reset = p.v_tn - PROGRAM_OVERDRIVE
    if delta_w > 0.0:
        exc = apply_program_pulse(s.exc, v_set, duration)
        inh = apply_program_pulse(s.inh, v_reset, duration)
    else:
        exc = apply_program_pulse(s.exc, v_reset, duration)
        inh = apply_program_pulse(s.inh, v_set, duration)
    return replace(s, exc=exc, inh=inh)


def injected_current(w: float, pre_rate: float, t_w: float, i_s: float) -> float:
    """Average current in A pushed into the post-synaptic membrane by one synapse.

    Each pre-synaptic spike gates a current w * i_s for its width t_w, so the
    time average is pre_rate * t_w * w * i_s; negative for inhibitory weights.
    """
    if pre_rate < 0.0:
        raise ValueError(f"pre_rate must be >= 0, got {pre_rate}")
    return pre_rate * t_w * w * i_s


def read_current(s: SynapseState, v_read: float) -> float:
    """Push-pull output current at a read voltage: excitatory minus inhibitory branch.

    The read voltage must stay strictly inside the switching window so reads
    never disturb device state.
    """
    p = s.exc.params
    if not (p.v_tn < v_read < p.v_tp):
        raise ValueError(f"read voltage {v_read} outside non-switching window ({p.v_tn}, {p.v_tp})")
    return device_current(s.exc, v_read) - device_current(s.inh, v_read)
