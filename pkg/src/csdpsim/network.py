"""Layered rate-coded network evaluation over one presentation window."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .device import MemristorParams
from .neuron import NeuronParams, spike_count, spike_rate
from .synapse import SynapseState, injected_current, synapse_from_weight, weight_of
from .trace import TraceParams, TraceState, accumulate_window, normalized_value

I_HI_DEFAULT = 12e-6            # A, input current encoding a logic 1
I_LO_DEFAULT = 6e-6             # A, input current encoding a logic 0 (nonzero so every
                                #    pattern, including all-zeros, drives the network)
GOODNESS_WEIGHT_DEFAULT = 1.0   # fixed positive weight from every layer neuron to its goodness neuron

POSITIVE = "positive"
NEGATIVE = "negative"


@dataclass(frozen=True)
class Example:
    """Input bits plus label bits, tagged with the contrastive phase."""

    input_bits: tuple[int, ...]
    label_bits: tuple[int, ...]
    phase: str

    def __post_init__(self):
        if self.phase not in (POSITIVE, NEGATIVE):
            raise ValueError(f"phase must be '{POSITIVE}' or '{NEGATIVE}', got {self.phase!r}")
        for b in self.input_bits + self.label_bits:
            if b not in (0, 1):
                raise ValueError(f"bits must be 0 or 1, got {b}")

    @property
    def target(self) -> float:
        """Contrastive target y: 1 for positive examples, 0 for negative."""
        return 1.0 if self.phase == POSITIVE else 0.0


@dataclass(frozen=True)
class NetworkConfig:
    layer_sizes: tuple[int, ...] = (3, 5, 3)
    n_label_bits: int = 1
    neuron: NeuronParams = field(default_factory=NeuronParams)
    trace: TraceParams = field(default_factory=TraceParams)
    device: MemristorParams = field(default_factory=MemristorParams)
    i_hi: float = I_HI_DEFAULT
    i_lo: float = I_LO_DEFAULT
    i_s: float = 15e-6
    goodness_weight: float = GOODNESS_WEIGHT_DEFAULT
    seed: int = 0

    def __post_init__(self):
        if len(self.layer_sizes) < 2:
            raise ValueError("need at least one hidden layer")
        if any(n < 1 for n in self.layer_sizes):
            raise ValueError(f"layer sizes must be >= 1, got {self.layer_sizes}")
        if not (0 < self.n_label_bits < self.layer_sizes[0]):
            raise ValueError(
                f"n_label_bits must leave room for input bits in layer_sizes[0]={self.layer_sizes[0]}"
            )
        if self.i_hi <= 0.0 or self.i_lo < 0.0:
            raise ValueError(f"require i_hi > 0 and i_lo >= 0, got i_hi={self.i_hi}, i_lo={self.i_lo}")
        if self.i_s <= 0.0 or self.goodness_weight <= 0.0:
            raise ValueError("i_s and goodness_weight must be > 0")

    @property
    def n_input_bits(self) -> int:
        return self.layer_sizes[0] - self.n_label_bits


@dataclass
class LayerState:
    """Synapse matrix (post x pre) plus the fixed goodness-neuron weight."""

    synapses: list[list[SynapseState]]
    goodness_weight: float


@dataclass(frozen=True)
class ForwardResult:
    """Per-presentation readouts; index 0 is the input layer, goodness is per hidden layer."""

    rates: tuple[tuple[float, ...], ...]
    counts: tuple[tuple[int, ...], ...]
    traces: tuple[tuple[float, ...], ...]
    goodness: tuple[float, ...]


class Network:
    """Feedforward spiking network owning one synapse matrix per hidden layer."""

    def __init__(self, cfg: NetworkConfig, layers: list[LayerState]):
        if len(layers) != len(cfg.layer_sizes) - 1:
            raise ValueError(f"expected {len(cfg.layer_sizes) - 1} layers, got {len(layers)}")
        for idx, layer in enumerate(layers):
            n_post, n_pre = cfg.layer_sizes[idx + 1], cfg.layer_sizes[idx]
            if len(layer.synapses) != n_post or any(len(row) != n_pre for row in layer.synapses):
                raise ValueError(f"layer {idx} synapse matrix does not match sizes {n_post}x{n_pre}")
        self.cfg = cfg
        self.layers = layers

    @classmethod
    def random(cls, cfg: NetworkConfig, init_weight_range: float = 0.8) -> "Network":
        """Seeded network with weights drawn uniformly from [-range, +range]."""
        if not (0.0 < init_weight_range <= 1.0):
            raise ValueError(f"init_weight_range must lie in (0, 1], got {init_weight_range}")
        rng = np.random.default_rng(cfg.seed)
        layers = []
        for idx in range(len(cfg.layer_sizes) - 1):
            n_post, n_pre = cfg.layer_sizes[idx + 1], cfg.layer_sizes[idx]
            rows = []
            for _ in range(n_post):
                ws = rng.uniform(-init_weight_range, init_weight_range, size=n_pre)
                rows.append([synapse_from_weight(float(w), cfg.device, cfg.i_s) for w in ws])
            layers.append(LayerState(synapses=rows, goodness_weight=cfg.goodness_weight))
        return cls(cfg, layers)

    def weights(self) -> list[np.ndarray]:
        """Current signed weights, one (post x pre) array per layer."""
        return [
            np.array([[weight_of(s) for s in row] for row in layer.synapses])
            for layer in self.layers
        ]


def encode_example(e: Example, cfg: NetworkConfig) -> tuple[float, ...]:
    """Map input and label bits to input-neuron source currents (input bits first)."""
    if len(e.input_bits) != cfg.n_input_bits or len(e.label_bits) != cfg.n_label_bits:
        raise ValueError(
            f"example widths ({len(e.input_bits)}+{len(e.label_bits)}) do not match "
            f"config ({cfg.n_input_bits}+{cfg.n_label_bits})"
        )
    return tuple(cfg.i_hi if b == 1 else cfg.i_lo for b in e.input_bits + e.label_bits)


def _layer_currents(layer: LayerState, pre_rates: tuple[float, ...], cfg: NetworkConfig) -> tuple[float, ...]:
    """Net synaptic input current per post neuron (leak handled by the rate model)."""
    t_w = cfg.neuron.t_w
    currents = []
    for row in layer.synapses:
        if len(row) != len(pre_rates):
            raise ValueError(f"expected {len(row)} pre rates, got {len(pre_rates)}")
        currents.append(
            sum(injected_current(weight_of(s), nu, t_w, s.i_s) for s, nu in zip(row, pre_rates))
        )
    return tuple(currents)


def layer_forward(layer: LayerState, pre_rates: tuple[float, ...], cfg: NetworkConfig) -> tuple[float, ...]:
    """Post-synaptic rates from pre-synaptic rates via average injected current.

    The leak is subtracted once, inside the rate model, so the summation here
    carries only the synaptic contributions.
    """
    return tuple(spike_rate(cfg.neuron, i) for i in _layer_currents(layer, pre_rates, cfg))


def _window_trace(cfg: NetworkConfig, count: int) -> float:
    """Normalized trace value after accumulating one window of `count` spikes."""
    state = accumulate_window(TraceState(), cfg.trace, count, cfg.neuron.t_w)
    return normalized_value(state, cfg.trace)


def forward_pass(net: Network, e: Example) -> ForwardResult:
    """Evaluate one presentation window: rates, counts, traces and per-layer goodness.

    All traces start from a hard reset. The goodness neuron of each layer sums
    that layer's rates through the fixed positive weight; its normalized trace
    is the layer's positive-input probability readout.
    """
    cfg = net.cfg
    window = cfg.trace.window
    t_w = cfg.neuron.t_w

    currents = encode_example(e, cfg)
    rates = [tuple(spike_rate(cfg.neuron, i) for i in currents)]
    counts = [tuple(spike_count(cfg.neuron, i, window) for i in currents)]
    traces = [tuple(_window_trace(cfg, c) for c in counts[0])]

    goodness = []
    for layer in net.layers:
        post_currents = _layer_currents(layer, rates[-1], cfg)
        post_rates = tuple(spike_rate(cfg.neuron, i) for i in post_currents)
        post_counts = tuple(spike_count(cfg.neuron, i, window) for i in post_currents)
        rates.append(post_rates)
        counts.append(post_counts)
        traces.append(tuple(_window_trace(cfg, c) for c in post_counts))

        i_good = sum(
            injected_current(layer.goodness_weight, nu, t_w, cfg.i_s) for nu in post_rates
        )
        good_count = spike_count(cfg.neuron, i_good, window)
        goodness.append(_window_trace(cfg, good_count))

    return ForwardResult(
        rates=tuple(rates),
        counts=tuple(counts),
        traces=tuple(traces),
        goodness=tuple(goodness),
    )
