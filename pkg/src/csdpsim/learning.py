"""Trace-based CSDP training: layer-local modulatory error scaling Hebbian trace products."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

import numpy as np

from .network import NEGATIVE, POSITIVE, Example, Network, forward_pass
from .synapse import program_weight_delta, set_weight, weight_of


@dataclass(frozen=True)
class TrainConfig:
    alpha: float = 0.05
    epochs: int = 300
    init_weight_range: float = 0.8
    use_min_approx: bool = True
    seed: int = 0
    gamma_pos: float = 1.0
    gamma_neg: float = 1.0
    # Bypass the memristor pulse model and write weights directly (A/B comparison mode).
    direct_update: bool = False

    def __post_init__(self):
        if self.alpha <= 0.0:
            raise ValueError(f"alpha must be > 0, got {self.alpha}")
        if self.epochs < 0:
            raise ValueError(f"epochs must be >= 0, got {self.epochs}")
        if not (0.0 < self.init_weight_range <= 1.0):
            raise ValueError(f"init_weight_range must lie in (0, 1], got {self.init_weight_range}")
        if not (0.0 <= self.gamma_pos <= 1.0 and 0.0 <= self.gamma_neg <= 1.0):
            raise ValueError("gamma_pos and gamma_neg must lie in [0, 1]")


@dataclass(frozen=True)
class EpochReport:
    """Per-layer squared-error of the goodness readout and mean absolute weight change."""

    mse: tuple[float, ...]
    mean_abs_delta: tuple[float, ...]


def modulator_error(z_p: float, y: float) -> float:
    """Layer-local modulatory error: goodness trace minus the phase target."""
    if not (0.0 <= z_p <= 1.0):
        raise ValueError(f"z_p must lie in [0, 1], got {z_p}")
    if y not in (0.0, 1.0):
        raise ValueError(f"y must be 0 or 1, got {y}")
    return z_p - y


def csdp_delta(eps: float, z_post: float, z_pre: float, alpha: float,
               use_min_approx: bool = True) -> float:
    """Weight change from the modulatory error and the pre/post trace pair.

    The hardware form replaces the trace product with the minimum of the three
    magnitudes (an AND of the trace pulses); the exact form keeps the product.
    Both vanish when any factor is zero and always move against sgn(eps).
    """
    for name, z in (("z_post", z_post), ("z_pre", z_pre)):
        if not (0.0 <= z <= 1.0):
            raise ValueError(f"{name} must lie in [0, 1], got {z}")
    if use_min_approx:
        if eps == 0.0 or z_post == 0.0 or z_pre == 0.0:
            return 0.0
        return -alpha * math.copysign(1.0, eps) * min(abs(eps), z_post, z_pre)
    return -alpha * eps * z_post * z_pre


def generate_negatives(positives: Sequence[Example],
                       label_space: Iterable[tuple[int, ...]]) -> list[Example]:
    """One negative example per incorrect label for every positive example."""
    labels = list(label_space)
    negatives = []
    for e in positives:
        if e.phase != POSITIVE:
            raise ValueError("generate_negatives expects positive examples")
        for lbl in labels:
            if tuple(lbl) != e.label_bits:
                negatives.append(Example(e.input_bits, tuple(lbl), NEGATIVE))
    return negatives


def train_epoch(net: Network, dataset: Sequence[Example], tc: TrainConfig,
                rng: Optional[np.random.Generator] = None) -> EpochReport:
    """One pass over the dataset in seed-shuffled order, programming every synapse.

    Each example is evaluated once; every layer then applies its own local
    update from that layer's goodness error and the surrounding traces, with
    no cross-layer error propagation. Reported MSE uses the goodness value
    seen at presentation time.
    """
    if not dataset:
        raise ValueError("dataset must not be empty")
    if rng is None:
        rng = np.random.default_rng(tc.seed)

    n_layers = len(net.layers)
    sq_err = [0.0] * n_layers
    abs_delta = [0.0] * n_layers
    n_updates = [0] * n_layers

    order = rng.permutation(len(dataset))
    for idx in order:
        e = dataset[int(idx)]
        fwd = forward_pass(net, e)
        y = e.target
        gamma = tc.gamma_pos if e.phase == POSITIVE else tc.gamma_neg
        for li, layer in enumerate(net.layers):
            eps = modulator_error(fwd.goodness[li], y)
            sq_err[li] += eps * eps
            z_posts = fwd.traces[li + 1]
            z_pres = fwd.traces[li]
            for pi, row in enumerate(layer.synapses):
                z_post = z_posts[pi]
                for pj, syn in enumerate(row):
                    d = gamma * csdp_delta(eps, z_post, z_pres[pj], tc.alpha, tc.use_min_approx)
                    if d != 0.0:
                        w_before = weight_of(syn)
                        if tc.direct_update:
                            new_syn = set_weight(syn, min(1.0, max(-1.0, w_before + d)))
                        else:
                            new_syn = program_weight_delta(syn, d)
                        row[pj] = new_syn
                        abs_delta[li] += abs(weight_of(new_syn) - w_before)
                    n_updates[li] += 1

    n = len(dataset)
    return EpochReport(
        mse=tuple(s / n for s in sq_err),
        mean_abs_delta=tuple(
            (a / u if u else 0.0) for a, u in zip(abs_delta, n_updates)
        ),
    )


def train(net: Network, dataset: Sequence[Example], tc: TrainConfig) -> list[EpochReport]:
    """Run tc.epochs training epochs, reshuffling from one seeded generator."""
    rng = np.random.default_rng(tc.seed)
    return [train_epoch(net, dataset, tc, rng) for _ in range(tc.epochs)]
