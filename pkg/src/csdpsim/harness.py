"""Experiment driver: truth-table datasets, training, per-layer probabilities, reports."""

from __future__ import annotations

import os
from dataclasses import dataclass
from typing import Optional, Sequence, Union

from .config import ConfigError, ExperimentConfig, TaskSpec, config_text, load_config, with_seed
from .device import MemristorState
from .learning import EpochReport, generate_negatives, train
from .network import (
    NEGATIVE,
    POSITIVE,
    Example,
    LayerState,
    Network,
    forward_pass,
)
from .synapse import SynapseState, weight_of

MSE_CSV = "mse.csv"
PROBABILITIES_CSV = "probabilities.csv"
WEIGHTS_CSV = "weights.csv"
REPORT_TXT = "report.txt"


@dataclass(frozen=True)
class ComboProbability:
    """Per-layer goodness readout for one input/label combination."""

    input_bits: tuple[int, ...]
    label: int
    phase: str
    z_p: tuple[float, ...]


@dataclass(frozen=True)
class ExperimentReport:
    combos: tuple[ComboProbability, ...]
    layer_threshold_accuracy: tuple[float, ...]
    threshold_accuracy: float
    argmax_accuracy: float
    epochs: tuple[EpochReport, ...]
    config_echo: str


def label_to_bits(label: int, width: int) -> tuple[int, ...]:
    """Label integer to a fixed-width bit tuple, most significant bit first."""
    if not (0 <= label < 2**width):
        raise ValueError(f"label {label} does not fit in {width} bit(s)")
    return tuple((label >> (width - 1 - k)) & 1 for k in range(width))


def bits_to_label(bits: Sequence[int]) -> int:
    value = 0
    for b in bits:
        value = (value << 1) | (b & 1)
    return value


def build_positives(task: TaskSpec) -> list[Example]:
    """One positive example per input combination, labeled by the truth table."""
    positives = []
    for k in range(2**task.n_input_bits):
        in_bits = label_to_bits(k, task.n_input_bits)
        lbl_bits = label_to_bits(task.truth_table[k], task.n_label_bits)
        positives.append(Example(in_bits, lbl_bits, POSITIVE))
    return positives


def build_dataset(task: TaskSpec) -> list[Example]:
    """Positives plus one negative per incorrect label for each of them."""
    positives = build_positives(task)
    label_space = [label_to_bits(l, task.n_label_bits) for l in range(2**task.n_label_bits)]
    return positives + generate_negatives(positives, label_space)


def evaluate_combinations(net: Network, task: TaskSpec) -> tuple[ComboProbability, ...]:
    """Per-layer z_p for every input/label combination, inputs then labels ascending."""
    combos = []
    for k in range(2**task.n_input_bits):
        in_bits = label_to_bits(k, task.n_input_bits)
        for lbl in range(2**task.n_label_bits):
            phase = POSITIVE if lbl == task.truth_table[k] else NEGATIVE
            e = Example(in_bits, label_to_bits(lbl, task.n_label_bits), phase)
            fwd = forward_pass(net, e)
            combos.append(ComboProbability(in_bits, lbl, phase, fwd.goodness))
    return tuple(combos)


def threshold_accuracy(combos: Sequence[ComboProbability], layer: int) -> float:
    """Fraction of combinations separated at one layer: positive z_p > 0.5, negative < 0.5."""
    hits = sum(
        1 for c in combos
        if (c.z_p[layer] > 0.5) == (c.phase == POSITIVE) and c.z_p[layer] != 0.5
    )
    return hits / len(combos)


def infer_label(net: Network, input_bits: Sequence[int]) -> int:
    """Label whose appended bits maximize total goodness over all layers; ties pick the smallest."""
    width = net.cfg.n_label_bits
    best_label, best_score = 0, -1.0
    for lbl in range(2**width):
        e = Example(tuple(input_bits), label_to_bits(lbl, width), POSITIVE)
        score = sum(forward_pass(net, e).goodness)
        if score > best_score:
            best_label, best_score = lbl, score
    return best_label


def argmax_accuracy(net: Network, task: TaskSpec) -> float:
    """Fraction of inputs whose inferred label matches the truth table."""
    hits = 0
    for k in range(2**task.n_input_bits):
        if infer_label(net, label_to_bits(k, task.n_input_bits)) == task.truth_table[k]:
            hits += 1
    return hits / 2**task.n_input_bits


def run_experiment(
    config: Union[str, ExperimentConfig],
    seed: Optional[int] = None,
    out_dir: Optional[str] = None,
    net_out: Optional[list] = None,
) -> ExperimentReport:
    """Build, train and evaluate one experiment; optionally write all artifacts.

    `config` is a path or an already-parsed configuration; `seed` overrides
    both the weight-init and shuffle seeds. When `net_out` is given the
    trained network is appended to it.
    """
    cfg = load_config(config) if isinstance(config, str) else config
    if seed is not None:
        cfg = with_seed(cfg, seed)

    net = Network.random(cfg.network, cfg.train.init_weight_range)
    dataset = build_dataset(cfg.task)
    epochs = train(net, dataset, cfg.train)

    combos = evaluate_combinations(net, cfg.task)
    n_layers = len(net.layers)
    per_layer = tuple(threshold_accuracy(combos, li) for li in range(n_layers))
    report = ExperimentReport(
        combos=combos,
        layer_threshold_accuracy=per_layer,
        threshold_accuracy=per_layer[-1],
        argmax_accuracy=argmax_accuracy(net, cfg.task),
        epochs=tuple(epochs),
        config_echo=config_text(cfg),
    )
    if net_out is not None:
        net_out.append(net)
    if out_dir is not None:
        write_report(report, out_dir)
        export_weights(net, os.path.join(out_dir, WEIGHTS_CSV))
    return report


def evaluate_only(cfg: ExperimentConfig, weights_path: str) -> ExperimentReport:
    """Evaluate a stored weight snapshot without training."""
    net = network_from_weights(cfg, weights_path)
    combos = evaluate_combinations(net, cfg.task)
    per_layer = tuple(threshold_accuracy(combos, li) for li in range(len(net.layers)))
    return ExperimentReport(
        combos=combos,
        layer_threshold_accuracy=per_layer,
        threshold_accuracy=per_layer[-1],
        argmax_accuracy=argmax_accuracy(net, cfg.task),
        epochs=(),
        config_echo=config_text(cfg),
    )


def _write_text(path: str, text: str) -> None:
    try:
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    except OSError as exc:
        raise ConfigError(f"cannot write {path!r}: {exc.strerror or exc}") from exc


def write_report(report: ExperimentReport, out_dir: str) -> None:
    """Write mse.csv, probabilities.csv and report.txt; byte-identical for identical inputs."""
    try:
        os.makedirs(out_dir, exist_ok=True)
    except OSError as exc:
        raise ConfigError(f"cannot create output directory {out_dir!r}: {exc.strerror or exc}") from exc

    lines = ["epoch[-],layer[-],mse[-],mean_abs_delta[-]"]
    for ei, ep in enumerate(report.epochs):
        for li, (mse, mad) in enumerate(zip(ep.mse, ep.mean_abs_delta)):
            lines.append(f"{ei},{li + 1},{mse!r},{mad!r}")
    _write_text(os.path.join(out_dir, MSE_CSV), "\n".join(lines) + "\n")

    lines = ["input_bits[-],label[-],phase[-],layer[-],z_p[-]"]
    for c in report.combos:
        bits = "".join(str(b) for b in c.input_bits)
        for li, z in enumerate(c.z_p):
            lines.append(f"{bits},{c.label},{c.phase},{li + 1},{z!r}")
    _write_text(os.path.join(out_dir, PROBABILITIES_CSV), "\n".join(lines) + "\n")

    _write_text(os.path.join(out_dir, REPORT_TXT), _render_report(report))


def _render_report(report: ExperimentReport) -> str:
    n = len(report.combos)
    out = [
        "memristor CSDP network — experiment report",
        "==========================================",
        "",
        "[accuracy]",
        f"final-layer threshold accuracy: {report.threshold_accuracy!r} "
        f"({round(report.threshold_accuracy * n)}/{n} combinations)",
    ]
    for li, acc in enumerate(report.layer_threshold_accuracy):
        out.append(f"layer {li + 1} threshold accuracy: {acc!r}")
    out.append(f"argmax inference accuracy: {report.argmax_accuracy!r}")
    out.append("")
    out.append("[probabilities]  (z_p per layer)")
    for c in report.combos:
        bits = "".join(str(b) for b in c.input_bits)
        zs = "  ".join(f"layer{li + 1}={z!r}" for li, z in enumerate(c.z_p))
        tag = "+" if c.phase == POSITIVE else "-"
        out.append(f"input={bits} label={c.label} ({tag})  {zs}")
    out.append("")
    if report.epochs:
        first, last = report.epochs[0], report.epochs[-1]
        out.append(f"[training]  {len(report.epochs)} epochs")
        out.append("first-epoch mse: " + "  ".join(f"layer{li + 1}={m!r}" for li, m in enumerate(first.mse)))
        out.append("final-epoch mse: " + "  ".join(f"layer{li + 1}={m!r}" for li, m in enumerate(last.mse)))
    else:
        out.append("[training]  none (evaluation only)")
    out.append("")
    out.append("[config]")
    out.append(report.config_echo.rstrip("\n"))
    out.append("")
    return "\n".join(out)


def export_weights(net: Network, path: str) -> None:
    """Synapse snapshot as CSV rows of (layer, post, pre, chi_exc, chi_inh, w)."""
    lines = ["layer[-],post_index[-],pre_index[-],chi_exc[-],chi_inh[-],w[-]"]
    for li, layer in enumerate(net.layers):
        for pi, row in enumerate(layer.synapses):
            for pj, s in enumerate(row):
                lines.append(f"{li + 1},{pi},{pj},{s.exc.chi!r},{s.inh.chi!r},{weight_of(s)!r}")
    _write_text(path, "\n".join(lines) + "\n")


def network_from_weights(cfg: ExperimentConfig, path: str) -> Network:
    """Rebuild a network from an exported snapshot (exact chi values)."""
    try:
        with open(path, "r", encoding="utf-8") as fh:
            rows = fh.read().splitlines()
    except OSError as exc:
        raise ConfigError(f"cannot read weights {path!r}: {exc.strerror or exc}") from exc
    if not rows or not rows[0].startswith("layer"):
        raise ConfigError(f"{path}: missing weights header row")

    ncfg = cfg.network
    entries: dict[tuple[int, int, int], tuple[float, float]] = {}
    for lineno, row in enumerate(rows[1:], start=2):
        if not row.strip():
            continue
        parts = row.split(",")
        if len(parts) != 6:
            raise ConfigError(f"{path}:{lineno}: expected 6 columns, got {len(parts)}")
        try:
            li, pi, pj = int(parts[0]), int(parts[1]), int(parts[2])
            chi_exc, chi_inh = float(parts[3]), float(parts[4])
        except ValueError as exc:
            raise ConfigError(f"{path}:{lineno}: {exc}") from exc
        entries[(li, pi, pj)] = (chi_exc, chi_inh)

    layers = []
    for li in range(1, len(ncfg.layer_sizes)):
        n_post, n_pre = ncfg.layer_sizes[li], ncfg.layer_sizes[li - 1]
        rows_syn = []
        for pi in range(n_post):
            row_syn = []
            for pj in range(n_pre):
                key = (li, pi, pj)
                if key not in entries:
                    raise ConfigError(f"{path}: missing synapse entry layer={li} post={pi} pre={pj}")
                chi_exc, chi_inh = entries[key]
                row_syn.append(SynapseState(
                    exc=MemristorState(chi=chi_exc, params=ncfg.device),
                    inh=MemristorState(chi=chi_inh, params=ncfg.device),
                    i_s=ncfg.i_s,
                ))
            rows_syn.append(row_syn)
        layers.append(LayerState(synapses=rows_syn, goodness_weight=ncfg.goodness_weight))
    return Network(ncfg, layers)
