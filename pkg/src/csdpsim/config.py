"""Flat key = value experiment configuration: parsing, defaults, canonical echo."""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace

from .device import MemristorParams
from .learning import TrainConfig
from .network import NetworkConfig
from .neuron import NeuronParams
from .trace import TraceParams


class ConfigError(Exception):
    """Malformed configuration: message carries the offending key and line."""


# Built-in 2-input truth tables, output bit per input combination in binary order.
NAMED_TASKS = {
    "xor": (0, 1, 1, 0),
    "xnor": (1, 0, 0, 1),
    "and": (0, 0, 0, 1),
    "or": (0, 1, 1, 1),
    "nand": (1, 1, 1, 0),
    "nor": (1, 0, 0, 0),
}


@dataclass(frozen=True)
class TaskSpec:
    """Truth table defining positives: entry k is the label for input combination k."""

    n_input_bits: int = 2
    n_label_bits: int = 1
    truth_table: tuple[int, ...] = NAMED_TASKS["xor"]

    def __post_init__(self):
        if self.n_input_bits < 1 or self.n_label_bits < 1:
            raise ValueError("n_input_bits and n_label_bits must be >= 1")
        if len(self.truth_table) != 2**self.n_input_bits:
            raise ValueError(
                f"truth table needs {2**self.n_input_bits} entries, got {len(self.truth_table)}"
            )
        if any(not (0 <= t < 2**self.n_label_bits) for t in self.truth_table):
            raise ValueError(f"truth table labels must fit in {self.n_label_bits} bit(s)")


@dataclass(frozen=True)
class ExperimentConfig:
    network: NetworkConfig = field(default_factory=NetworkConfig)
    train: TrainConfig = field(default_factory=TrainConfig)
    task: TaskSpec = field(default_factory=TaskSpec)

    def __post_init__(self):
        expected = self.task.n_input_bits + self.task.n_label_bits
        if self.network.layer_sizes[0] != expected:
            raise ValueError(
                f"layer_sizes[0]={self.network.layer_sizes[0]} must equal "
                f"input bits + label bits = {expected}"
            )
        if self.network.n_label_bits != self.task.n_label_bits:
            raise ValueError("network n_label_bits must match the task label width")


def default_config() -> ExperimentConfig:
    return ExperimentConfig()


def with_seed(cfg: ExperimentConfig, seed: int) -> ExperimentConfig:
    """Override both the weight-init seed and the shuffle seed."""
    return replace(
        cfg,
        network=replace(cfg.network, seed=seed),
        train=replace(cfg.train, seed=seed),
    )


def _parse_float(text: str) -> float:
    v = float(text)
    if math.isnan(v):
        raise ValueError("nan is not a valid value")
    return v


def _parse_int(text: str) -> int:
    return int(text, 10)


def _parse_bool(text: str) -> bool:
    t = text.lower()
    if t in ("true", "1", "yes"):
        return True
    if t in ("false", "0", "no"):
        return False
    raise ValueError(f"expected a boolean, got {text!r}")


def _parse_int_list(text: str) -> tuple[int, ...]:
    return tuple(int(part.strip(), 10) for part in text.split(","))


def _parse_truth_table(text: str) -> tuple[int, ...]:
    if "," in text:
        return _parse_int_list(text)
    return tuple(int(ch, 10) for ch in text.strip())


# key -> (group, field, parser)
_KEYS = {
    # memristor device
    "g_on": ("device", "g_on", _parse_float),
    "g_off": ("device", "g_off", _parse_float),
    "v_tp": ("device", "v_tp", _parse_float),
    "v_tn": ("device", "v_tn", _parse_float),
    "xi_pos": ("device", "xi_pos", _parse_float),
    "xi_neg": ("device", "xi_neg", _parse_float),
    "k_switch": ("device", "k_switch", _parse_float),
    # LIF neuron
    "phi": ("neuron", "phi", _parse_float),
    "c_m": ("neuron", "c_m", _parse_float),
    "i_leak": ("neuron", "i_leak", _parse_float),
    "t_r": ("neuron", "t_r", _parse_float),
    "t_w": ("neuron", "t_w", _parse_float),
    # trace circuit
    "c_tr": ("trace", "c_tr", _parse_float),
    "i_charge": ("trace", "i_charge", _parse_float),
    "i_discharge": ("trace", "i_discharge", _parse_float),
    "v_buf": ("trace", "v_buf", _parse_float),
    "v_dd": ("trace", "v_dd", _parse_float),
    "window": ("trace", "window", _parse_float),
    "tau_z": ("trace", "tau_z", _parse_float),
    # network
    "layer_sizes": ("network", "layer_sizes", _parse_int_list),
    "i_hi": ("network", "i_hi", _parse_float),
    "i_lo": ("network", "i_lo", _parse_float),
    "i_s": ("network", "i_s", _parse_float),
    "goodness_weight": ("network", "goodness_weight", _parse_float),
    "seed": ("seed", "seed", _parse_int),
    # training
    "alpha": ("train", "alpha", _parse_float),
    "epochs": ("train", "epochs", _parse_int),
    "init_weight_range": ("train", "init_weight_range", _parse_float),
    "use_min_approx": ("train", "use_min_approx", _parse_bool),
    "gamma_pos": ("train", "gamma_pos", _parse_float),
    "gamma_neg": ("train", "gamma_neg", _parse_float),
    "direct_update": ("train", "direct_update", _parse_bool),
    # task
    "task": ("task", "task", str),
    "truth_table": ("task", "truth_table", _parse_truth_table),
    "n_input_bits": ("task", "n_input_bits", _parse_int),
    "n_label_bits": ("task", "n_label_bits", _parse_int),
}


def parse_config(text: str, source: str = "<config>") -> ExperimentConfig:
    """Parse `key = value` lines (# comments, blank lines allowed) into a config."""
    groups: dict[str, dict] = {"device": {}, "neuron": {}, "trace": {},
                               "network": {}, "train": {}, "task": {}, "seed": {}}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"{source}:{lineno}: expected 'key = value', got {raw.strip()!r}")
        key, _, value = line.partition("=")
        key = key.strip()
        value = value.strip()
        if key not in _KEYS:
            raise ConfigError(f"{source}:{lineno}: unknown key {key!r}")
        group, fieldname, parse = _KEYS[key]
        try:
            groups[group][fieldname] = parse(value)
        except ValueError as exc:
            raise ConfigError(f"{source}:{lineno}: bad value for key {key!r}: {exc}") from exc

    task_kwargs = dict(groups["task"])
    table = None
    if "task" in task_kwargs:
        name = task_kwargs.pop("task").lower()
        if name not in NAMED_TASKS:
            raise ConfigError(f"{source}: unknown task {name!r} (choose from {sorted(NAMED_TASKS)})")
        table = NAMED_TASKS[name]
    if "truth_table" in task_kwargs:
        table = task_kwargs.pop("truth_table")
    if table is not None:
        task_kwargs["truth_table"] = table

    try:
        task = TaskSpec(**task_kwargs)
        network = NetworkConfig(
            device=MemristorParams(**groups["device"]),
            neuron=NeuronParams(**groups["neuron"]),
            trace=TraceParams(**groups["trace"]),
            n_label_bits=task.n_label_bits,
            seed=groups["seed"].get("seed", 0),
            **groups["network"],
        )
        train = TrainConfig(seed=groups["seed"].get("seed", 0), **groups["train"])
        return ExperimentConfig(network=network, train=train, task=task)
    except (ValueError, TypeError) as exc:
        raise ConfigError(f"{source}: {exc}") from exc


def load_config(path: str) -> ExperimentConfig:
    """Read and parse a configuration file; I/O failures carry the path."""
    try:
        with open(path, "r", encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise ConfigError(f"cannot read config {path!r}: {exc.strerror or exc}") from exc
    return parse_config(text, source=path)


def _fmt(value) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, tuple):
        return ",".join(str(v) for v in value)
    if isinstance(value, float):
        return repr(value)
    return str(value)


def config_text(cfg: ExperimentConfig) -> str:
    """Canonical echo of every configuration key; parses back to the same config."""
    d, n, t = cfg.network.device, cfg.network.neuron, cfg.network.trace
    net, tr, task = cfg.network, cfg.train, cfg.task
    lines = [
        "# memristor device",
        f"g_on = {_fmt(d.g_on)}",
        f"g_off = {_fmt(d.g_off)}",
        f"v_tp = {_fmt(d.v_tp)}",
        f"v_tn = {_fmt(d.v_tn)}",
        f"xi_pos = {_fmt(d.xi_pos)}",
        f"xi_neg = {_fmt(d.xi_neg)}",
        f"k_switch = {_fmt(d.k_switch)}",
        "# spiking neuron",
        f"phi = {_fmt(n.phi)}",
        f"c_m = {_fmt(n.c_m)}",
        f"i_leak = {_fmt(n.i_leak)}",
        f"t_r = {_fmt(n.t_r)}",
        f"t_w = {_fmt(n.t_w)}",
        "# trace circuit",
        f"c_tr = {_fmt(t.c_tr)}",
        f"i_charge = {_fmt(t.i_charge)}",
        f"i_discharge = {_fmt(t.i_discharge)}",
        f"v_buf = {_fmt(t.v_buf)}",
        f"v_dd = {_fmt(t.v_dd)}",
        f"window = {_fmt(t.window)}",
        f"tau_z = {_fmt(t.tau_z)}",
        "# network",
        f"layer_sizes = {_fmt(net.layer_sizes)}",
        f"i_hi = {_fmt(net.i_hi)}",
        f"i_lo = {_fmt(net.i_lo)}",
        f"i_s = {_fmt(net.i_s)}",
        f"goodness_weight = {_fmt(net.goodness_weight)}",
        f"seed = {_fmt(net.seed)}",
        "# training",
        f"alpha = {_fmt(tr.alpha)}",
        f"epochs = {_fmt(tr.epochs)}",
        f"init_weight_range = {_fmt(tr.init_weight_range)}",
        f"use_min_approx = {_fmt(tr.use_min_approx)}",
        f"gamma_pos = {_fmt(tr.gamma_pos)}",
        f"gamma_neg = {_fmt(tr.gamma_neg)}",
        f"direct_update = {_fmt(tr.direct_update)}",
        "# task",
        f"n_input_bits = {_fmt(task.n_input_bits)}",
        f"n_label_bits = {_fmt(task.n_label_bits)}",
        f"truth_table = {_fmt(task.truth_table)}",
    ]
    return "\n".join(lines) + "\n"
