"""Behavioral simulator of a memristor spiking network trained with trace-based CSDP."""

from .config import ConfigError, ExperimentConfig, TaskSpec, default_config, load_config, parse_config
from .device import MemristorParams, MemristorState, apply_program_pulse, conductance, device_current
from .harness import (
    ExperimentReport,
    argmax_accuracy,
    evaluate_combinations,
    infer_label,
    run_experiment,
    write_report,
)
from .learning import (
    EpochReport,
    TrainConfig,
    csdp_delta,
    generate_negatives,
    modulator_error,
    train,
    train_epoch,
)
from .network import (
    Example,
    ForwardResult,
    Network,
    NetworkConfig,
    encode_example,
    forward_pass,
    layer_forward,
)
from .neuron import NeuronParams, SpikeTrain, integrate_oracle, max_rate, oracle_rate, spike_count, spike_rate
from .synapse import (
    SynapseState,
    injected_current,
    program_weight_delta,
    read_current,
    set_weight,
    synapse_from_weight,
    weight_of,
)
from .trace import TraceParams, TraceState, accumulate_window, normalized_value, pulse_width, required_charge_current

__version__ = "0.1.0"
