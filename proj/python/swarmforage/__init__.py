from ._core import (
    ConfigError,
    Controller,
    DecayForm,
    DecodeError,
    EncodeError,
    Packet,
    RunMetrics,
    decode,
    decode_hex,
    dequantize_pheromone,
    encode,
    performance,
    pheromone_ceiling,
    quantize_pheromone,
    run_simulation,
    run_suite,
)

__all__ = [
    "ConfigError",
    "Controller",
    "DecayForm",
    "DecodeError",
    "EncodeError",
    "Packet",
    "RunMetrics",
    "decode",
    "decode_hex",
    "dequantize_pheromone",
    "encode",
    "performance",
    "pheromone_ceiling",
    "quantize_pheromone",
    "run_simulation",
    "run_suite",
]
