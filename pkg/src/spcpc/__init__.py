"""Single parity-check product codes with SC, Elias and ML erasure decoding."""

__version__ = "0.1.0"

from ._jit import get_backend, set_backend
from .code import ProductCode
from .sc import ERASED, local_spc_output, sc_decode, sc_decode_erasure, sc_decode_ternary
from .elias import elias_decode, elias_decode_erasure, elias_decode_ternary, elias_local_output
from .bec_exact import ExactCurve, exact_block_error, ml_erasure_decode, per_bit_exact_erasure
from .analysis import (
    DeProfile,
    MiProfile,
    de_profile,
    mi_evolution,
    mi_loss,
    spc_erasure_step,
    spc_mi_step,
    tub_awgn,
    tub_bec,
    worst_bit_recursion,
)
from .sim import ChannelParam, SimPoint, channel_transmit, run_curve

__all__ = [
    "ERASED", "ProductCode", "get_backend", "set_backend",
    "local_spc_output", "sc_decode", "sc_decode_erasure", "sc_decode_ternary",
    "elias_local_output", "elias_decode", "elias_decode_erasure", "elias_decode_ternary",
    "ExactCurve", "exact_block_error", "ml_erasure_decode", "per_bit_exact_erasure",
    "DeProfile", "MiProfile", "de_profile", "mi_evolution", "mi_loss", "spc_erasure_step",
    "spc_mi_step", "tub_awgn", "tub_bec", "worst_bit_recursion",
    "ChannelParam", "SimPoint", "channel_transmit", "run_curve",
]
