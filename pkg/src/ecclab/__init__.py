"""Error-correcting codes over finite fields, local decoders, PIR and boolean Fourier learning.

Submodules: ``galois`` (field and polynomial arithmetic), ``codes`` (shared
abstractions, channels, bounds), ``reed_solomon``, ``hadamard``, ``polycode``,
``concat_gv``, ``pir``, ``fourier``, ``hardcore`` and the ``cli`` driver.
"""
from .codes import BSC, Adversarial, Code, CodeParams, DecodingError, child_rng, transmit
from .concat_gv import ConcatCode, gv_sample
from .fourier import BooleanFunction, fourier_transform, km_learn_heavy
from .galois import GF
from .hadamard import BitOracle, HadamardCode, gl_list_decode
from .hardcore import EXP, RSA, hardcore_invert, mult_code_list_decode_bf
from .pir import pir_from_smooth_decoder
from .polycode import MultilinearCode, PolyCodeConfig
from .reed_solomon import RSCode, bw_decode, sudan_list_decode, sudan_list_decode_weighted

__version__ = "0.1.0"

__all__ = [
    "BSC",
    "EXP",
    "GF",
    "RSA",
    "Adversarial",
    "BitOracle",
    "BooleanFunction",
    "Code",
    "CodeParams",
    "ConcatCode",
    "DecodingError",
    "HadamardCode",
    "MultilinearCode",
    "PolyCodeConfig",
    "RSCode",
    "bw_decode",
    "child_rng",
    "fourier_transform",
    "gl_list_decode",
    "gv_sample",
    "hardcore_invert",
    "km_learn_heavy",
    "mult_code_list_decode_bf",
    "pir_from_smooth_decoder",
    "sudan_list_decode",
    "sudan_list_decode_weighted",
    "transmit",
]
