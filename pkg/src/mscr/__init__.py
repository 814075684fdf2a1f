"""Scalar minimum-storage cooperative regenerating (MSCR) codes.

Product-matrix construction over prime fields with data reconstruction
from any ``k`` nodes and two-phase cooperative repair of ``t`` failures.
"""

from .field import FieldSpec, select_modulus
from .params import CodeParams, ParameterError, derive_params
from .pm_core import MessageMatrix, Shard, build_generator, encode_raw, pack_message
from .reconstruct import ReconstructionInput, decode_pair, reconstruct_message
from .repair import RepairError, RepairSession, cooperative_repair
from .systematic import decode_systematic, encode_systematic

__all__ = [
    "FieldSpec", "select_modulus", "CodeParams", "ParameterError", "derive_params",
    "MessageMatrix", "Shard", "build_generator", "encode_raw", "pack_message",
    "ReconstructionInput", "decode_pair", "reconstruct_message",
    "RepairError", "RepairSession", "cooperative_repair",
    "encode_systematic", "decode_systematic",
]

__version__ = "0.1.0"
