"""Linear-programming decoding of binary linear codes: decoders, pseudocodeword
analysis, decision-region maps, union bounds and FER simulation."""

from .bounds import BoundMode, SpectrumKind, WeightSpectrum, bound_curve, q_function, union_bound
from .channel import ChannelParams, hard_decision, llr_from_received, modulate, sigma_from_ebn0
from .codes import (
    BinaryMatrix,
    builtin_matrix,
    builtin_names,
    code_dimension,
    count_cycles,
    enumerate_codewords,
    load_matrix,
    min_hamming_distance,
    parse_alist,
    read_alist,
    write_alist,
)
from .cone import (
    GeneratorSpectrum,
    awgn_pseudoweight,
    effective_distance_sq,
    enumerate_generators,
    fundamental_polytope_vertices,
    in_fundamental_cone,
    minimal_generators,
    weight_spectrum,
)
from .decoders import BpConfig, BpResult, decode_bp, decode_ml
from .errors import LpDecodeError
from .lp import LinearProgram, LpSolution, Status, solve_lp
from .lpdecoder import LpDecodeResult, LpDecoder, ParityCut, Verdict, decode_lp, find_violated_cut
from .minpw import BoundedConePolytope, MinWeightResult, max_sum_squares, min_pseudoweight, multistart_estimate
from .regions import CutSpec, RegionClass, RegionMap, compose_received, map_regions
from .sim import FerPoint, run_fer

__version__ = "0.1.0"

__all__ = [
    "awgn_pseudoweight",
    "BinaryMatrix",
    "bound_curve",
    "BoundedConePolytope",
    "BoundMode",
    "BpConfig",
    "BpResult",
    "builtin_matrix",
    "builtin_names",
    "ChannelParams",
    "code_dimension",
    "compose_received",
    "count_cycles",
    "CutSpec",
    "decode_bp",
    "decode_lp",
    "decode_ml",
    "effective_distance_sq",
    "enumerate_codewords",
    "enumerate_generators",
    "FerPoint",
    "find_violated_cut",
    "fundamental_polytope_vertices",
    "GeneratorSpectrum",
    "hard_decision",
    "in_fundamental_cone",
    "LinearProgram",
    "llr_from_received",
    "load_matrix",
    "LpDecodeError",
    "LpDecoder",
    "LpDecodeResult",
    "LpSolution",
    "map_regions",
    "max_sum_squares",
    "min_hamming_distance",
    "min_pseudoweight",
    "minimal_generators",
    "MinWeightResult",
    "modulate",
    "multistart_estimate",
    "ParityCut",
    "parse_alist",
    "q_function",
    "read_alist",
    "RegionClass",
    "RegionMap",
    "run_fer",
    "sigma_from_ebn0",
    "solve_lp",
    "SpectrumKind",
    "Status",
    "union_bound",
    "Verdict",
    "weight_spectrum",
    "WeightSpectrum",
    "write_alist",
]
