"""Compilers from Turing machines and orthogonal-vector instances to factored graphs."""
from .common import CompiledInstance, load_instance, read_query
from .kov import KOVInstance, compile_kov_reach, format_kov, parse_kov, random_kov, solve_kov_brute
from .ntm import (NTMSpec, compile_ntm_reach, decode_configuration, format_ntm, parse_ntm,
                  simulate_ntm_config_graph, with_cleanup)
from .tm import (ConsistencyTable, ExecutionTrace, TMSpec, consistency, format_tm, parse_tm,
                 simulate_tm, validate_tm_convention)
from .tm_lfmis import build_factored_path, compile_tm_lfmis, grid_doc
