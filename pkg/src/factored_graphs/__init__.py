"""Factored graphs: big graphs written as product/union formulas over small graphs."""
from .core import (CART, TENSOR, UNION, BaseGraph, Complexity, Formula, FormulaDoc, Leaf,
                   OpNode, cart, complexity, components, contains, dimension_of, format_tuple,
                   make_op, operation_count, parse_tuple, tensor, union, vertex_key, vertex_order)
from .dsl import format_doc, format_formula, parse
from .errors import FgError, NotAVertexError, SizeCapError, ValidationError
from .explicit import ExplicitGraph, materialize, parse_edge_list, to_dot, to_edge_list
from .implicit import adjacent, enumerate_vertices, out_neighbors
