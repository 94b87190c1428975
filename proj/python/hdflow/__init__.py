"""Exact multiplication-by-p self-maps on P^1 over finite fields.

Thin wrapper over the compiled core. Nodes of P^1(F_{p^f}) are named by
their integer encoding sum(a_i p^i) as decimal strings, with "inf" for the
point at infinity; conjecture checks return JSON report strings.
"""

import json as _json

try:
    from ._hdflow import (
        HdflowError,
        check_commutativity,
        check_equ_main,
        check_symmetries,
        check_torsion,
        check_var,
        closed_form,
        constant_c,
        eval_self_map,
        factorization,
        graph_dot,
        graph_json,
        orbit,
        point_order,
        rational_map,
        xp_both,
    )
except ImportError:  # build tree: extension module sits beside the package
    from _hdflow import (
        HdflowError,
        check_commutativity,
        check_equ_main,
        check_symmetries,
        check_torsion,
        check_var,
        closed_form,
        constant_c,
        eval_self_map,
        factorization,
        graph_dot,
        graph_json,
        orbit,
        point_order,
        rational_map,
        xp_both,
    )

PAPER_F81_MODULUS = [2, 0, 1, 0, 1]


def report(text):
    """Parse a JSON report emitted by the check_* functions."""
    return _json.loads(text)


__all__ = [
    "HdflowError",
    "PAPER_F81_MODULUS",
    "check_commutativity",
    "check_equ_main",
    "check_symmetries",
    "check_torsion",
    "check_var",
    "closed_form",
    "constant_c",
    "eval_self_map",
    "factorization",
    "graph_dot",
    "graph_json",
    "orbit",
    "point_order",
    "rational_map",
    "report",
    "xp_both",
]
