"""Epsilon-stable quotients: wall structure, tautological classes and localization.

Most users need only a handful of entry points::

    from epsquot import walls, is_epsilon_stable, canonical_form, assemble_invariant
"""

from __future__ import annotations

from .arith import MultiPoly, RationalFunction, rat_arith, rf_arith, rf_equal
from .errors import ConsistencyError, ExprParseError, SizeLimitError, UnsupportedScopeError
from .exprparse import format_expr, parse_expr
from .hassett import (
    TautExpr,
    WeightedConfig,
    WeightedMarking,
    canonical_form,
    hassett_dim,
    is_weighted_stable,
    m11_constants,
    psi_integral_genus0,
    pullback_contraction,
    weights_amd,
)
from .invariants import (
    conifold_invariant,
    f_epsilon_conifold,
    gv_series,
    invariant,
    local_p2_11,
    quintic_g0,
    wall_crossing_report,
)
from .localization import (
    FixedGraph,
    TwistSpec,
    assemble_invariant,
    edge_contribution,
    enumerate_fixed_graphs,
    geometry,
    vertex_contribution,
)
from .quotients import (
    INF,
    CombQuotient,
    Component,
    WallSet,
    chamber_index,
    contract,
    embedding_h0,
    enumerate_quotients,
    genus0_dim,
    is_epsilon_stable,
    is_mop_stable,
    plucker,
    vdim,
    walls,
)
from .series import LaurentSeries, series_expand_sin_inverse_sq

__all__ = [name for name in dir() if not name.startswith("_") and name != "annotations"]
