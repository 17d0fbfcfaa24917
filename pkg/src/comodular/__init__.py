"""Exact-arithmetic toolkit for discrete Choquet/Sugeno-style aggregation.

Capacities and their relatives live in :mod:`comodular.setfunc`, point
arithmetic in :mod:`comodular.comono`, the integral evaluators in
:mod:`comodular.integrals`, grid-based axiom auditing in
:mod:`comodular.axioms`, and canonical decompositions plus capacity and
transform recovery in :mod:`comodular.decompose`.
"""

from .axioms import (
    AuditResult,
    AxiomReport,
    Grid,
    GridSpec,
    audit,
    check,
    comonotonic_pairs,
    grid_points,
    replay_witness,
    spot_check,
)
from .comono import (
    Point,
    SortedView,
    bracket,
    horizontal_split,
    indicator,
    is_comonotonic,
    median_clamp,
    meet_join,
    sorted_view,
    split_parts,
)
from .decompose import (
    FitRefusal,
    NormalForm,
    QuasiChoquetFit,
    QuasiSugenoForm,
    SeparationForm,
    build_normal_form,
    build_separation,
    chain_eval_normal_form,
    eval_normal_form,
    eval_separation,
    factorize_quasi_sugeno,
    fit_quasi_choquet,
    fit_signed_choquet,
    fit_symmetric_choquet,
)
from .errors import ComodularError
from .integrals import (
    black_box,
    choquet,
    choquet_via_dual,
    quasi_choquet,
    quasi_sugeno,
    shilkret,
    sugeno,
    sugeno_normal_form,
    symmetric_choquet,
    symmetric_quasi_choquet,
)
from .setfunc import (
    Interval,
    SetFunction,
    Verdict,
    dump_set_function,
    load_set_function,
    new_set_function,
    validate,
)
from .transforms import TransformFn, identity, named_transform, piecewise_linear

__version__ = "0.1.0"

__all__ = [
    "AuditResult",
    "AxiomReport",
    "ComodularError",
    "FitRefusal",
    "Grid",
    "GridSpec",
    "Interval",
    "NormalForm",
    "Point",
    "QuasiChoquetFit",
    "QuasiSugenoForm",
    "SeparationForm",
    "SetFunction",
    "SortedView",
    "TransformFn",
    "Verdict",
    "audit",
    "black_box",
    "bracket",
    "build_normal_form",
    "build_separation",
    "chain_eval_normal_form",
    "check",
    "choquet",
    "choquet_via_dual",
    "comonotonic_pairs",
    "dump_set_function",
    "eval_normal_form",
    "eval_separation",
    "factorize_quasi_sugeno",
    "fit_quasi_choquet",
    "fit_signed_choquet",
    "fit_symmetric_choquet",
    "grid_points",
    "horizontal_split",
    "identity",
    "indicator",
    "is_comonotonic",
    "load_set_function",
    "median_clamp",
    "meet_join",
    "named_transform",
    "new_set_function",
    "piecewise_linear",
    "quasi_choquet",
    "quasi_sugeno",
    "replay_witness",
    "shilkret",
    "sorted_view",
    "split_parts",
    "spot_check",
    "sugeno",
    "sugeno_normal_form",
    "symmetric_choquet",
    "symmetric_quasi_choquet",
    "validate",
]
