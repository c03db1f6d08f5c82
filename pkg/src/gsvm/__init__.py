"""Hard-margin SVM, the generalized (matrix-valued) SVM, and projection
methods for variational inequalities over the nonnegative orthant."""

__version__ = "0.1.0"

from .core import (
    DataSet,
    Hyperplane,
    LabeledPoint,
    MarginReport,
    classify,
    decision_value,
    functional_margin,
    margin_report,
)
from .datasets import FamilySpec, GoldenCase, fixture, gen_family
from .estimators import GSVMClassifier, HardMarginSVC
from .exceptions import GsvmError, InfeasibleError
from .generalized import (
    GsvmMargin,
    GsvmModel,
    control_apply,
    g_gradient,
    g_value,
    gsvm_margin,
    gsvm_objective_min,
    gsvm_row_solution,
    gsvm_train,
)
from .operators import (
    PropertyReport,
    affine_operator,
    check_lipschitz,
    check_monotone,
    check_strongly_monotone,
    class_hierarchy_check,
    norm_gradient_operator,
)
from .svm import SvmSolution, svm_oracle, svm_train
from .vi import (
    OperatorHandle,
    SolveReport,
    SolverConfig,
    check_stationary,
    contraction_factor,
    fixed_point_solve,
    project_nonneg,
    projection_characterization_check,
    uniqueness_probe,
    verify_vi_inequality,
    vi_residual,
)

__all__ = [
    "DataSet",
    "Hyperplane",
    "LabeledPoint",
    "MarginReport",
    "classify",
    "decision_value",
    "functional_margin",
    "margin_report",
    "FamilySpec",
    "GoldenCase",
    "fixture",
    "gen_family",
    "GSVMClassifier",
    "HardMarginSVC",
    "GsvmError",
    "InfeasibleError",
    "GsvmMargin",
    "GsvmModel",
    "control_apply",
    "g_gradient",
    "g_value",
    "gsvm_margin",
    "gsvm_objective_min",
    "gsvm_row_solution",
    "gsvm_train",
    "PropertyReport",
    "affine_operator",
    "check_lipschitz",
    "check_monotone",
    "check_strongly_monotone",
    "class_hierarchy_check",
    "norm_gradient_operator",
    "SvmSolution",
    "svm_oracle",
    "svm_train",
    "OperatorHandle",
    "SolveReport",
    "SolverConfig",
    "check_stationary",
    "contraction_factor",
    "fixed_point_solve",
    "project_nonneg",
    "projection_characterization_check",
    "uniqueness_probe",
    "verify_vi_inequality",
    "vi_residual",
]
