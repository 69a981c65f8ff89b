"""Einstein metrics on SO(n) from the three-block decomposition SO(k1) x SO(k2) x SO(k3)."""

from .einstein_solver import EinsteinSolution, SolveReport, enumerate_metrics, solve, solve_report
from .liestruct import TripleProducts, build_basis, ricci_general, triple_products
from .model import GroupSpec, MetricParams, RicciComponents
from .ricci import classify_reductive, einstein_residual, ricci_closed

__all__ = [
    "EinsteinSolution", "GroupSpec", "MetricParams", "RicciComponents", "SolveReport",
    "TripleProducts", "build_basis", "classify_reductive", "einstein_residual",
    "enumerate_metrics", "ricci_closed", "ricci_general", "solve", "solve_report",
    "triple_products",
]
