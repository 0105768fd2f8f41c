from gridhom.signs.assignment import (
    GaugedSignAssignment,
    SignAssignment,
    TableSignAssignment,
    random_gauge,
    sign_of,
    solve_sign_assignment,
)
from gridhom.signs.spin import SpinElement, spin_mul, transposition_lift
from gridhom.signs.verify import verify_sign_axioms

__all__ = [
    "GaugedSignAssignment",
    "SignAssignment",
    "SpinElement",
    "TableSignAssignment",
    "random_gauge",
    "sign_of",
    "solve_sign_assignment",
    "spin_mul",
    "transposition_lift",
    "verify_sign_axioms",
]
