"""Exact q-deformed quasisymmetric functions and the algebra of extended peaks."""

from .combinatorics import (
    IndexSet,
    count_extended_peak_sets,
    descent_set,
    enumerate_extended_peak_sets,
    extended_peak_statistic,
    is_extended_peak_set,
    peak_set,
    peak_set_of_subset,
)
from .linalg import ExactMatrix, build_B_direct, build_B_recursive, kernel_basis, rank
from .qsym import (
    QSymElement,
    eta,
    fundamental_L,
    L_in_eta_basis,
    monomial,
    quasi_shuffle_product,
    realize,
    universal_U,
)
from .scalars import CyclotomicNumber, QPolynomial, q_integer, rho

__version__ = "0.1.0"
