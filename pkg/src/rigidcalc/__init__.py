"""rigidcalc: exact computation with rigid local systems on the punctured line.

The library works over cyclotomic fields with exact rational coefficients.
Local systems are monodromy tuples of invertible matrices; the package
provides Jordan-type local data, rigidity and irreducibility certification,
rank-one twists, middle convolution with the recursive family it generates,
hypergeometric tuples, Katz rank reduction, and Weil-number purity checks.
"""

from .convolution import (
    RankOneData,
    ReductionStep,
    ReductionTrace,
    build_F,
    katz_reduce,
    katz_reduce_step,
    middle_convolution,
    rank_one_system,
    tensor_rank_one,
)
from .cyclotomic import CycNumber, cyclotomic_polynomial, euler_phi
from .errors import RigidCalcError
from .hypergeometric import (
    MultiplicityFunction,
    from_multiplicity_function,
    hypergeometric_tuple,
)
from .linalg import ExactMatrix
from .monodromy import (
    INFINITY,
    JordanType,
    MonodromyTuple,
    Puncture,
    RegularityCertificate,
    centralizer_dim,
    certify_regular,
    is_absolutely_irreducible,
    is_quasi_unipotent,
    is_somewhere_maximal,
    jordan_type,
    make_tuple,
    rigidity_index,
)
from .purity import (
    HodgeMultiset,
    WeilPolynomial,
    WeilVerdict,
    functional_equation_check,
    hodge_conjugate_dual,
    hodge_is_regular,
    magnitude_check,
    weil_check,
)
from .table1 import Table1Report, Table1Row, expected_jordan_types, run_table1

__version__ = "0.1.0"

__all__ = [
    "CycNumber",
    "ExactMatrix",
    "HodgeMultiset",
    "INFINITY",
    "JordanType",
    "MonodromyTuple",
    "MultiplicityFunction",
    "Puncture",
    "RankOneData",
    "ReductionStep",
    "ReductionTrace",
    "RegularityCertificate",
    "RigidCalcError",
    "Table1Report",
    "Table1Row",
    "WeilPolynomial",
    "WeilVerdict",
    "build_F",
    "centralizer_dim",
    "certify_regular",
    "cyclotomic_polynomial",
    "euler_phi",
    "expected_jordan_types",
    "from_multiplicity_function",
    "functional_equation_check",
    "hodge_conjugate_dual",
    "hodge_is_regular",
    "hypergeometric_tuple",
    "is_absolutely_irreducible",
    "is_quasi_unipotent",
    "is_somewhere_maximal",
    "jordan_type",
    "katz_reduce",
    "katz_reduce_step",
    "magnitude_check",
    "make_tuple",
    "middle_convolution",
    "rank_one_system",
    "rigidity_index",
    "run_table1",
    "tensor_rank_one",
    "weil_check",
]
