"""Fidelity and concurrence of states against their antilinear conjugates."""

from .antilinear import (AntilinearOp, OperatorKind, adjoint, antilinear_product, apply, classify,
                         compress, conjugation_from_basis, hermitian_part, hill_wootters,
                         skew_from_basis, standard_skew_qubit, tensor)
from .entangle import (build_rank2_span, eof_2qubit, eof_lower_bound, f_hw,
                       hermitian_witness_family, pure_witness_supremum, rank2_closed_forms,
                       schmidt, sup_concurrence_search, tailored_conjugation,
                       three_qubit_product_test)
from .errors import (ConjroofError, DimensionMismatchError, NotPSDError, OperatorClassError,
                     ParseError, ShapeError, SymmetryError, UnsupportedDimsError)
from .matcore import herm_eig, psd_sqrt, singular_numbers, takagi
from .measures import (BlochVector, concurrence_pair, equivalence_transport, fidelity,
                       qubit_closed_forms, theta_concurrence, theta_fidelity, variational_bound,
                       wootters_concurrence)
from .roofs import (Ensemble, ensemble_value, flatness_check, hadamard_matrix, optimal_ensemble,
                    random_ensemble, required_length, roof_oracle, solve_phases)

__version__ = "0.1.0"
