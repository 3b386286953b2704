"""Normal forms of Hermitian-symmetric matrix pairs under ``~``-congruence.

A pair ``(A, B)`` with ``A`` Hermitian and ``B`` complex symmetric is moved
to ``(c P* A P, conj(c) P^T B P)`` by an invertible ``P`` and a unimodular
scalar ``c``.  The modules are

- :mod:`cpclass.matlin`: tolerances, Takagi factorization, inertia
- :mod:`cpclass.consim`: coneigenvalues and consimilarity
- :mod:`cpclass.forms`: FORM 1/2/3 of ``A`` against ``B = I``
- :mod:`cpclass.reduce`: block reduction for singular ``B`` and the table
  of low-dimensional normal forms
- :mod:`cpclass.congruence`: decisions, certificates, invariants
- :mod:`cpclass.cli`: command line front end
"""

__version__ = "0.1.0"

from .matlin import (  # noqa: E402
    MatrixError,
    NotHermitian,
    NotSymmetric,
    Singular,
    SizeMismatch,
    ToleranceBreakdown,
    Tolerances,
    Unsupported,
    sylvester_inertia,
    takagi_factorization,
)
from .consim import alternating_rank_sequence, coneigen_structure, find_orthogonal_consimilarity  # noqa: E402
from .forms import Form1, FormBlock, flip_form1, form1, form2, form3, generic_forms  # noqa: E402
from .pairs import CongruenceCertificate, MatrixPair, apply_certificate, verify_certificate  # noqa: E402
from .rows import ROWS, representative  # noqa: E402
from .reduce import (  # noqa: E402
    ClassLabel,
    ReducedPair,
    classify_pair_diag_A,
    classify_pair_low_dim,
    is_nondegenerate_point,
    normalize_B,
    prepare_reduction,
)
from .congruence import (  # noqa: E402
    PairInvariants,
    are_sim_congruent,
    canonical_invariants,
    detect_quadratic_flatness,
    random_orbit_sample,
)
