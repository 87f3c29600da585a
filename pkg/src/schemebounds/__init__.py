"""Association schemes, adjacency-algebra invariants over Q and F_q, and
executable checks of modular absolute bounds for primitive schemes."""

__version__ = "0.1.0"

from .scheme import (
    RelationSet,
    Scheme,
    format_scheme,
    is_commutative,
    is_primitive,
    is_symmetric,
    is_thin,
    membership_in_Sstar,
    parse_scheme,
    read_scheme,
    validate_scheme,
    write_scheme,
)
from .generators import (
    complete_graph,
    cyclic_group_table,
    cyclotomic,
    from_group,
    hamming,
    johnson,
    symmetric_group_table,
)
from .gf import FqField, FqMatrix, RkMinReport, combine, make_field, parse_field, rank, rkmin_search
from .spectral import (
    SpectralData,
    center_basis,
    frame_number,
    primitive_idempotents,
    reduce_idempotent,
    rep_params,
    spectral_data,
)
from .bounds import (
    BoundReport,
    check_ha003,
    check_theorem_110707c,
    check_theorem_160707a,
    check_theorem_180707b,
    check_theorem_200707b,
    e_lambda,
    e_union,
)
