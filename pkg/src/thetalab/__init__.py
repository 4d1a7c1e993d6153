"""thetalab: theta functions, q-series, and a verified identity catalog.

Numeric layer: genus-1 and genus-2 theta functions with exact rational
characteristics, Dedekind eta, Landen-type ratio identities, double-product
splits, Borwein a/b/c series and the cubic identity, cube-sum identities.

Exact layer: integer truncated Laurent series proving the product
identities coefficient-by-coefficient up to a chosen order.

The registry module catalogs every verifiable identity; the CLI wraps it:

    thetalab eval theta3 u=0 tau=0+1i
    thetalab verify landen.p3
    thetalab verify --all --json
    thetalab list --filter cubic
"""

from .types import (
    CharPair,
    CharQuad,
    CompensatedSum,
    DomainError,
    IdentityReport,
    NearZeroError,
    PeriodMatrix2,
    PrecisionError,
    SymmetricTau,
    TauPoint,
    Tolerance,
)
from .genus1 import (
    dedekind_eta,
    reduce_characteristic,
    shift_characteristic,
    theta_char_g1,
    theta_const,
    theta_const_nome,
    theta_j,
    theta_j_product,
)
from .genus2 import cubic_period, symmetric_tau_from_w, theta_char_g2
from .landen import (
    fk_ratio,
    gauss_agm_step,
    landen_parity,
    landen_ratio,
    landen_rhs,
    landens3_theta2,
    modular3_residual,
    ratio_ell,
    u_samples,
)
from .doubleprod import (
    cubic_char_equality,
    double_product_split,
    duplication,
    general_char_split,
    inverse_combine,
    landen_from_double,
)
from .cubic import (
    abc_series,
    abc_theta_links,
    bba_check,
    bbc_check,
    cube_sum_identity,
    cubic_identity,
)
from .qseries import (
    TruncatedSeries,
    UnsupportedIdentityError,
    expand_product,
    formal_verify,
    series_arith,
)
from .registry import list_entries, run_entry

__version__ = "0.1.0"

__all__ = [
    "CharPair", "CharQuad", "CompensatedSum", "DomainError", "IdentityReport",
    "NearZeroError", "PeriodMatrix2", "PrecisionError", "SymmetricTau",
    "TauPoint", "Tolerance",
    "dedekind_eta", "reduce_characteristic", "shift_characteristic",
    "theta_char_g1", "theta_const", "theta_const_nome", "theta_j",
    "theta_j_product",
    "cubic_period", "symmetric_tau_from_w", "theta_char_g2",
    "fk_ratio", "gauss_agm_step", "landen_parity", "landen_ratio",
    "landen_rhs", "landens3_theta2", "modular3_residual", "ratio_ell",
    "u_samples",
    "cubic_char_equality", "double_product_split", "duplication",
    "general_char_split", "inverse_combine", "landen_from_double",
    "abc_series", "abc_theta_links", "bba_check", "bbc_check",
    "cube_sum_identity", "cubic_identity",
    "TruncatedSeries", "UnsupportedIdentityError", "expand_product",
    "formal_verify", "series_arith",
    "list_entries", "run_entry",
    "__version__",
]
