"""Exact equality test for infinite words generated by primitive morphisms."""

from .analysis import (
    MorphismProfile,
    cyclic_letters,
    factors_q,
    is_growing,
    is_primitive,
    omega_exists,
    period,
    pref_q,
    profile,
)
from .balance import (
    BalanceInstance,
    IntPolynomial,
    bal_finite,
    bal_upper_bound,
    divides_one_minus_zp,
    minimal_annihilator,
    unity_order_bound,
)
from .core import (
    Alphabet,
    Morphism,
    MorphismTower,
    apply,
    apply_tower,
    compose,
    image_length_row,
    incidence_matrix,
    matrix_pow,
    power,
    tower_matrix,
)
from .decide import (
    DecisionConfig,
    Verdict,
    a_of_n,
    build_f1_f2,
    decide_equality,
    swap_reduction,
)
from .engine import (
    Comparability,
    LayeredWordSpec,
    OverflowState,
    comparable_words,
    compare_images,
    spec_length,
    stream_prefix,
)
from .oracle import (
    OracleReport,
    mixed_composition,
    naive_bal,
    naive_comp_member,
    naive_equal_up_to,
    omega_prefix,
    vector_cycle,
)
from .errors import (
    D0LError,
    InputError,
    PreconditionError,
    ResourceLimitError,
    UnsupportedInputError,
)

__version__ = "0.1.0"
