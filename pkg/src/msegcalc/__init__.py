"""Exact calculus of multisegment labels for degree-n principal blocks:
restriction, derivatives, decomposition, and invariant-form classification."""

from .arith import (
    ContextError,
    HalfInt,
    ModContext,
    congruent,
    divides_f,
    dominates,
    half,
    strictly_dominates,
)
from .segments import (
    Multisegment,
    Segment,
    juxtaposed,
    lambda_of,
    linked,
    mseg,
    seg,
    seg_equivalent,
    support,
)
from .reps import (
    Character,
    CuspAtom,
    Expr,
    GrothElt,
    Irr,
    as_character,
    chars_equal,
    cusp_atom,
    cuspidal_kind,
    dual,
    make_L,
    make_Lambda,
    make_Lambda_dual,
    make_Phi,
    make_Pi,
    make_Psi,
    st2_twist,
    st3_twist,
    st_of_two_chars,
    twist,
    z_of_segment,
)
from .calculus import (
    Ternary,
    commute_product,
    derivative,
    geometric_lemma,
    is_irreducible_product,
    jacquet_segment,
    jacquet_segment_opposite,
    product_label,
    refine_levi_sum,
)
from .structure import (
    Q_of,
    S_of,
    StructureReport,
    V_n_structure,
    semisimplify,
    structure_Z_times_char,
    subquotients_Z_times_Z01,
)
from .solver import (
    CandidateSet,
    Decomposition,
    decompose,
    eliminate,
    enumerate_candidates,
    full_jacquet_length,
    mu_and_st_of,
)
from .distinction import (
    DistinctionVerdict,
    classify,
    classify_gl2,
    cuspidal_distinguished,
    derivative_test,
    dual_closure_check,
    gl2_invariant_form_dims,
    reduction_list,
    three_orbit_conditions,
)

__version__ = "0.1.0"
