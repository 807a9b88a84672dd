"""Exact computation in the Baumslag-Solitar group H = <x, y | x^y = x^2> and the
Baumslag-Gersten group G = <x, y, t | x^y = x^2, x^t = y>."""

from .automorphisms import (
    Aut,
    AutImages,
    Degenerate,
    InternalContradiction,
    NotHom,
    NotVerified,
    OutClass,
    apply_aut,
    classify_endo,
    compose_out,
    inner_equiv,
    invert_out,
    std_aut,
    verify_hom,
)
from .britton import (
    Budget,
    BudgetExceeded,
    GWord,
    britton_reduce,
    cyclic_reduce_g,
    g_conjugate,
    g_is_identity,
    g_mul,
    is_x_power,
    is_y_power,
    t_length,
)
from .conjugacy import (
    ChainCertificate,
    ChainLink,
    NoChain,
    WrongTLength,
    conj_zero_closed_form,
    conj_zero_g,
    t_length_obstruction,
    verify_chain,
)
from .h_arith import (
    AffineElem,
    Dyadic,
    HasStableLetter,
    NotInCentralizer,
    eval_h,
    h_conjugacy,
    h_conjugate,
    h_inv,
    h_is_identity,
    h_mul,
    h_normal_form,
    in_centralizer_of_x,
    psi,
)
from .words import (
    Generator,
    Syllable,
    Word,
    WordSyntaxError,
    concat,
    cyclic_reduce_free,
    format_word,
    free_reduce,
    invert,
    parse_word,
)

__version__ = "0.1.0"
