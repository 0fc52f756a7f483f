"""Exact linear algebra for nets of quadrics, instanton monads and Pfaffian loci."""

from ._backend import BACKEND
from .errors import ParseError, QNLError
from .exact_linalg import PrimeField, inverse, kernel, pfaffian, rank
from .nets import (LineP3, barth_rank, barth_sections, barth_surjectivity, jump_order,
                   monad_assemble, restriction_h0, schur_residual, xm_membership)
from .pfaffian_locus import (QuadBlockSkew, degeneracy_check, m_locus_member,
                             pfaffian_quartic, structured_family)
from .tensor_spaces import DualNet, MixedMap, Net, PhiMap, TwoForm, TwoFormDual, dims
from .thooft import THooftDatum, build_thooft, l_pair, random_thooft
from .zm_scheme import ZPoint, fiber_subspace, fibre_system, zhat_membership

__version__ = "0.1.0"

__all__ = [
    "BACKEND", "ParseError", "QNLError", "PrimeField", "inverse", "kernel", "pfaffian", "rank",
    "LineP3", "barth_rank", "barth_sections", "barth_surjectivity", "jump_order",
    "monad_assemble", "restriction_h0", "schur_residual", "xm_membership",
    "QuadBlockSkew", "degeneracy_check", "m_locus_member", "pfaffian_quartic",
    "structured_family", "DualNet", "MixedMap", "Net", "PhiMap", "TwoForm", "TwoFormDual",
    "dims", "THooftDatum", "build_thooft", "l_pair", "random_thooft", "ZPoint",
    "fiber_subspace", "fibre_system", "zhat_membership",
]
