"""Asphericity invariants of finite group presentations."""

__version__ = "0.1.0"

from .words import (  # noqa: E402
    Presentation, Word, add_consequence_relator, add_trivial_relator, cyclic_reduce, free_reduce,
    parse_presentation, parse_word, render_presentation, tietze_stabilize, tietze_transvect,
)
from .group_ring import (  # noqa: E402
    AbelianModel, FreeModel, GroupRingElement, GroupRingMatrix, hermitian_pair, is_idempotent, trace_t,
)
from .fox import ChainComplexModel, fox_derivative, fundamental_identity_check, jacobian  # noqa: E402
from .smith import IntMatrix, kernel_basis, pair_divisors, snf  # noqa: E402
from .homology import (  # noqa: E402
    asphericity_verdict, balanced_perfect_check, h2_of_group, homology, sigma_k,
)
from .trace_rank import compare_ranks, eps_rank, t_rank  # noqa: E402
