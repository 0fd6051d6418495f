"""t-rank versus eps-rank of idempotent matrices over group rings.

For an idempotent ``E`` the t-rank is the sum of identity coefficients on the
diagonal and the eps-rank is the integer rank of ``eps(E)``.  The two agree on
stably free images; a disagreement is reported as a counterexample candidate
rather than raised.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from .group_ring import GroupRingMatrix, ShapeError, is_idempotent, matrix_to_json
from .scalars import Scalar, simplify
from .smith import snf
from .fox import augment_to_int


class NotIdempotentError(ValueError):
    pass


def t_rank(E: GroupRingMatrix) -> Scalar:
    if not E.is_square():
        raise ShapeError(f"t-rank of non-square {E.shape} matrix")
    if not is_idempotent(E):
        raise NotIdempotentError("t-rank is only defined for idempotent matrices")
    return E.trace_t()


def eps_rank(E: GroupRingMatrix) -> int:
    """Trace of ``eps(E)``, cross-checked against its Smith rank."""
    if not E.is_square():
        raise ShapeError(f"eps-rank of non-square {E.shape} matrix")
    try:
        eps = augment_to_int(E)
    except ValueError as exc:
        raise NotIdempotentError(f"eps(E) is not an integer matrix: {exc}") from None
    if eps @ eps != eps:
        raise NotIdempotentError("eps(E) is not idempotent over Z")
    trace = sum(eps[i, i] for i in range(eps.rows))
    r = snf(eps).rank
    if r != trace:
        raise AssertionError(f"idempotent integer matrix with trace {trace} but rank {r}")
    return trace


@dataclass(frozen=True)
class RankComparison:
    t_rank: Scalar
    eps_rank: int
    agree: bool
    idempotent_valid: bool
    size: int
    counterexample: dict | None = None

    def to_json(self) -> dict:
        t = simplify(self.t_rank)
        return {"t_rank": str(t), "eps_rank": self.eps_rank, "agree": self.agree,
                "idempotent_valid": self.idempotent_valid, "size": self.size,
                "counterexample": self.counterexample}


def compare_ranks(E: GroupRingMatrix) -> RankComparison:
    t = t_rank(E)
    e = eps_rank(E)
    agree = simplify(t) == e
    report = None
    if not agree:
        report = {
            "kind": "counterexample_candidate",
            "message": "t-rank and eps-rank differ; the image of E cannot be stably free",
            "t_rank": str(simplify(t)),
            "eps_rank": e,
            "E": matrix_to_json(E),
        }
    return RankComparison(t, e, agree, True, E.rows, report)


def compare_batch(matrices: Iterable[tuple[str, GroupRingMatrix]]) -> dict:
    """Compare ranks for many named matrices; invalid ones are recorded, not raised."""
    entries = []
    disagreements = invalid = 0
    for name, E in matrices:
        try:
            rc = compare_ranks(E)
        except (NotIdempotentError, ShapeError) as exc:
            invalid += 1
            entries.append({"name": name, "idempotent_valid": False, "error": str(exc)})
            continue
        disagreements += not rc.agree
        entries.append({"name": name, **rc.to_json()})
    return {"entries": entries, "count": len(entries), "invalid": invalid, "disagreements": disagreements}

