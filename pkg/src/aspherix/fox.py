"""Free differential calculus and the cellular chain complex of K(P).

Conventions: ``d(uv)/dx = du/dx + u dv/dx``.  The Jacobian has generators on
rows and relators on columns, so column ``j`` is the Fox gradient of ``r_j``.
"""

from __future__ import annotations

from dataclasses import dataclass

from .group_ring import FreeModel, GroupModel, GroupRingElement, GroupRingMatrix
from .scalars import as_int
from .smith import IntMatrix
from .words import Presentation, Word


def fox_gradient(w: Word, rank: int) -> list[GroupRingElement]:
    """All partial derivatives of ``w`` in one left-to-right pass.

    Each letter contributes ``+prefix`` (for ``x_i``) or ``-prefix x_i^-1``
    (for ``x_i^-1``) to its own generator; prefixes of a reduced word are
    reduced, so they are read off as slices.
    """
    if w.max_generator() >= rank:
        raise IndexError(f"word uses generator {w.max_generator()} but rank is {rank}")
    model = FreeModel(rank)
    acc: list[dict] = [{} for _ in range(rank)]
    letters = w.letters
    for pos, (i, s) in enumerate(letters):
        if s > 0:
            key, c = letters[:pos], 1
        else:
            key, c = letters[:pos + 1], -1
        d = acc[i]
        v = d.get(key, 0) + c
        if v:
            d[key] = v
        else:
            del d[key]
    return [GroupRingElement._raw(model, d) for d in acc]


def fox_derivative(w: Word, i: int, rank: int) -> GroupRingElement:
    if not 0 <= i < rank:
        raise IndexError(f"generator index {i} out of range for rank {rank}")
    return fox_gradient(w, rank)[i]


def jacobian(p: Presentation) -> GroupRingMatrix:
    """Boundary matrix ``C_2 -> C_1`` over Z[F]: entry (i, j) is dr_j/dx_i."""
    g = p.num_generators
    model = FreeModel(g)
    cols = [fox_gradient(r, g) for r in p.relators]
    grid = [[cols[j][i] for j in range(p.num_relators)] for i in range(g)]
    return GroupRingMatrix(model, grid, g, p.num_relators)


def boundary_one(p: Presentation) -> GroupRingMatrix:
    """Boundary ``C_1 -> C_0``: the row ``(x_1 - 1, ..., x_g - 1)``."""
    model = FreeModel(p.num_generators)
    one = GroupRingElement.one(model)
    return GroupRingMatrix(model, [[GroupRingElement.gen(model, i) - one for i in range(p.num_generators)]],
                           1, p.num_generators)


def augmented_jacobian(p: Presentation) -> IntMatrix:
    """``eps(d2)``: entry (i, j) is the exponent sum of x_i in r_j."""
    return IntMatrix(p.num_generators, p.num_relators,
                     tuple(tuple(r.exponent_sum(i) for r in p.relators) for i in range(p.num_generators)))


def augment_to_int(m: GroupRingMatrix) -> IntMatrix:
    return IntMatrix(m.rows, m.cols, tuple(tuple(as_int(e.augment()) for e in r) for r in m.entries))


def project(m: GroupRingMatrix, model: GroupModel) -> GroupRingMatrix:
    """Push a matrix over Z[F] into Z[model] along ``x_i -> generator i``."""
    src = m.model
    if not isinstance(src, FreeModel):
        raise TypeError("projection starts from a free-group matrix")
    if model.rank != src.rank:
        raise ValueError(f"model rank {model.rank} differs from {src.rank} generators")

    def push(e: GroupRingElement) -> GroupRingElement:
        terms: dict = {}
        for g, c in e.terms.items():
            h = model.from_word(Word(g))
            terms[h] = terms.get(h, 0) + c
        return GroupRingElement(model, terms)

    return m.map_entries(model, push)


def fundamental_identity_check(p: Presentation, d2: GroupRingMatrix | None = None) -> bool:
    """True iff ``sum_i (dr/dx_i)(x_i - 1) == r - 1`` for every relator.

    ``d2`` defaults to :func:`jacobian`; pass a modified matrix to test it.
    """
    if d2 is None:
        d2 = jacobian(p)
    model = FreeModel(p.num_generators)
    if d2.model != model or d2.shape != (p.num_generators, p.num_relators):
        return False
    one = GroupRingElement.one(model)
    steps = [GroupRingElement.gen(model, i) - one for i in range(p.num_generators)]
    for j, r in enumerate(p.relators):
        total = GroupRingElement.zero(model)
        for i in range(p.num_generators):
            total = total + d2[i, j] * steps[i]
        if total != GroupRingElement.from_word(model, r) - one:
            return False
    return True


@dataclass(frozen=True)
class ChainComplexModel:
    """``C_2 --d2--> C_1 --d1--> C_0`` of the universal cover, over Z[F]."""

    presentation: Presentation
    d2: GroupRingMatrix
    d1: GroupRingMatrix

    @classmethod
    def of(cls, p: Presentation) -> ChainComplexModel:
        return cls(p, jacobian(p), boundary_one(p))

    def composite(self) -> GroupRingMatrix:
        """Column of ``r_j - 1``: the left-module composite ``d1 o d2`` before passing to Z[G]."""
        return self.d2.transpose() @ self.d1.transpose()

    def augmented(self) -> IntMatrix:
        return augment_to_int(self.d2)
