"""Homology of K(P), spherical 2-cycles, H_2(G), and the asphericity verdict.

Everything reduces to integer matrices: ``eps(d2)`` for H_1(K) and H_2(K),
and ``eps(E)`` for the spherical classes ``Sigma_K = ker eps(E)`` once an
idempotent ``E`` splitting the boundary map is supplied.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum

from . import __version__
from .fox import augment_to_int, augmented_jacobian, jacobian, project
from .group_ring import GroupModel, GroupRingMatrix, ShapeError, is_idempotent
from .smith import AbelianGroup, IntMatrix, cokernel, kernel_basis, pair_divisors, pair_quotient
from .words import Presentation, render_presentation


class InvalidIdempotentError(ValueError):
    """The supplied E is not an idempotent splitting of the boundary map."""


class Verdict(str, Enum):
    ASPHERICAL = "aspherical"
    NOT_ASPHERICAL = "not_aspherical"
    INCONCLUSIVE = "inconclusive"


@dataclass(frozen=True)
class HomologyReport:
    h1: AbelianGroup
    h2_rank: int
    betti: tuple[int, int, int]
    euler: int
    h2_basis: IntMatrix = field(repr=False, compare=False)

    def to_json(self) -> dict:
        return {"h1": self.h1.to_json(), "h2_rank": self.h2_rank, "betti": list(self.betti),
                "euler": self.euler, "h2_basis": self.h2_basis.tolist()}


def homology(p: Presentation) -> HomologyReport:
    eps_d2 = augmented_jacobian(p)
    h1 = cokernel(eps_d2)
    basis = kernel_basis(eps_d2)
    b2 = basis.cols
    betti = (1, h1.free_rank, b2)
    euler = betti[0] - betti[1] + betti[2]
    if euler != p.euler_characteristic:
        raise AssertionError(f"Euler identity failed: {betti} vs 1 - {p.num_generators} + {p.num_relators}")
    return HomologyReport(h1, b2, betti, euler, basis)


@dataclass(frozen=True)
class IdempotentInput:
    """A validated E.

    ``idempotency_checked`` means ``E @ E == E`` held in E's own ring; when it
    is False only ``eps(E)`` was checked (E given over a lift such as Z[F]).
    ``splitting_checked`` means ``d2 @ E == d2`` was verified after pushing
    the Jacobian into E's ring, which needs that ring to receive G.
    """

    E: GroupRingMatrix
    model: GroupModel
    eps: IntMatrix
    idempotency_checked: bool
    splitting_checked: bool
    model_receives_group: bool

    def to_json(self) -> dict:
        return {"model": self.model.to_json(), "size": self.E.rows,
                "idempotency_checked": self.idempotency_checked,
                "splitting_checked": self.splitting_checked,
                "model_receives_group": self.model_receives_group,
                "eps_E": self.eps.tolist()}


def _receives_group(p: Presentation, model: GroupModel) -> bool:
    """Whether ``x_i -> generator i`` kills every relator, i.e. defines G -> model."""
    if model.rank != p.num_generators:
        return False
    ident = model.identity()
    return all(model.from_word(r) == ident for r in p.relators)


def validate_idempotent(p: Presentation, E: GroupRingMatrix | IdempotentInput) -> IdempotentInput:
    if isinstance(E, IdempotentInput):
        return E
    n = p.num_relators
    if E.shape != (n, n):
        raise ShapeError(f"E must be {n}x{n} (one row/column per relator), got {E.rows}x{E.cols}")
    try:
        eps = augment_to_int(E)
    except ValueError as exc:
        raise InvalidIdempotentError(f"eps(E) is not an integer matrix: {exc}") from None
    receives = _receives_group(p, E.model)
    exact = is_idempotent(E)
    if not exact and receives:
        raise InvalidIdempotentError("E @ E != E in the group ring of the supplied model")
    if eps @ eps != eps:
        raise InvalidIdempotentError("eps(E) is not idempotent, so E is not idempotent")
    eps_d2 = augmented_jacobian(p)
    if eps_d2 @ eps != eps_d2:
        raise InvalidIdempotentError("eps(d2) @ eps(E) != eps(d2): E does not split the boundary map")
    split = False
    if receives:
        d2 = project(jacobian(p), E.model)
        if d2 @ E != d2:
            raise InvalidIdempotentError("d2 @ E != d2 over the supplied model")
        split = True
    return IdempotentInput(E, E.model, eps, exact, split, receives)


@dataclass(frozen=True)
class SigmaK:
    rank: int
    basis: IntMatrix

    def to_json(self) -> dict:
        return {"rank": self.rank, "basis": self.basis.tolist()}


def sigma_k(p: Presentation, E: GroupRingMatrix | IdempotentInput) -> SigmaK:
    """Spherical 2-cycles as ``ker eps(E)`` in 2-cell coordinates."""
    idem = validate_idempotent(p, E)
    basis = kernel_basis(idem.eps)
    if not (augmented_jacobian(p) @ basis).is_zero():
        raise InvalidIdempotentError("ker eps(E) is not contained in H_2(K)")
    return SigmaK(basis.cols, basis)


@dataclass(frozen=True)
class H2GroupReport:
    group: AbelianGroup
    pair_divisors: tuple[int, ...]
    torsion_free: bool
    direct_summand: bool
    contradiction: bool
    note: str = ""

    @property
    def free_rank(self) -> int:
        return self.group.free_rank

    @property
    def torsion(self) -> tuple[int, ...]:
        return self.group.torsion

    def to_json(self) -> dict:
        return {"group": self.group.to_json(), "pair_divisors": list(self.pair_divisors),
                "torsion_free": self.torsion_free, "direct_summand": self.direct_summand,
                "contradiction": self.contradiction, "note": self.note}


def quotient_report(h2_basis: IntMatrix, sigma_basis: IntMatrix) -> H2GroupReport:
    """H_2(G) = H_2(K) / Sigma_K from bases of the two lattices."""
    divisors = pair_divisors(h2_basis, sigma_basis)
    group = pair_quotient(h2_basis, sigma_basis)
    clean = all(d in (0, 1) for d in divisors)
    note = "" if clean else ("torsion in H_2(K)/Sigma_K: the inputs contradict cd(G) = 2 "
                             "or E is not a valid splitting idempotent")
    return H2GroupReport(group, divisors, not group.torsion, clean, not clean, note)


def h2_of_group(p: Presentation, E: GroupRingMatrix | IdempotentInput) -> H2GroupReport:
    sigma = sigma_k(p, E)
    return quotient_report(homology(p).h2_basis, sigma.basis)


@dataclass(frozen=True)
class AsphericityReport:
    presentation: Presentation
    homology: HomologyReport
    cd2_asserted: bool
    verdict: Verdict
    sigma_rank: int | None
    sigma_basis: IntMatrix | None
    h2g: AbelianGroup | None
    pair_divisors: tuple[int, ...] | None
    torsion_free: bool | None
    direct_summand: bool | None
    contradiction: bool
    idempotent: IdempotentInput | None
    reason: str
    notes: tuple[str, ...] = ()

    def to_json(self) -> dict:
        return {
            "tool": "aspherix",
            "version": __version__,
            "presentation": render_presentation(self.presentation),
            "assumptions": {"cd2_asserted": self.cd2_asserted},
            "homology": self.homology.to_json(),
            "idempotent": self.idempotent.to_json() if self.idempotent else None,
            "sigma_rank": self.sigma_rank,
            "sigma_basis": self.sigma_basis.tolist() if self.sigma_basis is not None else None,
            "h2g": self.h2g.to_json() if self.h2g is not None else None,
            "pair_divisors": list(self.pair_divisors) if self.pair_divisors is not None else None,
            "torsion_free": self.torsion_free,
            "direct_summand": self.direct_summand,
            "contradiction": self.contradiction,
            "verdict": self.verdict.value,
            "reason": self.reason,
            "notes": list(self.notes),
        }


_ASPHERICAL_NOTES = (
    "Sigma_K = 0, so H_0(G; H_2(universal cover)) = 0 and the projective module H_2(universal cover) vanishes",
    "the relation module Z_1 of the universal cover is stably free",
    "G is of type FL",
)


def asphericity_verdict(p: Presentation, E: GroupRingMatrix | IdempotentInput | None = None,
                        cd2_asserted: bool = False) -> AsphericityReport:
    """Decide asphericity of K(P) from Sigma_K under the cd(G) = 2 assumption.

    If H_2(K) = 0 then Sigma_K = 0 without any idempotent.  Otherwise E is
    required; without it the verdict is inconclusive.
    """
    hom = homology(p)
    idem = validate_idempotent(p, E) if E is not None else None
    notes: list[str] = []
    sigma_rank = sigma_basis = h2g = divisors = torsion_free = summand = None
    contradiction = False

    if idem is not None:
        sigma = sigma_k(p, idem)
        q = quotient_report(hom.h2_basis, sigma.basis)
        sigma_rank, sigma_basis = sigma.rank, sigma.basis
        h2g, divisors, torsion_free, summand = q.group, q.pair_divisors, q.torsion_free, q.direct_summand
        contradiction = q.contradiction
        if q.note:
            notes.append(q.note)
        if not idem.idempotency_checked:
            notes.append("E is not idempotent in its own ring; only eps(E) was validated")
        if not idem.splitting_checked:
            notes.append("d2 @ E = d2 checked after augmentation only")
    elif hom.h2_rank == 0:
        sigma_rank, sigma_basis = 0, IntMatrix.zeros(p.num_relators, 0)
        h2g, divisors, torsion_free, summand = AbelianGroup(0), (), True, True
        notes.append("H_2(K) = 0, hence Sigma_K = 0 without an idempotent")

    if sigma_rank is None:
        verdict, reason = Verdict.INCONCLUSIVE, ("Sigma_K requires an idempotent E splitting the boundary "
                                                 "C_2 -> Z_1 (supply --idempotent)")
    elif contradiction:
        verdict, reason = Verdict.INCONCLUSIVE, "inputs are contradictory (torsion in H_2(G))"
    elif not cd2_asserted:
        verdict, reason = Verdict.INCONCLUSIVE, "cd(G) = 2 was not asserted"
        if sigma_rank > 0:
            notes.append("Sigma_K != 0 would rule out asphericity whenever ker E models H_2 of the universal cover")
    elif sigma_rank == 0:
        verdict, reason = Verdict.ASPHERICAL, "cd(G) = 2 asserted and Sigma_K = 0"
        notes.extend(_ASPHERICAL_NOTES)
    else:
        verdict, reason = Verdict.NOT_ASPHERICAL, f"Sigma_K has rank {sigma_rank} > 0; aspherical complexes have Sigma_K = 0"

    return AsphericityReport(p, hom, cd2_asserted, verdict, sigma_rank, sigma_basis, h2g, divisors,
                             torsion_free, summand, contradiction, idem, reason, tuple(notes))


@dataclass(frozen=True)
class BalancedCheck:
    balanced: bool
    beta1_zero: bool
    corollary2_applicable: bool
    beta2: int
    consistent: bool

    def to_json(self) -> dict:
        return {"balanced": self.balanced, "beta1_zero": self.beta1_zero,
                "corollary2_applicable": self.corollary2_applicable,
                "beta2": self.beta2, "consistent": self.consistent}


def balanced_perfect_check(p: Presentation) -> BalancedCheck:
    """Balanced with b_1 = 0 forces b_2 = 0 by the Euler characteristic."""
    hom = homology(p)
    balanced = p.is_balanced()
    beta1_zero = hom.betti[1] == 0
    applicable = balanced and beta1_zero
    consistent = hom.h2_rank == 0 if applicable else True
    return BalancedCheck(balanced, beta1_zero, applicable, hom.h2_rank, consistent)


def format_report(report: AsphericityReport) -> str:
    hom = report.homology
    lines = [
        f"presentation: {report.presentation}",
        f"H_1(K) = {hom.h1}",
        f"H_2(K) = Z^{hom.h2_rank}" if hom.h2_rank else "H_2(K) = 0",
        f"betti = {hom.betti}, euler = {hom.euler}",
        f"cd(G) = 2 asserted: {report.cd2_asserted}",
        f"Sigma_K rank: {'unknown' if report.sigma_rank is None else report.sigma_rank}",
        f"H_2(G) = {'unknown' if report.h2g is None else report.h2g}",
    ]
    if report.pair_divisors is not None:
        lines.append(f"pair divisors: {list(report.pair_divisors)} (direct summand: {report.direct_summand})")
    lines.append(f"verdict: {report.verdict.value} ({report.reason})")
    lines.extend(f"note: {n}" for n in report.notes)
    return "\n".join(lines) + "\n"

