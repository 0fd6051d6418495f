import pytest
from hypothesis import assume, given, strategies as st

from aspherix.fox import augmented_jacobian
from aspherix.group_ring import (
    AbelianModel, FreeModel, GroupRingElement, GroupRingMatrix, ShapeError,
)
from aspherix.homology import (
    InvalidIdempotentError, Verdict, asphericity_verdict, balanced_perfect_check, h2_of_group, homology,
    quotient_report, sigma_k, validate_idempotent,
)
from aspherix.smith import AbelianGroup, IntMatrix, snf
from aspherix.words import (
    Presentation, add_trivial_relator, parse_presentation, tietze_stabilize, tietze_transvect,
)

from strategies import words

TORUS = parse_presentation("gens: a b\nrel: abAB")
KLEIN = parse_presentation("gens: a b\nrel: abaB")
SPHERE = parse_presentation("gens: a\nrel:")
FREE1 = parse_presentation("gens: a")
Z2 = AbelianModel.free_abelian(2)
F1 = FreeModel(1)


def scalar_E(model, rows):
    return GroupRingMatrix.from_scalars(model, rows)


presentations = st.integers(1, 3).flatmap(
    lambda g: st.builds(lambda rels: Presentation(tuple("abc"[:g]), tuple(rels)),
                        st.lists(words(g, 8), max_size=4)))


@pytest.mark.parametrize("p, h1, h2", [
    (TORUS, AbelianGroup(2), 1),
    (KLEIN, AbelianGroup(1, (2,)), 0),
    (FREE1, AbelianGroup(1), 0),
    (SPHERE, AbelianGroup(1), 1),
])
def test_homology_examples(p, h1, h2):
    hom = homology(p)
    assert hom.h1 == h1
    assert hom.h2_rank == h2


def test_torus_euler():
    assert homology(TORUS).euler == 0


@given(presentations)
def test_euler_identity(p):
    hom = homology(p)
    b0, b1, b2 = hom.betti
    assert b0 - b1 + b2 == 1 - p.num_generators + p.num_relators
    assert (augmented_jacobian(p) @ hom.h2_basis).is_zero()


def test_corpus_euler(corpus):
    for p in corpus.values():
        hom = homology(p)
        assert hom.euler == p.euler_characteristic


# --- Sigma_K and H_2(G)

def test_sigma_torus_identity():
    s = sigma_k(TORUS, scalar_E(Z2, [[1]]))
    assert s.rank == 0


def test_sigma_sphere_zero():
    s = sigma_k(SPHERE, scalar_E(F1, [[0]]))
    assert s.rank == 1
    assert s.basis.tolist() in ([[1]], [[-1]])


def test_zero_E_on_torus_depends_on_model():
    # over Z[Z^2] the boundary d2 is nonzero, so E = 0 cannot split it
    with pytest.raises(InvalidIdempotentError):
        sigma_k(TORUS, scalar_E(Z2, [[0]]))
    # over Z[F_2] only the augmented checks apply and they pass
    idem = validate_idempotent(TORUS, scalar_E(FreeModel(2), [[0]]))
    assert not idem.splitting_checked
    assert sigma_k(TORUS, idem.E).rank == 1


def test_non_idempotent_rejected():
    with pytest.raises(InvalidIdempotentError):
        sigma_k(TORUS, scalar_E(Z2, [[2]]))


def test_shape_mismatch():
    with pytest.raises(ShapeError):
        sigma_k(TORUS, GroupRingMatrix.identity(Z2, 2))


def test_splitting_violation():
    # eps(d2) = (2, 0)^T, so eps(d2) eps(E) = 0 != eps(d2)
    with pytest.raises(InvalidIdempotentError):
        sigma_k(KLEIN, scalar_E(FreeModel(2), [[0]]))


def test_group_level_idempotency_required_when_model_receives_G():
    a = GroupRingElement.gen(Z2, 0)
    with pytest.raises(InvalidIdempotentError):
        validate_idempotent(TORUS, GroupRingMatrix(Z2, [[a]]))


def test_group_level_splitting_checked():
    p = parse_presentation("gens: a b\nrel: abAB\nrel:")
    one, zero = GroupRingElement.one(Z2), GroupRingElement.zero(Z2)
    good = GroupRingMatrix(Z2, [[one, zero], [zero, zero]])
    idem = validate_idempotent(p, good)
    assert idem.idempotency_checked and idem.splitting_checked
    bad = GroupRingMatrix(Z2, [[one, one], [zero, zero]])
    assert bad @ bad == bad
    with pytest.raises(InvalidIdempotentError):
        validate_idempotent(p, bad)


def test_lift_over_free_group_downgrades_flags():
    F2 = FreeModel(2)
    r = GroupRingElement.from_word(F2, TORUS.relators[0])
    E = GroupRingMatrix(F2, [[r]])
    idem = validate_idempotent(TORUS, E)
    assert not idem.idempotency_checked
    assert not idem.splitting_checked
    report = asphericity_verdict(TORUS, E, cd2_asserted=True)
    assert report.verdict is Verdict.ASPHERICAL
    assert any("only eps(E)" in n for n in report.notes)


def test_rational_E_rejected():
    from fractions import Fraction
    with pytest.raises(InvalidIdempotentError):
        validate_idempotent(TORUS, scalar_E(Z2, [[Fraction(1, 2)]]))


def test_h2_torus():
    q = h2_of_group(TORUS, scalar_E(Z2, [[1]]))
    assert q.group == AbelianGroup(1)
    assert q.torsion_free and q.direct_summand and not q.contradiction
    assert set(q.pair_divisors) <= {0, 1}


def test_h2_sphere():
    q = h2_of_group(SPHERE, scalar_E(F1, [[0]]))
    assert q.group.is_trivial()
    assert q.pair_divisors == (1,)


def test_injected_torsion_flags_contradiction():
    q = quotient_report(IntMatrix.from_rows([[1]]), IntMatrix.from_rows([[2]]))
    assert not q.torsion_free
    assert not q.direct_summand
    assert q.contradiction
    assert "contradict" in q.note


@given(st.lists(st.lists(st.integers(-4, 4), min_size=2, max_size=2), min_size=1, max_size=2))
def test_pair_flags_exclusive(cols):
    ambient = IntMatrix.identity(2)
    sub = IntMatrix.from_columns(cols, 2)
    assume(snf(sub).rank == sub.cols)
    q = quotient_report(ambient, sub)
    assert q.direct_summand != q.contradiction
    assert q.direct_summand == all(d in (0, 1) for d in q.pair_divisors)


def test_trivial_relator_adds_sphere():
    p = add_trivial_relator(TORUS, 1)
    one, zero = GroupRingElement.one(Z2), GroupRingElement.zero(Z2)
    E = GroupRingMatrix(Z2, [[one, zero], [zero, zero]])
    assert sigma_k(p, E).rank == sigma_k(TORUS, scalar_E(Z2, [[1]])).rank + 1
    assert h2_of_group(p, E).group == h2_of_group(TORUS, scalar_E(Z2, [[1]])).group


# --- verdicts

def test_verdict_torus():
    r = asphericity_verdict(TORUS, scalar_E(Z2, [[1]]), cd2_asserted=True)
    assert r.verdict is Verdict.ASPHERICAL
    assert any("stably free" in n for n in r.notes)
    assert any("type FL" in n for n in r.notes)


def test_verdict_sphere():
    r = asphericity_verdict(SPHERE, scalar_E(F1, [[0]]), cd2_asserted=True)
    assert r.verdict is Verdict.NOT_ASPHERICAL
    assert r.sigma_rank == 1


def test_verdict_klein_without_E():
    r = asphericity_verdict(KLEIN, None, cd2_asserted=True)
    assert r.verdict is Verdict.ASPHERICAL
    assert r.sigma_rank == 0


def test_missing_E_inconclusive():
    r = asphericity_verdict(TORUS, None, cd2_asserted=True)
    assert r.verdict is Verdict.INCONCLUSIVE
    assert r.sigma_rank is None
    assert "idempotent" in r.reason


@pytest.mark.parametrize("p, E", [(TORUS, scalar_E(Z2, [[1]])), (SPHERE, scalar_E(F1, [[0]])), (KLEIN, None)])
def test_no_cd2_inconclusive(p, E):
    r = asphericity_verdict(p, E, cd2_asserted=False)
    assert r.verdict is Verdict.INCONCLUSIVE
    assert r.to_json()["assumptions"] == {"cd2_asserted": False}


def test_report_json_fields():
    data = asphericity_verdict(TORUS, scalar_E(Z2, [[1]]), True).to_json()
    assert data["verdict"] == "aspherical"
    assert data["version"]
    assert data["h2g"]["free_rank"] == 1
    assert data["idempotent"]["idempotency_checked"] is True


# --- balanced presentations

def test_balanced_trivial_group():
    c = balanced_perfect_check(parse_presentation("gens: a\nrel: a"))
    assert c.balanced and c.beta1_zero and c.corollary2_applicable
    assert c.beta2 == 0 and c.consistent


def test_balanced_torus_not_applicable():
    c = balanced_perfect_check(parse_presentation("gens: a b\nrel: abAB\nrel:"))
    assert c.balanced and not c.beta1_zero and not c.corollary2_applicable


@given(st.integers(1, 3).flatmap(lambda g: st.lists(words(g, 8), min_size=g, max_size=g).map(
    lambda rels: Presentation(tuple("abc"[:len(rels)]), tuple(rels)))))
def test_balanced_beta1_zero_forces_beta2_zero(p):
    c = balanced_perfect_check(p)
    if c.corollary2_applicable:
        assert c.beta2 == 0
    assert c.consistent


# --- Tietze moves against homology

@given(presentations, st.integers(0, 3))
def test_stabilize_preserves_homology(p, k):
    before, after = homology(p), homology(tietze_stabilize(p, k))
    assert (after.h1, after.h2_rank) == (before.h1, before.h2_rank)


@given(presentations, st.integers(0, 3))
def test_add_trivial_raises_beta2(p, k):
    before, after = homology(p), homology(add_trivial_relator(p, k))
    assert after.h2_rank == before.h2_rank + k
    assert after.h1 == before.h1


def test_add_trivial_torus_example():
    assert homology(TORUS).h2_rank == 1
    assert homology(add_trivial_relator(TORUS, 1)).h2_rank == 2


@given(presentations.filter(lambda p: p.num_relators >= 2), st.data())
def test_transvection_column_operation(p, data):
    j, k = data.draw(st.lists(st.integers(0, p.num_relators - 1), min_size=2, max_size=2, unique=True))
    sign = data.draw(st.sampled_from((1, -1)))
    w = data.draw(words(p.num_generators, 4))
    q = tietze_transvect(p, j, k, w, sign)
    before, after = augmented_jacobian(p).tolist(), augmented_jacobian(q).tolist()
    for row_b, row_a in zip(before, after):
        expected = list(row_b)
        expected[j] += sign * row_b[k]
        assert row_a == expected
    assert homology(q) == homology(p)


@given(presentations.filter(lambda p: p.num_relators >= 1), st.data())
def test_trivial_then_transvect_roundtrip(p, data):
    w = data.draw(words(p.num_generators, 4))
    q = add_trivial_relator(p, 1)
    m = q.num_relators - 1
    there = tietze_transvect(q, m, 0, w, 1)
    back = tietze_transvect(there, m, 0, w, -1)
    assert back == q
    assert homology(there) == homology(q)
