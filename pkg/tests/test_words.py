import pytest
from hypothesis import given, strategies as st

from aspherix.words import (
    DuplicateGeneratorError, Presentation, PresentationSyntaxError, TietzeError, UnknownGeneratorError,
    Word, add_consequence_relator, add_trivial_relator, cyclic_reduce, free_reduce, parse_presentation,
    render_presentation, tietze_stabilize, tietze_transvect,
)

from strategies import letters, words

A, a_ = (0, 1), (0, -1)
B, b_ = (1, 1), (1, -1)


def test_parse_commutator():
    p = parse_presentation("gens: a b\nrel: a b A B")
    assert p.generators == ("a", "b")
    assert p.relators == (Word((A, B, a_, b_)),)


def test_parse_empty_relator():
    p = parse_presentation("gens: a\nrel:")
    assert p.relators == (Word(),)


def test_parse_reduces():
    p = parse_presentation("gens: a\nrel: a A a")
    assert p.relators == (Word((A,)),)


def test_parse_keeps_order_and_duplicates():
    p = parse_presentation("# c\ngens: a b\nrel: b\nrel: a  # trailing\nrel: b\n\n")
    assert [str(p.format_word(r)) for r in p.relators] == ["b", "a", "b"]


def test_verbose_syntax():
    p = parse_presentation("gens: x1 x2\nrel: x1 x2 x1^-1 x2^-1\nrel: x1^3")
    assert p.relators[0] == Word(((0, 1), (1, 1), (0, -1), (1, -1)))
    assert p.relators[1] == Word(((0, 1),) * 3)
    assert parse_presentation(render_presentation(p)) == p


def test_exponent_on_compact_letters():
    p = parse_presentation("gens: a b\nrel: a^2 B^-3")
    assert p.relators[0] == Word((A, A, B, B, B))


@pytest.mark.parametrize("text, exc", [
    ("gens: a\nrel: ab", UnknownGeneratorError),
    ("gens: a a", DuplicateGeneratorError),
    ("gens: a\nrel: a$", PresentationSyntaxError),
    ("rel: a", PresentationSyntaxError),
    ("gens: a\nfoo: a", PresentationSyntaxError),
    ("gens: a\nrel: a^", PresentationSyntaxError),
])
def test_parse_errors(text, exc):
    with pytest.raises(exc):
        parse_presentation(text)


def test_error_position():
    with pytest.raises(UnknownGeneratorError) as info:
        parse_presentation("gens: a b\nrel: abc")
    assert info.value.line == 2
    assert info.value.column == 8


@pytest.mark.parametrize("raw, expected", [
    ([A, a_], ()),
    ([A, B, b_, a_], ()),
    ([A, A, B], (A, A, B)),
])
def test_free_reduce_examples(raw, expected):
    assert free_reduce(raw).letters == expected


def test_word_rejects_unreduced():
    with pytest.raises(ValueError):
        Word((A, a_))


@given(letters())
def test_free_reduce_idempotent_and_shrinking(raw):
    w = free_reduce(raw)
    assert free_reduce(w.letters) == w
    assert len(w) <= len(raw)


@given(words())
def test_inverse_cancels(w):
    assert (w * w.inverse()) == Word()
    assert free_reduce(w.letters + w.inverse().letters) == Word()


def test_cyclic_reduce_is_explicit():
    p = parse_presentation("gens: a b\nrel: a b A")
    assert p.relators[0] == Word((A, B, a_))
    assert cyclic_reduce(p.relators[0]) == Word((B,))


def test_stabilize_example():
    p = parse_presentation("gens: a\n")
    q = tietze_stabilize(p, 1)
    assert q.generators == ("a", "g1")
    assert q.relators == (Word(((1, 1),)),)
    assert tietze_stabilize(p, 0) is p


def test_stabilize_avoids_name_clash():
    p = Presentation(("g1",), ())
    assert tietze_stabilize(p, 2).generators == ("g1", "g2", "g3")


presentations = st.integers(1, 3).flatmap(
    lambda g: st.builds(lambda rels: Presentation(tuple("abc"[:g]), tuple(rels)),
                        st.lists(words(g, 6), max_size=3)))


@given(presentations, st.integers(0, 3))
def test_stabilize_counts_and_euler(p, k):
    q = tietze_stabilize(p, k)
    assert q.num_generators == p.num_generators + k
    assert q.num_relators == p.num_relators + k
    assert q.euler_characteristic == p.euler_characteristic


@given(presentations, st.integers(0, 3))
def test_add_trivial_euler(p, k):
    q = add_trivial_relator(p, k)
    assert q.num_relators == p.num_relators + k
    assert q.euler_characteristic == p.euler_characteristic + k


def test_add_trivial_identity():
    p = parse_presentation("gens: a\nrel: a")
    assert add_trivial_relator(p, 0) == p


def test_transvect_example():
    p = parse_presentation("gens: a\nrel: a\nrel: a")
    q = tietze_transvect(p, 1, 0, Word(), -1)
    assert q.relators == (Word((A,)), Word())


def test_transvect_conjugate():
    p = parse_presentation("gens: a b\nrel: a\nrel: b")
    q = tietze_transvect(p, 0, 1, Word((A,)), 1)
    assert q.format_word(q.relators[0]) == "aabA"


@pytest.mark.parametrize("j, k", [(0, 0), (0, 5), (-1, 0)])
def test_transvect_errors(j, k):
    p = parse_presentation("gens: a\nrel: a\nrel: a")
    with pytest.raises(TietzeError):
        tietze_transvect(p, j, k)


def test_consequence_certificate():
    p = parse_presentation("gens: a b\nrel: a")
    w = Word((B, A, b_))
    q = add_consequence_relator(p, w, [(Word((B,)), 0, 1)])
    assert q.relators[-1] == w
    with pytest.raises(TietzeError):
        add_consequence_relator(p, Word((B,)), [(Word(), 0, 1)])


@given(presentations)
def test_render_parse_roundtrip(p):
    text = render_presentation(p)
    assert parse_presentation(text) == p
    assert render_presentation(parse_presentation(text)) == text
