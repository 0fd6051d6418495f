"""Free-group words, finite presentations, the text format, and Tietze moves.

A word is a tuple of ``(generator_index, sign)`` letters with ``sign`` in
``{+1, -1}``.  Words are always kept freely reduced; cyclic reduction is a
separate, explicit operation.

Text format::

    # comment
    gens: a b
    rel: a b A B
    rel:            <- empty relator

Lowercase single letters are generators and the matching uppercase letter is
the inverse.  Any generator may also be written ``name^k`` with an integer
exponent, which is how multi-character names are inverted (``x1^-1``).
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Sequence

Letter = tuple[int, int]

_NAME_RE = re.compile(r"[A-Za-z_][A-Za-z0-9_]*")
_EXP_RE = re.compile(r"\^(-?\d+)")


class PresentationError(ValueError):
    """Base class for malformed presentations and presentation files."""


class PresentationSyntaxError(PresentationError):
    def __init__(self, message: str, line: int, column: int):
        super().__init__(f"line {line}, column {column}: {message}")
        self.line = line
        self.column = column


class UnknownGeneratorError(PresentationSyntaxError):
    pass


class DuplicateGeneratorError(PresentationError):
    pass


class TietzeError(PresentationError):
    pass


@dataclass(frozen=True)
class Word:
    """A freely reduced word in a free group."""

    letters: tuple[Letter, ...] = ()

    def __post_init__(self):
        letters = tuple((int(i), int(s)) for i, s in self.letters)
        for i, s in letters:
            if i < 0 or s not in (1, -1):
                raise ValueError(f"bad letter {(i, s)!r}")
        for (i, s), (j, t) in zip(letters, letters[1:]):
            if i == j and s == -t:
                raise ValueError("word is not freely reduced; use free_reduce")
        object.__setattr__(self, "letters", letters)

    def __len__(self) -> int:
        return len(self.letters)

    def __iter__(self):
        return iter(self.letters)

    def __bool__(self) -> bool:
        return bool(self.letters)

    def __mul__(self, other: Word) -> Word:
        return free_reduce(self.letters + other.letters)

    def inverse(self) -> Word:
        return Word(tuple((i, -s) for i, s in reversed(self.letters)))

    def __pow__(self, n: int) -> Word:
        base = self if n >= 0 else self.inverse()
        return free_reduce(base.letters * abs(n))

    def max_generator(self) -> int:
        """Largest generator index used, or -1 for the empty word."""
        return max((i for i, _ in self.letters), default=-1)

    def exponent_sum(self, i: int) -> int:
        return sum(s for j, s in self.letters if j == i)

    @classmethod
    def generator(cls, i: int, sign: int = 1) -> Word:
        return cls(((i, sign),))


def free_reduce(letters: Iterable[Letter]) -> Word:
    """Cancel adjacent inverse pairs until none remain (single stack pass)."""
    stack: list[Letter] = []
    for i, s in letters:
        if stack and stack[-1][0] == i and stack[-1][1] == -s:
            stack.pop()
        else:
            stack.append((i, s))
    return Word(tuple(stack))


def cyclic_reduce(w: Word) -> Word:
    letters = w.letters
    lo, hi = 0, len(letters)
    while hi - lo >= 2 and letters[lo][0] == letters[hi - 1][0] and letters[lo][1] == -letters[hi - 1][1]:
        lo += 1
        hi -= 1
    return Word(letters[lo:hi])


@dataclass(frozen=True)
class Presentation:
    generators: tuple[str, ...]
    relators: tuple[Word, ...] = ()

    def __post_init__(self):
        gens = tuple(self.generators)
        rels = tuple(r if isinstance(r, Word) else free_reduce(r) for r in self.relators)
        seen = set()
        for g in gens:
            if not _NAME_RE.fullmatch(g):
                raise PresentationError(f"invalid generator name {g!r}")
            if g in seen:
                raise DuplicateGeneratorError(f"duplicate generator name {g!r}")
            seen.add(g)
        for r in rels:
            if r.max_generator() >= len(gens):
                raise PresentationError(f"relator uses generator index {r.max_generator()} "
                                        f"but only {len(gens)} generators exist")
        object.__setattr__(self, "generators", gens)
        object.__setattr__(self, "relators", rels)

    @property
    def num_generators(self) -> int:
        return len(self.generators)

    @property
    def num_relators(self) -> int:
        return len(self.relators)

    @property
    def euler_characteristic(self) -> int:
        return 1 - self.num_generators + self.num_relators

    def is_balanced(self) -> bool:
        return self.num_generators == self.num_relators

    def word(self, text: str) -> Word:
        """Parse a single word over this presentation's generators."""
        return parse_word(text, self.generators)

    def format_word(self, w: Word) -> str:
        return render_word(w, self.generators)

    def cyclically_reduced(self) -> Presentation:
        return Presentation(self.generators, tuple(cyclic_reduce(r) for r in self.relators))

    def __str__(self) -> str:
        rels = ", ".join(self.format_word(r) or "1" for r in self.relators)
        return f"<{', '.join(self.generators)} | {rels}>"


# ---------------------------------------------------------------------------
# text format

def _compact(generators: Sequence[str]) -> bool:
    return all(len(g) == 1 and g.islower() for g in generators)


def _parse_word_at(text: str, generators: Sequence[str], line: int, col0: int) -> Word:
    index = {g: i for i, g in enumerate(generators)}
    # uppercase shorthand only when it cannot collide with a real generator name
    inverse_alias = {g.upper(): i for i, g in enumerate(generators)
                     if len(g) == 1 and g.islower() and g.upper() not in index}
    names = sorted(index, key=len, reverse=True)
    letters: list[Letter] = []
    pos = 0
    n = len(text)
    while pos < n:
        ch = text[pos]
        if ch.isspace() or ch == "*":
            pos += 1
            continue
        if ch == "1" and (pos + 1 == n or not text[pos + 1].isalnum()):
            pos += 1
            continue
        for name in names:
            end = pos + len(name)
            if text.startswith(name, pos) and (len(name) == 1 or end == n or not (text[end].isalnum() or text[end] == "_")):
                gen, sign = index[name], 1
                break
        else:
            if ch in inverse_alias:
                gen, sign, end = inverse_alias[ch], -1, pos + 1
            elif ch.isalpha() or ch == "_":
                m = _NAME_RE.match(text, pos)
                raise UnknownGeneratorError(f"unknown generator {m.group(0)!r}", line, col0 + pos + 1)
            else:
                raise PresentationSyntaxError(f"unexpected character {ch!r}", line, col0 + pos + 1)
        m = _EXP_RE.match(text, end)
        if m:
            k = int(m.group(1))
            letters.extend([(gen, sign if k > 0 else -sign)] * abs(k))
            end = m.end()
        elif text.startswith("^", end):
            raise PresentationSyntaxError("malformed exponent", line, col0 + end + 1)
        else:
            letters.append((gen, sign))
        pos = end
    return free_reduce(letters)


def parse_word(text: str, generators: Sequence[str]) -> Word:
    return _parse_word_at(text, generators, 1, 0)


def render_word(w: Word, generators: Sequence[str]) -> str:
    if _compact(generators):
        return "".join(generators[i] if s > 0 else generators[i].upper() for i, s in w)
    return " ".join(generators[i] if s > 0 else f"{generators[i]}^-1" for i, s in w)


def parse_presentation(text: str) -> Presentation:
    """Parse the ``gens:`` / ``rel:`` text format.

    Relators are freely reduced but otherwise kept verbatim, in order,
    duplicates included.
    """
    generators: tuple[str, ...] | None = None
    relators: list[Word] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0]
        stripped = line.strip()
        if not stripped:
            continue
        col = len(line) - len(line.lstrip())
        key, sep, rest = stripped.partition(":")
        key = key.strip()
        if not sep or key not in ("gens", "rel"):
            raise PresentationSyntaxError("expected 'gens:' or 'rel:'", lineno, col + 1)
        offset = col + len(stripped) - len(rest)
        if key == "gens":
            if generators is not None:
                raise PresentationSyntaxError("second 'gens:' line", lineno, col + 1)
            names = rest.replace(",", " ").split()
            for name in names:
                if not _NAME_RE.fullmatch(name):
                    raise PresentationSyntaxError(f"invalid generator name {name!r}", lineno,
                                                  offset + rest.index(name) + 1)
            if len(set(names)) != len(names):
                dup = next(g for g in names if names.count(g) > 1)
                raise DuplicateGeneratorError(f"line {lineno}: duplicate generator name {dup!r}")
            generators = tuple(names)
        else:
            if generators is None:
                raise PresentationSyntaxError("'rel:' before 'gens:'", lineno, col + 1)
            relators.append(_parse_word_at(rest, generators, lineno, offset))
    if generators is None:
        raise PresentationSyntaxError("missing 'gens:' line", 1, 1)
    return Presentation(generators, tuple(relators))


def render_presentation(p: Presentation) -> str:
    """Canonical text form; ``parse_presentation`` inverts it exactly."""
    out = ["gens: " + " ".join(p.generators) if p.generators else "gens:"]
    for r in p.relators:
        body = render_word(r, p.generators)
        out.append(f"rel: {body}" if body else "rel:")
    return "\n".join(out) + "\n"


# ---------------------------------------------------------------------------
# Tietze moves

def _fresh_names(existing: Sequence[str], k: int) -> list[str]:
    taken = set(existing)
    names = []
    n = 1
    while len(names) < k:
        name = f"g{n}"
        if name not in taken:
            names.append(name)
            taken.add(name)
        n += 1
    return names


def tietze_stabilize(p: Presentation, k: int) -> Presentation:
    """Apply ``k`` elementary expansions: a new generator ``g`` with relator ``g``."""
    if k < 0:
        raise ValueError("k must be non-negative")
    if k == 0:
        return p
    n = p.num_generators
    new = tuple(Word.generator(n + t) for t in range(k))
    return Presentation(p.generators + tuple(_fresh_names(p.generators, k)), p.relators + new)


def tietze_transvect(p: Presentation, j: int, k: int, w: Word = Word(), sign: int = 1) -> Presentation:
    """Replace relator ``j`` by ``r_j (w r_k w^-1)^sign`` (0-based indices)."""
    m = p.num_relators
    if not (0 <= j < m and 0 <= k < m):
        raise TietzeError(f"relator index out of range (have {m} relators)")
    if j == k:
        raise TietzeError("transvection needs two distinct relators")
    if sign not in (1, -1):
        raise TietzeError("sign must be +1 or -1")
    if w.max_generator() >= p.num_generators:
        raise TietzeError("conjugating word uses an unknown generator")
    conj = (w * p.relators[k] * w.inverse()) ** sign
    rels = list(p.relators)
    rels[j] = rels[j] * conj
    return Presentation(p.generators, tuple(rels))


def add_consequence_relator(p: Presentation, word: Word,
                            certificate: Sequence[tuple[Word, int, int]] = ()) -> Presentation:
    """Append ``word`` as a relator, given a proof that it is a consequence.

    ``certificate`` is a sequence ``(u, index, sign)`` standing for the product
    of ``u r_index^sign u^-1``; it must freely reduce to ``word``.
    """
    product = Word()
    for u, idx, sign in certificate:
        if not 0 <= idx < p.num_relators:
            raise TietzeError(f"certificate relator index {idx} out of range")
        if sign not in (1, -1):
            raise TietzeError("certificate sign must be +1 or -1")
        product = product * u * (p.relators[idx] ** sign) * u.inverse()
    if product != word:
        raise TietzeError("certificate does not reduce to the proposed relator")
    if word.max_generator() >= p.num_generators:
        raise TietzeError("relator uses an unknown generator")
    return Presentation(p.generators, p.relators + (word,))


def add_trivial_relator(p: Presentation, k: int) -> Presentation:
    """Append ``k`` empty relators (trivially attached 2-spheres)."""
    if k < 0:
        raise ValueError("k must be non-negative")
    for _ in range(k):
        p = add_consequence_relator(p, Word())
    return p
