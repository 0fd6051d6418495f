"""Exact arithmetic in R[G] and M_n(R[G]) for free and f.g. abelian groups.

Group elements are stored by canonical normal form, so equality of ring
elements is equality of term dictionaries.  Coefficients are exact scalars
(ints, Fractions or :class:`~aspherix.scalars.Gaussian`).
"""

from __future__ import annotations

import string
from dataclasses import dataclass
from typing import Iterable, Iterator, Mapping, Sequence

from .scalars import Gaussian, Scalar, simplify
from .words import Word, free_reduce, parse_word, render_word


class ModelMismatchError(ValueError):
    pass


class ShapeError(ValueError):
    pass


# ---------------------------------------------------------------------------
# group models

@dataclass(frozen=True)
class FreeModel:
    """Free group of the given rank; normal forms are reduced letter tuples."""

    rank: int

    kind = "free"

    def identity(self) -> tuple:
        return ()

    def generator(self, i: int, sign: int = 1) -> tuple:
        self._check_index(i)
        return ((i, sign),)

    def mul(self, a: tuple, b: tuple) -> tuple:
        k = 0
        n = min(len(a), len(b))
        while k < n and a[-1 - k][0] == b[k][0] and a[-1 - k][1] == -b[k][1]:
            k += 1
        return a[:len(a) - k] + b[k:]

    def inverse(self, a: tuple) -> tuple:
        return tuple((i, -s) for i, s in reversed(a))

    def from_word(self, w: Word) -> tuple:
        if w.max_generator() >= self.rank:
            raise ModelMismatchError(f"word needs {w.max_generator() + 1} generators, model has {self.rank}")
        return w.letters

    def _check_index(self, i: int):
        if not 0 <= i < self.rank:
            raise IndexError(f"generator index {i} out of range for rank {self.rank}")

    def generator_names(self) -> tuple[str, ...]:
        if self.rank <= 26:
            return tuple(string.ascii_lowercase[: self.rank])
        return tuple(f"x{i + 1}" for i in range(self.rank))

    def format(self, nf: tuple, names: Sequence[str] | None = None) -> str:
        return render_word(Word(nf), names or self.generator_names())

    def parse(self, data, names: Sequence[str] | None = None) -> tuple:
        if isinstance(data, str):
            return self.from_word(parse_word(data, names or self.generator_names()))
        return self.from_word(free_reduce(tuple((int(i), int(s)) for i, s in data)))

    def to_json(self) -> dict:
        return {"kind": "free", "rank": self.rank}


@dataclass(frozen=True)
class AbelianModel:
    """Finitely generated abelian group ``Z/orders[0] x Z/orders[1] x ...``.

    An order of 0 means an infinite cyclic factor.  Normal forms are exponent
    vectors reduced modulo the finite orders.
    """

    orders: tuple[int, ...]

    kind = "abelian"

    def __post_init__(self):
        orders = tuple(int(d) for d in self.orders)
        if any(d < 0 for d in orders):
            raise ValueError("orders must be non-negative")
        object.__setattr__(self, "orders", orders)

    @classmethod
    def free_abelian(cls, rank: int) -> AbelianModel:
        return cls((0,) * rank)

    @property
    def rank(self) -> int:
        return len(self.orders)

    def _reduce(self, v: Iterable[int]) -> tuple:
        return tuple(x % d if d else x for x, d in zip(v, self.orders))

    def identity(self) -> tuple:
        return (0,) * self.rank

    def generator(self, i: int, sign: int = 1) -> tuple:
        if not 0 <= i < self.rank:
            raise IndexError(f"generator index {i} out of range for rank {self.rank}")
        v = [0] * self.rank
        v[i] = sign
        return self._reduce(v)

    def mul(self, a: tuple, b: tuple) -> tuple:
        return self._reduce(x + y for x, y in zip(a, b))

    def inverse(self, a: tuple) -> tuple:
        return self._reduce(-x for x in a)

    def from_word(self, w: Word) -> tuple:
        """Image of a free-group word under abelianization."""
        if w.max_generator() >= self.rank:
            raise ModelMismatchError(f"word needs {w.max_generator() + 1} generators, model has {self.rank}")
        v = [0] * self.rank
        for i, s in w:
            v[i] += s
        return self._reduce(v)

    def format(self, nf: tuple, names: Sequence[str] | None = None) -> str:
        return str(list(nf))

    def parse(self, data, names: Sequence[str] | None = None) -> tuple:
        v = [int(x) for x in data]
        if len(v) != self.rank:
            raise ModelMismatchError(f"exponent vector {v} has wrong length for rank {self.rank}")
        return self._reduce(v)

    def to_json(self) -> dict:
        if all(d == 0 for d in self.orders):
            return {"kind": "free_abelian", "rank": self.rank}
        return {"kind": "abelian", "orders": list(self.orders)}


GroupModel = FreeModel | AbelianModel


def model_from_json(data: Mapping) -> GroupModel:
    kind = data.get("kind")
    if kind == "free":
        return FreeModel(int(data["rank"]))
    if kind == "free_abelian":
        return AbelianModel.free_abelian(int(data["rank"]))
    if kind == "abelian":
        if "orders" in data:
            return AbelianModel(tuple(data["orders"]))
        return AbelianModel((0,) * int(data.get("rank", 0)) + tuple(data.get("torsion", ())))
    raise ValueError(f"unsupported group model {kind!r}; only free, free_abelian and abelian are available")


def parse_model_spec(spec: str) -> GroupModel:
    """Parse ``free:2``, ``free_abelian:3`` or ``abelian:0,0,2``."""
    kind, _, arg = spec.partition(":")
    kind = kind.strip()
    try:
        if kind == "free":
            return FreeModel(int(arg))
        if kind == "free_abelian":
            return AbelianModel.free_abelian(int(arg))
        if kind == "abelian":
            return AbelianModel(tuple(int(x) for x in arg.split(",") if x.strip()))
    except ValueError as exc:
        raise ValueError(f"bad model spec {spec!r}: {exc}") from None
    raise ValueError(f"unsupported group model {spec!r}")


# ---------------------------------------------------------------------------
# elements

class GroupRingElement:
    """Finite formal sum of group elements with exact coefficients."""

    __slots__ = ("model", "terms", "_hash")

    def __init__(self, model: GroupModel, terms: Mapping[tuple, Scalar] | None = None):
        self.model = model
        clean = {}
        for g, c in (terms or {}).items():
            c = simplify(c)
            if c:
                clean[g] = c
        self.terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, model, terms: dict) -> GroupRingElement:
        obj = object.__new__(cls)
        obj.model = model
        obj.terms = terms
        obj._hash = None
        return obj

    @classmethod
    def zero(cls, model: GroupModel) -> GroupRingElement:
        return cls._raw(model, {})

    @classmethod
    def one(cls, model: GroupModel) -> GroupRingElement:
        return cls._raw(model, {model.identity(): 1})

    @classmethod
    def scalar(cls, model: GroupModel, c: Scalar) -> GroupRingElement:
        return cls(model, {model.identity(): c})

    @classmethod
    def group_element(cls, model: GroupModel, g: tuple, c: Scalar = 1) -> GroupRingElement:
        return cls(model, {g: c})

    @classmethod
    def from_word(cls, model: GroupModel, w: Word, c: Scalar = 1) -> GroupRingElement:
        return cls(model, {model.from_word(w): c})

    @classmethod
    def gen(cls, model: GroupModel, i: int, sign: int = 1) -> GroupRingElement:
        return cls._raw(model, {model.generator(i, sign): 1})

    def _coerce(self, other) -> GroupRingElement:
        if isinstance(other, GroupRingElement):
            if other.model != self.model:
                raise ModelMismatchError(f"{self.model} vs {other.model}")
            return other
        if isinstance(other, (int, Gaussian)) or hasattr(other, "denominator"):
            return GroupRingElement.scalar(self.model, other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self.terms)
        for g, c in other.terms.items():
            v = simplify(out.get(g, 0) + c)
            if v:
                out[g] = v
            else:
                out.pop(g, None)
        return GroupRingElement._raw(self.model, out)

    __radd__ = __add__

    def __neg__(self):
        return GroupRingElement._raw(self.model, {g: -c for g, c in self.terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other - self

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        mul = self.model.mul
        out: dict = {}
        for g, a in self.terms.items():
            for h, b in other.terms.items():
                k = mul(g, h)
                out[k] = out.get(k, 0) + a * b
        return GroupRingElement(self.model, out)

    def __rmul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other * self

    def __pow__(self, n: int) -> GroupRingElement:
        if n < 0:
            raise ValueError("negative powers are not supported")
        out = GroupRingElement.one(self.model)
        for _ in range(n):
            out = out * self
        return out

    def __eq__(self, other):
        if isinstance(other, GroupRingElement):
            return self.model == other.model and self.terms == other.terms
        if isinstance(other, (int, Gaussian)) or hasattr(other, "denominator"):
            return self == GroupRingElement.scalar(self.model, other)
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.model, frozenset(self.terms.items())))
        return self._hash

    def __bool__(self):
        return bool(self.terms)

    def __iter__(self) -> Iterator[tuple[tuple, Scalar]]:
        return iter(sorted(self.terms.items()))

    def __len__(self):
        return len(self.terms)

    def coefficient(self, g: tuple) -> Scalar:
        return self.terms.get(g, 0)

    def identity_coefficient(self) -> Scalar:
        return self.terms.get(self.model.identity(), 0)

    def involute(self) -> GroupRingElement:
        """``sum c_g g  ->  sum conj(c_g) g^-1``."""
        inv = self.model.inverse
        return GroupRingElement._raw(self.model, {inv(g): c.conjugate() for g, c in self.terms.items()})

    def augment(self) -> Scalar:
        """Sum of coefficients."""
        return simplify(sum(self.terms.values(), 0))

    def format(self, names: Sequence[str] | None = None) -> str:
        if not self.terms:
            return "0"
        parts = []
        ident = self.model.identity()
        for g, c in sorted(self.terms.items()):
            if g == ident:
                parts.append(str(c))
                continue
            word = self.model.format(g, names)
            if c == 1:
                parts.append(word)
            elif c == -1:
                parts.append(f"-{word}")
            else:
                parts.append(f"{c}*{word}")
        return " + ".join(parts).replace("+ -", "- ")

    def __repr__(self):
        return f"GroupRingElement({self.format()})"


def augment(x: GroupRingElement) -> Scalar:
    return x.augment()


def involute(x):
    return x.involute()


# ---------------------------------------------------------------------------
# matrices

class GroupRingMatrix:
    """Dense matrix over a group ring; entries are :class:`GroupRingElement`."""

    __slots__ = ("model", "rows", "cols", "entries")

    def __init__(self, model: GroupModel, entries: Sequence[Sequence[GroupRingElement]],
                 rows: int | None = None, cols: int | None = None):
        grid = tuple(tuple(row) for row in entries)
        rows = len(grid) if rows is None else rows
        if cols is None:
            cols = len(grid[0]) if grid else 0
        if len(grid) != rows or any(len(r) != cols for r in grid):
            raise ShapeError("matrix is not rectangular")
        for r in grid:
            for e in r:
                if e.model != model:
                    raise ModelMismatchError(f"entry over {e.model}, matrix over {model}")
        self.model = model
        self.rows = rows
        self.cols = cols
        self.entries = grid

    @classmethod
    def zeros(cls, model: GroupModel, rows: int, cols: int) -> GroupRingMatrix:
        z = GroupRingElement.zero(model)
        return cls(model, [[z] * cols for _ in range(rows)], rows, cols)

    @classmethod
    def identity(cls, model: GroupModel, n: int) -> GroupRingMatrix:
        return cls.diagonal(model, [GroupRingElement.one(model)] * n)

    @classmethod
    def diagonal(cls, model: GroupModel, diag: Sequence) -> GroupRingMatrix:
        n = len(diag)
        z = GroupRingElement.zero(model)
        d = [x if isinstance(x, GroupRingElement) else GroupRingElement.scalar(model, x) for x in diag]
        return cls(model, [[d[i] if i == j else z for j in range(n)] for i in range(n)], n, n)

    @classmethod
    def from_scalars(cls, model: GroupModel, rows: Sequence[Sequence[Scalar]]) -> GroupRingMatrix:
        grid = [[GroupRingElement.scalar(model, c) for c in r] for r in rows]
        return cls(model, grid, len(grid), len(grid[0]) if grid else 0)

    @property
    def shape(self) -> tuple[int, int]:
        return self.rows, self.cols

    def is_square(self) -> bool:
        return self.rows == self.cols

    def __getitem__(self, idx: tuple[int, int]) -> GroupRingElement:
        i, j = idx
        return self.entries[i][j]

    def _check_same(self, other: GroupRingMatrix):
        if not isinstance(other, GroupRingMatrix):
            raise TypeError("expected GroupRingMatrix")
        if other.model != self.model:
            raise ModelMismatchError(f"{self.model} vs {other.model}")

    def __add__(self, other: GroupRingMatrix) -> GroupRingMatrix:
        self._check_same(other)
        if self.shape != other.shape:
            raise ShapeError(f"{self.shape} + {other.shape}")
        return GroupRingMatrix(self.model, [[a + b for a, b in zip(r, s)]
                                            for r, s in zip(self.entries, other.entries)],
                               self.rows, self.cols)

    def __neg__(self):
        return GroupRingMatrix(self.model, [[-a for a in r] for r in self.entries], self.rows, self.cols)

    def __sub__(self, other: GroupRingMatrix) -> GroupRingMatrix:
        return self + (-other)

    def __matmul__(self, other: GroupRingMatrix) -> GroupRingMatrix:
        self._check_same(other)
        if self.cols != other.rows:
            raise ShapeError(f"{self.shape} @ {other.shape}")
        z = GroupRingElement.zero(self.model)
        out = []
        for i in range(self.rows):
            row = []
            for j in range(other.cols):
                acc = z
                for k in range(self.cols):
                    a = self.entries[i][k]
                    if a:
                        b = other.entries[k][j]
                        if b:
                            acc = acc + a * b
                row.append(acc)
            out.append(row)
        return GroupRingMatrix(self.model, out, self.rows, other.cols)

    def scale(self, c) -> GroupRingMatrix:
        """Left multiplication of every entry by a scalar or ring element."""
        return GroupRingMatrix(self.model, [[c * a for a in r] for r in self.entries], self.rows, self.cols)

    def __eq__(self, other):
        if not isinstance(other, GroupRingMatrix):
            return NotImplemented
        return self.model == other.model and self.shape == other.shape and self.entries == other.entries

    def __hash__(self):
        return hash((self.model, self.shape, self.entries))

    def __bool__(self):
        return any(e for r in self.entries for e in r)

    def transpose(self) -> GroupRingMatrix:
        return GroupRingMatrix(self.model, [list(c) for c in zip(*self.entries)] if self.rows else [],
                               self.cols, self.rows)

    def involute(self) -> GroupRingMatrix:
        """Conjugate transpose with group elements inverted."""
        return GroupRingMatrix(self.model, [[self.entries[i][j].involute() for i in range(self.rows)]
                                            for j in range(self.cols)], self.cols, self.rows)

    def augment(self) -> list[list[Scalar]]:
        return [[e.augment() for e in r] for r in self.entries]

    def direct_sum(self, other: GroupRingMatrix) -> GroupRingMatrix:
        self._check_same(other)
        z = GroupRingElement.zero(self.model)
        top = [list(r) + [z] * other.cols for r in self.entries]
        bottom = [[z] * self.cols + list(r) for r in other.entries]
        return GroupRingMatrix(self.model, top + bottom, self.rows + other.rows, self.cols + other.cols)

    def map_entries(self, model: GroupModel, fn) -> GroupRingMatrix:
        return GroupRingMatrix(model, [[fn(e) for e in r] for r in self.entries], self.rows, self.cols)

    def trace_t(self) -> Scalar:
        """Sum over the diagonal of the identity-element coefficients."""
        if not self.is_square():
            raise ShapeError(f"trace of non-square {self.shape} matrix")
        return simplify(sum((self.entries[i][i].identity_coefficient() for i in range(self.rows)), 0))

    def format(self, names: Sequence[str] | None = None) -> str:
        return "\n".join("[" + ", ".join(e.format(names) for e in r) + "]" for r in self.entries)

    def __repr__(self):
        return f"GroupRingMatrix({self.rows}x{self.cols} over {self.model})"


def augment_matrix(m: GroupRingMatrix) -> list[list[Scalar]]:
    return m.augment()


def trace_t(m: GroupRingMatrix) -> Scalar:
    return m.trace_t()


def hermitian_pair(x: GroupRingMatrix, y: GroupRingMatrix) -> Scalar:
    """``<x, y> = t(x y*)``; conjugate-symmetric and positive definite."""
    x._check_same(y)
    if x.shape != y.shape:
        raise ShapeError(f"{x.shape} vs {y.shape}")
    return (x @ y.involute()).trace_t()


def is_idempotent(e: GroupRingMatrix) -> bool:
    if not e.is_square():
        raise ShapeError(f"idempotency of non-square {e.shape} matrix")
    return e @ e == e


# ---------------------------------------------------------------------------
# JSON

def _scalar_to_json(c: Scalar) -> list:
    c = simplify(c)
    if isinstance(c, int):
        return [c]
    if isinstance(c, Gaussian):
        re, im = c.re, c.im
        imag = int(im) if im.denominator == 1 else [im.numerator, im.denominator]
        return [re.numerator, re.denominator, imag]
    return [c.numerator, c.denominator]


def _scalar_from_json(parts: Sequence) -> Scalar:
    from fractions import Fraction

    if not 1 <= len(parts) <= 3:
        raise ValueError(f"bad coefficient {parts!r}")
    re = Fraction(int(parts[0]), int(parts[1]) if len(parts) > 1 else 1)
    if len(parts) == 3:
        im = parts[2]
        im = Fraction(int(im[0]), int(im[1])) if isinstance(im, list) else Fraction(im)
        return simplify(Gaussian(re, im))
    return simplify(re)


def element_to_json(x: GroupRingElement, names=None) -> list:
    out = []
    for g, c in x:
        nf = x.model.format(g, names) if isinstance(x.model, FreeModel) else list(g)
        out.append([nf] + _scalar_to_json(c))
    return out


def element_from_json(model: GroupModel, data: Sequence, names=None) -> GroupRingElement:
    terms: dict = {}
    for term in data:
        if not isinstance(term, list) or len(term) < 2:
            raise ValueError(f"bad term {term!r}")
        g = model.parse(term[0], names)
        terms[g] = terms.get(g, 0) + _scalar_from_json(term[1:])
    return GroupRingElement(model, terms)


def matrix_to_json(m: GroupRingMatrix, names: Sequence[str] | None = None) -> dict:
    out = {"model": m.model.to_json()}
    if names is not None and isinstance(m.model, FreeModel):
        out["generators"] = list(names)
    out.update(rows=m.rows, cols=m.cols,
               entries=[[element_to_json(e, names) for e in r] for r in m.entries])
    return out


def matrix_from_json(data: Mapping, model: GroupModel | None = None) -> GroupRingMatrix:
    if model is None:
        if "model" not in data:
            raise ValueError("matrix JSON has no 'model' and none was supplied")
        model = model_from_json(data["model"])
    elif "model" in data and model_from_json(data["model"]) != model:
        raise ModelMismatchError(f"file model {data['model']} differs from requested {model.to_json()}")
    names = data.get("generators")
    grid = [[element_from_json(model, e, names) for e in r] for r in data["entries"]]
    rows = int(data.get("rows", len(grid)))
    cols = int(data.get("cols", len(grid[0]) if grid else 0))
    return GroupRingMatrix(model, grid, rows, cols)
