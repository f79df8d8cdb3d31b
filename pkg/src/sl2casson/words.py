"""Free-group words, integral group rings and Fox derivatives.

Generators are 1-based: ``(i, +1)`` is x_i and ``(i, -1)`` is x_i^-1.
Words are kept freely reduced and expanded into +-1 letters, so a power
x^3 is stored as three letters.
"""
from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass
from typing import Iterable, Iterator, Mapping, Sequence

Letter = tuple[int, int]


def reduce_word(letters: Iterable[Letter]) -> "Word":
    """Freely reduce a raw letter sequence."""
    out: list[Letter] = []
    for g, e in letters:
        g, e = int(g), int(e)
        if g < 1:
            raise ValueError(f"generator index must be positive, got {g}")
        if e not in (1, -1):
            raise ValueError(f"letters carry exponent +-1, got {e}")
        if out and out[-1] == (g, -e):
            out.pop()
        else:
            out.append((g, e))
    return Word._trusted(tuple(out))


@dataclass(frozen=True)
class Word:
    letters: tuple[Letter, ...] = ()

    def __post_init__(self):
        reduced = reduce_word(self.letters).letters
        object.__setattr__(self, "letters", reduced)

    @classmethod
    def _trusted(cls, letters: tuple[Letter, ...]) -> "Word":
        w = object.__new__(cls)
        object.__setattr__(w, "letters", letters)
        return w

    @classmethod
    def gen(cls, i: int, power: int = 1) -> "Word":
        if i < 1:
            raise ValueError(f"generator index must be positive, got {i}")
        return cls._trusted(((i, 1 if power >= 0 else -1),) * abs(power))

    @classmethod
    def identity(cls) -> "Word":
        return cls._trusted(())

    def __mul__(self, other):
        if isinstance(other, Word):
            return reduce_word(self.letters + other.letters)
        return NotImplemented

    def __pow__(self, n: int) -> "Word":
        base = self if n >= 0 else self.inverse()
        out = Word.identity()
        for _ in range(abs(n)):
            out = out * base
        return out

    def inverse(self) -> "Word":
        return Word._trusted(tuple((g, -e) for g, e in reversed(self.letters)))

    def __len__(self) -> int:
        return len(self.letters)

    def __iter__(self) -> Iterator[Letter]:
        return iter(self.letters)

    def is_identity(self) -> bool:
        return not self.letters

    def max_generator(self) -> int:
        return max((g for g, _ in self.letters), default=0)

    def exponent_sum(self, i: int) -> int:
        return sum(e for g, e in self.letters if g == i)

    def __str__(self) -> str:
        if not self.letters:
            return "1"
        return " ".join(f"x{g}" if e == 1 else f"x{g}^-1" for g, e in self.letters)

    def __repr__(self) -> str:
        return f"Word({self})"

    @classmethod
    def parse(cls, text: str) -> "Word":
        """Parse whitespace-separated tokens ``x3`` / ``x3^-1`` (``1`` is the identity)."""
        letters = []
        for tok in text.split():
            if tok == "1":
                continue
            if not tok.startswith("x"):
                raise ValueError(f"bad token {tok!r}")
            body, _, exp = tok[1:].partition("^")
            e = int(exp) if exp else 1
            g = int(body)
            letters.extend([(g, 1 if e > 0 else -1)] * abs(e))
        return reduce_word(letters)


class GroupRingElt:
    """Finite integer combination of words; immutable."""

    __slots__ = ("_terms",)

    def __init__(self, terms: Mapping[Word, int] | Iterable[tuple[Word, int]] = ()):
        acc: dict[Word, int] = defaultdict(int)
        items = terms.items() if isinstance(terms, Mapping) else terms
        for w, c in items:
            acc[w] += int(c)
        self._terms = {w: c for w, c in acc.items() if c != 0}

    @classmethod
    def from_word(cls, w: Word, coeff: int = 1) -> "GroupRingElt":
        return cls({w: coeff})

    @classmethod
    def one(cls) -> "GroupRingElt":
        return cls({Word.identity(): 1})

    @classmethod
    def zero(cls) -> "GroupRingElt":
        return cls()

    def items(self):
        return self._terms.items()

    def __iter__(self):
        return iter(self._terms.items())

    def __len__(self):
        return len(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def augmentation(self) -> int:
        return sum(self._terms.values())

    @staticmethod
    def _coerce(x) -> "GroupRingElt":
        if isinstance(x, GroupRingElt):
            return x
        if isinstance(x, Word):
            return GroupRingElt.from_word(x)
        if isinstance(x, int):
            return GroupRingElt({Word.identity(): x})
        raise TypeError(f"cannot use {type(x).__name__} as a group ring element")

    def __add__(self, other):
        other = self._coerce(other)
        return GroupRingElt(list(self._terms.items()) + list(other._terms.items()))

    __radd__ = __add__

    def __neg__(self):
        return GroupRingElt({w: -c for w, c in self._terms.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        other = self._coerce(other)
        out = []
        for u, a in self._terms.items():
            for v, b in other._terms.items():
                out.append((u * v, a * b))
        return GroupRingElt(out)

    def __rmul__(self, other):
        return self._coerce(other) * self

    def __eq__(self, other):
        try:
            other = self._coerce(other)
        except TypeError:
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        return hash(frozenset(self._terms.items()))

    def __str__(self):
        if not self._terms:
            return "0"
        parts = []
        for w, c in sorted(self._terms.items(), key=lambda t: (len(t[0]), t[0].letters)):
            parts.append(f"{c:+d}*({w})")
        return " ".join(parts)

    __repr__ = __str__


def fox_derivative(w: Word, i: int) -> GroupRingElt:
    """d w / d x_i, read letter by letter from the left."""
    terms = []
    prefix: list[Letter] = []
    for g, e in w:
        if g == i:
            if e == 1:
                terms.append((Word._trusted(tuple(prefix)), 1))
            else:
                # prefix times x_i^-1 is again a prefix of a reduced word
                terms.append((Word._trusted(tuple(prefix) + ((g, -1),)), -1))
        prefix.append((g, e))
    return GroupRingElt(terms)


@dataclass(frozen=True)
class Presentation:
    n_gens: int
    relators: tuple[Word, ...]

    def __post_init__(self):
        if self.n_gens < 1:
            raise ValueError("need at least one generator")
        object.__setattr__(self, "relators", tuple(self.relators))
        for j, r in enumerate(self.relators):
            if r.max_generator() > self.n_gens:
                raise ValueError(f"relator {j + 1} uses a generator beyond x{self.n_gens}")

    @property
    def n_rels(self) -> int:
        return len(self.relators)

    def relation_matrix(self) -> list[list[int]]:
        """Abelianized relators: row j holds the exponent sums of r_j."""
        return [[r.exponent_sum(i) for i in range(1, self.n_gens + 1)] for r in self.relators]

    def to_text(self) -> str:
        return "\n".join([f"gens: {self.n_gens}"] + [str(r) for r in self.relators]) + "\n"

    @classmethod
    def parse(cls, text: str) -> "Presentation":
        lines = [ln.strip() for ln in text.splitlines()]
        lines = [ln for ln in lines if ln and not ln.startswith("#")]
        if not lines or not lines[0].startswith("gens:"):
            raise ValueError("presentation must start with a 'gens: n' header")
        n = int(lines[0].split(":", 1)[1])
        return cls(n, tuple(Word.parse(ln) for ln in lines[1:]))


def boundary_matrices(P: Presentation):
    """Return (d2, d1): d2[i][j] = d r_j / d x_i (g x r), d1[i] = 1 - x_i."""
    d2 = [[fox_derivative(r, i) for r in P.relators] for i in range(1, P.n_gens + 1)]
    d1 = [GroupRingElt.one() - Word.gen(i) for i in range(1, P.n_gens + 1)]
    return d2, d1


def letters_of(words: Sequence[Word]) -> int:
    return sum(len(w) for w in words)
