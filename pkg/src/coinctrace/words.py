"""Exact arithmetic for free-group words, endomorphisms, and the integer group ring.

Words are sequences of signed generator letters and may be kept unreduced;
nothing reduces implicitly on construction.  All values are immutable and
hashable, so they can be used as dictionary keys and shared freely.
"""

from __future__ import annotations

import re
from typing import Iterable, Iterator, NamedTuple


class AlphabetMismatch(ValueError):
    """Two values over different alphabets were combined."""


class WordSyntaxError(ValueError):
    """A word or spec string failed to parse.  Carries a 0-based column."""

    def __init__(self, message: str, column: int = 0):
        super().__init__(message)
        self.column = column


class Letter(NamedTuple):
    """A generator (sign +1) or the inverse of a generator (sign -1)."""

    gen: int
    sign: int

    def inverse(self) -> "Letter":
        return Letter(self.gen, -self.sign)


_NAME_RE = re.compile(r"[A-Za-z_][A-Za-z0-9_]*")
_TOKEN_RE = re.compile(r"(?P<name>[A-Za-z_][A-Za-z0-9_]*)(?:\^(?P<exp>-1|[1-9][0-9]*))?$")


class Alphabet:
    """An ordered list of distinct generator names.

    The order is fixed and used for all matrix/vector indexing elsewhere.
    """

    __slots__ = ("names", "_index")

    def __init__(self, names: Iterable[str]):
        names = tuple(names)
        if not names:
            raise ValueError("alphabet needs at least one generator")
        for name in names:
            if not name or not _NAME_RE.fullmatch(name):
                raise ValueError(f"bad generator name: {name!r}")
        if len(set(names)) != len(names):
            raise ValueError(f"duplicate generator in {names}")
        self.names = names
        self._index = {name: i for i, name in enumerate(names)}

    def __len__(self) -> int:
        return len(self.names)

    def __eq__(self, other) -> bool:
        return isinstance(other, Alphabet) and self.names == other.names

    def __hash__(self) -> int:
        return hash(self.names)

    def __repr__(self) -> str:
        return f"Alphabet({list(self.names)})"

    def index(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise KeyError(f"unknown generator {name!r}") from None

    def identity(self) -> "Word":
        return Word(self, ())

    def gen(self, which: int | str, sign: int = 1) -> "Word":
        """One-letter word for a generator (by index or name)."""
        idx = which if isinstance(which, int) else self.index(which)
        return Word(self, (Letter(idx, sign),))

    def word(self, text: str) -> "Word":
        """Parse `a b^-1 c` syntax; `1` is the empty word. Raises WordSyntaxError."""
        return parse_word(self, text)


def _check_alphabet(a: Alphabet, b: Alphabet) -> None:
    if a != b:
        raise AlphabetMismatch(f"alphabet mismatch: {a} vs {b}")


def _reduce_letters(letters: Iterable[Letter]) -> tuple[Letter, ...]:
    """Stack-based free reduction; result is the unique reduced form."""
    out: list[Letter] = []
    for lt in letters:
        if out and out[-1].gen == lt.gen and out[-1].sign == -lt.sign:
            out.pop()
        else:
            out.append(lt)
    return tuple(out)


def _invert_letters(letters: tuple[Letter, ...]) -> tuple[Letter, ...]:
    return tuple(Letter(lt.gen, -lt.sign) for lt in reversed(letters))


class Word:
    """A finite (possibly unreduced) sequence of letters over a fixed alphabet."""

    __slots__ = ("alphabet", "letters", "_hash")

    def __init__(self, alphabet: Alphabet, letters: Iterable[Letter]):
        letters = tuple(letters)
        n = len(alphabet)
        for lt in letters:
            if not 0 <= lt.gen < n:
                raise ValueError(f"letter {lt} out of range for {alphabet}")
            if lt.sign not in (-1, 1):
                raise ValueError(f"letter sign must be +1 or -1, got {lt.sign}")
        self.alphabet = alphabet
        self.letters = letters
        self._hash = hash((alphabet.names, letters))

    # -- basic protocol ----------------------------------------------------

    def __len__(self) -> int:
        return len(self.letters)

    def __iter__(self) -> Iterator[Letter]:
        return iter(self.letters)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Word)
            and self._hash == other._hash
            and self.letters == other.letters
            and self.alphabet == other.alphabet
        )

    def __hash__(self) -> int:
        return self._hash

    def __repr__(self) -> str:
        return f"Word({self})"

    def __str__(self) -> str:
        if not self.letters:
            return "1"
        parts = []
        i = 0
        letters = self.letters
        names = self.alphabet.names
        while i < len(letters):
            lt = letters[i]
            if lt.sign < 0:
                parts.append(f"{names[lt.gen]}^-1")
                i += 1
                continue
            run = 1
            while i + run < len(letters) and letters[i + run] == lt:
                run += 1
            parts.append(names[lt.gen] if run == 1 else f"{names[lt.gen]}^{run}")
            i += run
        return " ".join(parts)

    # -- group operations --------------------------------------------------

    @property
    def is_reduced(self) -> bool:
        for x, y in zip(self.letters, self.letters[1:]):
            if x.gen == y.gen and x.sign == -y.sign:
                return False
        return True

    def reduce(self) -> "Word":
        if self.is_reduced:
            return self
        return Word(self.alphabet, _reduce_letters(self.letters))

    def __mul__(self, other: "Word") -> "Word":
        _check_alphabet(self.alphabet, other.alphabet)
        return Word(self.alphabet, _reduce_letters(self.letters + other.letters))

    def concat(self, other: "Word") -> "Word":
        """Unreduced concatenation (plain juxtaposition, no cancellation)."""
        _check_alphabet(self.alphabet, other.alphabet)
        return Word(self.alphabet, self.letters + other.letters)

    def inverse(self) -> "Word":
        return Word(self.alphabet, _invert_letters(self.letters))

    def __pow__(self, n: int) -> "Word":
        if n == 0:
            return Word(self.alphabet, ())
        base = self if n > 0 else self.inverse()
        return Word(self.alphabet, _reduce_letters(base.letters * abs(n)))

    def shortlex_key(self):
        """Sort key: length first, then letter order (a < a^-1 < b < ...)."""
        return (len(self.letters), tuple(2 * lt.gen + (lt.sign < 0) for lt in self.letters))

    def exponent_sums(self) -> tuple[int, ...]:
        """Abelianization: signed letter count per generator."""
        v = [0] * len(self.alphabet)
        for lt in self.letters:
            v[lt.gen] += lt.sign
        return tuple(v)


def parse_word(alphabet: Alphabet, text: str, column_offset: int = 0) -> Word:
    """Parse whitespace-separated tokens `name`, `name^-1`, `name^k`; `1` alone
    is the empty word.  Column numbers in errors are offsets into `text` plus
    `column_offset`."""
    letters: list[Letter] = []
    tokens = list(re.finditer(r"\S+", text))
    if len(tokens) == 1 and tokens[0].group() == "1":
        return Word(alphabet, ())
    if not tokens:
        raise WordSyntaxError("empty word expression (use 1 for the identity)", column_offset)
    for tok in tokens:
        col = column_offset + tok.start()
        piece = tok.group()
        if piece == "1":
            raise WordSyntaxError("1 is only valid as a whole word", col)
        m = _TOKEN_RE.fullmatch(piece)
        if m is None:
            raise WordSyntaxError(f"malformed token {piece!r}", col)
        name = m.group("name")
        if name not in alphabet._index:
            raise WordSyntaxError(f"unknown generator {name!r}", col)
        gen = alphabet.index(name)
        exp = m.group("exp")
        if exp is None:
            letters.append(Letter(gen, 1))
        elif exp == "-1":
            letters.append(Letter(gen, -1))
        else:
            letters.extend([Letter(gen, 1)] * int(exp))
    return Word(alphabet, letters)


# -- spec-level operation names ---------------------------------------------

def word_reduce(w: Word) -> Word:
    """The unique reduced word equal to w in the free group."""
    return w.reduce()


def word_multiply(u: Word, v: Word) -> Word:
    """Reduced concatenation."""
    return u * v


def word_invert(w: Word) -> Word:
    """Reverse the sequence and flip all signs."""
    return w.inverse()


class Endomorphism:
    """A free-group endomorphism: one image word per generator."""

    __slots__ = ("alphabet", "images", "_hash")

    def __init__(self, alphabet: Alphabet, images: Iterable[Word]):
        images = tuple(images)
        if len(images) != len(alphabet):
            raise ValueError(
                f"need {len(alphabet)} images, got {len(images)}"
            )
        for img in images:
            _check_alphabet(alphabet, img.alphabet)
        self.alphabet = alphabet
        self.images = images
        self._hash = hash((alphabet.names, images))

    @classmethod
    def identity(cls, alphabet: Alphabet) -> "Endomorphism":
        return cls(alphabet, [alphabet.gen(i) for i in range(len(alphabet))])

    @classmethod
    def from_strings(cls, alphabet: Alphabet, *images: str) -> "Endomorphism":
        return cls(alphabet, [alphabet.word(s) for s in images])

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Endomorphism)
            and self.alphabet == other.alphabet
            and self.images == other.images
        )

    def __hash__(self) -> int:
        return self._hash

    def __repr__(self) -> str:
        body = ", ".join(
            f"{n} -> {img}" for n, img in zip(self.alphabet.names, self.images)
        )
        return f"Endomorphism({body})"

    def is_identity(self) -> bool:
        return all(
            img.letters == (Letter(i, 1),) for i, img in enumerate(self.images)
        )

    def __call__(self, w: Word) -> Word:
        return self.apply(w)

    def apply(self, w: Word) -> Word:
        """Substitute each letter by its image and reduce."""
        _check_alphabet(self.alphabet, w.alphabet)
        out: list[Letter] = []
        for lt in w.letters:
            img = self.images[lt.gen].letters
            if lt.sign < 0:
                img = _invert_letters(img)
            for x in img:
                if out and out[-1].gen == x.gen and out[-1].sign == -x.sign:
                    out.pop()
                else:
                    out.append(x)
        return Word(self.alphabet, tuple(out))


def endo_apply(e: Endomorphism, w: Word) -> Word:
    return e.apply(w)


class GroupRingElement:
    """A finite integer combination of reduced words (an element of ZG).

    Keys are always reduced; zero coefficients are never stored.
    """

    __slots__ = ("alphabet", "terms", "_hash")

    def __init__(self, alphabet: Alphabet, terms: dict[Word, int] | None = None):
        canon: dict[Word, int] = {}
        for w, c in (terms or {}).items():
            _check_alphabet(alphabet, w.alphabet)
            if c == 0:
                continue
            w = w.reduce()
            c = canon.get(w, 0) + c
            if c:
                canon[w] = c
            else:
                del canon[w]
        self.alphabet = alphabet
        self.terms = canon
        self._hash = hash((alphabet.names, frozenset(canon.items())))

    @classmethod
    def zero(cls, alphabet: Alphabet) -> "GroupRingElement":
        return cls(alphabet)

    @classmethod
    def one(cls, alphabet: Alphabet) -> "GroupRingElement":
        return cls(alphabet, {alphabet.identity(): 1})

    @classmethod
    def from_word(cls, w: Word, coeff: int = 1) -> "GroupRingElement":
        return cls(w.alphabet, {w: coeff})

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, GroupRingElement)
            and self.alphabet == other.alphabet
            and self.terms == other.terms
        )

    def __hash__(self) -> int:
        return self._hash

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __repr__(self) -> str:
        return f"GroupRingElement({self})"

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for w in sorted(self.terms, key=Word.shortlex_key):
            c = self.terms[w]
            if c == 1:
                text = str(w)
            elif c == -1:
                text = f"-{w}"
            else:
                text = f"{c}·{w}"
            parts.append(text)
        out = " + ".join(parts)
        return out.replace("+ -", "- ")

    def __add__(self, other: "GroupRingElement") -> "GroupRingElement":
        _check_alphabet(self.alphabet, other.alphabet)
        terms = dict(self.terms)
        for w, c in other.terms.items():
            terms[w] = terms.get(w, 0) + c
        return GroupRingElement(self.alphabet, terms)

    def __sub__(self, other: "GroupRingElement") -> "GroupRingElement":
        return self + other.scale(-1)

    def __neg__(self) -> "GroupRingElement":
        return self.scale(-1)

    def scale(self, k: int) -> "GroupRingElement":
        return GroupRingElement(self.alphabet, {w: k * c for w, c in self.terms.items()})

    def left_mul(self, w: Word) -> "GroupRingElement":
        """Term-wise left multiplication by a group element."""
        return GroupRingElement(self.alphabet, {w * g: c for g, c in self.terms.items()})

    def right_mul(self, w: Word) -> "GroupRingElement":
        """Term-wise right multiplication by a group element."""
        return GroupRingElement(self.alphabet, {g * w: c for g, c in self.terms.items()})

    def involution(self) -> "GroupRingElement":
        """i(sum c_k g_k) = sum c_k g_k^-1."""
        return GroupRingElement(
            self.alphabet, {g.inverse(): c for g, c in self.terms.items()}
        )

    def coefficient_sum(self) -> int:
        return sum(self.terms.values())

    def sorted_terms(self) -> list[tuple[int, Word]]:
        """(coefficient, word) pairs in shortlex order of the words."""
        return [(self.terms[w], w) for w in sorted(self.terms, key=Word.shortlex_key)]


def ring_add(x: GroupRingElement, y: GroupRingElement) -> GroupRingElement:
    return x + y


def ring_scale(k: int, x: GroupRingElement) -> GroupRingElement:
    return x.scale(k)


def ring_left_mul(w: Word, x: GroupRingElement) -> GroupRingElement:
    return x.left_mul(w)


def ring_right_mul(x: GroupRingElement, w: Word) -> GroupRingElement:
    return x.right_mul(w)


def ring_involution(x: GroupRingElement) -> GroupRingElement:
    return x.involution()
