"""Finite words, eventually periodic words and lazily expanded prefixes.

Words are plain ``str`` values whose characters are the letters.  An
:class:`Alphabet` is passed alongside whenever letter order or membership
matters.
"""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from enum import Enum
from typing import Callable, Dict, Iterable, Optional, Set

MAX_LETTERS = 26


@dataclass(frozen=True)
class Alphabet:
    """An ordered set of single-character letters."""

    letters: str

    def __post_init__(self):
        if not self.letters:
            raise ValueError("alphabet must be nonempty")
        if len(set(self.letters)) != len(self.letters):
            raise ValueError(f"repeated letter in alphabet {self.letters!r}")
        if len(self.letters) > MAX_LETTERS:
            raise ValueError(f"at most {MAX_LETTERS} letters are supported")
        for x in self.letters:
            if x.isspace() or x in "|()^,":
                raise ValueError(f"illegal letter {x!r}")

    @classmethod
    def of(cls, *words: str) -> "Alphabet":
        """Sorted alphabet of all letters occurring in ``words``."""
        return cls("".join(sorted(set("".join(words)))))

    def __len__(self) -> int:
        return len(self.letters)

    def __iter__(self):
        return iter(self.letters)

    def __contains__(self, x) -> bool:
        return len(x) == 1 and x in self.letters

    def index(self, x: str) -> int:
        return self.letters.index(x)

    def check(self, w: str) -> str:
        bad = set(w) - set(self.letters)
        if bad:
            raise ValueError(f"letters {''.join(sorted(bad))!r} not in alphabet {self.letters!r}")
        return w

    def union(self, other: "Alphabet") -> "Alphabet":
        return Alphabet(self.letters + "".join(x for x in other.letters if x not in self.letters))

    def __str__(self):
        return " ".join(self.letters)


def factor_set(w: str, k: int) -> Set[str]:
    if k < 0:
        raise ValueError("factor length must be nonnegative")
    return {w[i:i + k] for i in range(len(w) - k + 1)}


def abelian_vector(u: str, alphabet: Optional[Alphabet] = None) -> Dict[str, int]:
    counts = Counter(u)
    letters = alphabet.letters if alphabet is not None else sorted(counts)
    if alphabet is not None:
        alphabet.check(u)
    return {x: counts.get(x, 0) for x in letters}


class Comparison(Enum):
    LT = "lt"
    EQ = "eq"
    GT = "gt"
    PREFIX = "strict-prefix-of"
    EXTENSION = "strict-extension-of"


def lex_compare(u: str, v: str, alphabet: Optional[Alphabet] = None,
                other: Optional[Alphabet] = None) -> Comparison:
    """Compare ``u`` and ``v`` letter by letter under the alphabet order.

    When a second alphabet is given for ``v`` it must be identical to the
    first one.
    """
    if other is not None and alphabet is not None and other != alphabet:
        raise ValueError("cannot compare words over different alphabets")
    if alphabet is None:
        alphabet = Alphabet.of(u, v) if (u or v) else Alphabet("a")
    alphabet.check(u)
    alphabet.check(v)
    for x, y in zip(u, v):
        if x != y:
            return Comparison.LT if alphabet.index(x) < alphabet.index(y) else Comparison.GT
    if len(u) == len(v):
        return Comparison.EQ
    return Comparison.PREFIX if len(u) < len(v) else Comparison.EXTENSION


def border_table(w: str) -> list:
    """KMP failure function: ``t[i]`` is the longest border of ``w[:i+1]``."""
    t = [0] * len(w)
    k = 0
    for i in range(1, len(w)):
        while k and w[i] != w[k]:
            k = t[k - 1]
        if w[i] == w[k]:
            k += 1
        t[i] = k
    return t


def smallest_period(w: str) -> int:
    if not w:
        raise ValueError("the empty word has no period")
    return len(w) - border_table(w)[-1]


def primitive_root(w: str) -> str:
    p = smallest_period(w)
    return w[:p] if len(w) % p == 0 else w


@dataclass(frozen=True)
class EventuallyPeriodicWord:
    """The infinite word ``preperiod · period^ω``.

    Equality and hashing go through the normal form: primitive period and
    shortest preperiod.
    """

    preperiod: str
    period: str

    def __post_init__(self):
        if not self.period:
            raise ValueError("period must be nonempty")

    def normalized(self) -> "EventuallyPeriodicWord":
        pre, per = self.preperiod, primitive_root(self.period)
        while pre and pre[-1] == per[-1]:
            pre, per = pre[:-1], per[-1] + per[:-1]
        return EventuallyPeriodicWord(pre, per)

    def __eq__(self, other):
        if not isinstance(other, EventuallyPeriodicWord):
            return NotImplemented
        a, b = self.normalized(), other.normalized()
        return a.preperiod == b.preperiod and a.period == b.period

    def __hash__(self):
        n = self.normalized()
        return hash((n.preperiod, n.period))

    def expand(self, n: int) -> str:
        return expand(self, n)

    def letter(self, i: int) -> str:
        if i < len(self.preperiod):
            return self.preperiod[i]
        return self.period[(i - len(self.preperiod)) % len(self.period)]

    def shift(self, k: int) -> "EventuallyPeriodicWord":
        """Drop the first ``k`` letters."""
        if k <= len(self.preperiod):
            return EventuallyPeriodicWord(self.preperiod[k:], self.period)
        r = (k - len(self.preperiod)) % len(self.period)
        return EventuallyPeriodicWord("", self.period[r:] + self.period[:r])

    @classmethod
    def parse(cls, text: str) -> "EventuallyPeriodicWord":
        """Read ``pre | period``; the preperiod may be empty."""
        if text.count("|") != 1:
            raise ValueError(f"expected 'pre | period', got {text!r}")
        pre, per = (part.strip() for part in text.split("|"))
        if not per:
            raise ValueError("period must be nonempty")
        return cls(pre, per)

    def __str__(self):
        return f"{self.preperiod} | {self.period}"


def expand(epw: EventuallyPeriodicWord, n: int) -> str:
    pre, per = epw.preperiod, epw.period
    if n <= len(pre):
        return pre[:n]
    rest = n - len(pre)
    return pre + per * (rest // len(per)) + per[:rest % len(per)]


class PrefixStream:
    """Deterministic, lazily extended prefix of an infinite word.

    ``extend(n)`` must return a word of length at least ``n`` whose prefixes
    agree for all ``n``.  The stream has a single read cursor; ``clone``
    returns a fresh stream positioned at 0 that shares the cached prefix.
    """

    def __init__(self, extend: Callable[[int], str], source: str = ""):
        self._extend = extend
        self._cache = ""
        self._cursor = 0
        self.source = source

    def prefix(self, n: int) -> str:
        if len(self._cache) < n:
            grown = self._extend(max(n, 2 * len(self._cache)))
            if len(grown) < n or not grown.startswith(self._cache):
                raise RuntimeError(f"inconsistent expansion for stream {self.source!r}")
            self._cache = grown
        return self._cache[:n]

    def read(self, k: int = 1) -> str:
        out = self.prefix(self._cursor + k)[self._cursor:]
        self._cursor += k
        return out

    @property
    def position(self) -> int:
        return self._cursor

    def clone(self) -> "PrefixStream":
        other = PrefixStream(self._extend, self.source)
        other._cache = self._cache
        return other

    def __iter__(self):
        s = self.clone()
        while True:
            yield s.read()

    def __repr__(self):
        return f"PrefixStream({self.source!r}, {self.prefix(16)}...)"

    @classmethod
    def periodic(cls, epw: EventuallyPeriodicWord) -> "PrefixStream":
        return cls(lambda n: expand(epw, n), str(epw))


def read_word_file(path: str) -> str:
    with open(path, encoding="utf-8") as fh:
        text = fh.read()
    if text.endswith("\n"):
        text = text[:-1]
    if text.endswith("\r"):
        text = text[:-1]
    return text


def letters_of(words: Iterable[str]) -> Set[str]:
    out: Set[str] = set()
    for w in words:
        out.update(w)
    return out
