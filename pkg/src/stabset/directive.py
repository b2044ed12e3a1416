"""Eventually periodic directive sequences ``pre (period)^w``."""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Dict, List, Mapping, Optional, Sequence, Tuple

from .morphisms import GeneratorName, Morphism, compose_all, parse_generator
from .words import Alphabet


@dataclass(frozen=True)
class DirectiveSpec:
    """The sequence ``σ1 σ2 ...`` given as ``preperiod`` then ``period`` repeated.

    Named generators are looked up in ``registry``.
    """

    preperiod: Tuple[GeneratorName, ...]
    period: Tuple[GeneratorName, ...]
    alphabet: Alphabet
    registry: Mapping[str, Morphism] = field(default_factory=dict, compare=False, hash=False)

    def __post_init__(self):
        if not self.period:
            raise ValueError("directive period must be nonempty")
        object.__setattr__(self, "preperiod", tuple(self.preperiod))
        object.__setattr__(self, "period", tuple(self.period))
        # resolve everything once so bad names fail early
        cache = {}
        for g in self.preperiod + self.period:
            if g not in cache:
                cache[g] = g.morphism(self.alphabet, self.registry)
        object.__setattr__(self, "_cache", cache)

    def generator(self, n: int) -> GeneratorName:
        """``σ_n`` for ``n >= 1``."""
        if n < 1:
            raise IndexError("directive positions start at 1")
        if n <= len(self.preperiod):
            return self.preperiod[n - 1]
        return self.period[(n - 1 - len(self.preperiod)) % len(self.period)]

    def morphism(self, n: int) -> Morphism:
        return self._cache[self.generator(n)]

    def product(self, start: int, stop: int) -> Morphism:
        """``σ_{start+1} ∘ ... ∘ σ_stop``."""
        return compose_all([self.morphism(n) for n in range(start + 1, stop + 1)], self.alphabet)

    def apply_range(self, start: int, stop: int, w: str, limit: Optional[int] = None) -> str:
        """``σ_{start+1} ... σ_stop (w)``, optionally truncated to ``limit`` letters."""
        for n in range(stop, start, -1):
            if limit is not None:
                w = w[:limit]
            w = self.morphism(n)(w)
        return w if limit is None else w[:limit]

    @property
    def generators(self) -> List[GeneratorName]:
        seen = []
        for g in self.preperiod + self.period:
            if g not in seen:
                seen.append(g)
        return seen

    def shifted(self, k: int) -> "DirectiveSpec":
        """The directive ``σ_{k+1} σ_{k+2} ...``."""
        if k <= len(self.preperiod):
            return DirectiveSpec(self.preperiod[k:], self.period, self.alphabet, self.registry)
        r = (k - len(self.preperiod)) % len(self.period)
        return DirectiveSpec((), self.period[r:] + self.period[:r], self.alphabet, self.registry)

    def compact(self) -> "DirectiveSpec":
        """Same sequence with the shortest period and preperiod."""
        per = list(self.period)
        for d in range(1, len(per) + 1):
            if len(per) % d == 0 and per == per[:d] * (len(per) // d):
                per = per[:d]
                break
        pre = list(self.preperiod)
        while pre and pre[-1] == per[-1]:
            pre.pop()
            per = per[-1:] + per[:-1]
        return DirectiveSpec(tuple(pre), tuple(per), self.alphabet, self.registry)

    def __str__(self):
        pre = " ".join(g.token for g in self.preperiod)
        per = " ".join(g.token for g in self.period)
        return (pre + " " if pre else "") + f"({per})^w"

    @classmethod
    def parse(cls, text: str, alphabet: Optional[Alphabet] = None,
              registry: Optional[Mapping[str, Morphism]] = None) -> "DirectiveSpec":
        """Read ``La Rb (La Lb)^w``; ``^ω`` is accepted for ``^w``.

        Without an explicit alphabet the letters named by the generators are
        used, together with ``a`` and ``b``.
        """
        registry = dict(registry or {})
        m = re.fullmatch(r"\s*([^()]*?)\s*\(([^()]+)\)\s*\^\s*[wω]\s*", text)
        if m is None:
            raise ValueError(f"malformed directive {text!r}: expected 'pre (period)^w'")
        pre = [parse_generator(t, registry) for t in m.group(1).split()]
        per = [parse_generator(t, registry) for t in m.group(2).split()]
        if not per:
            raise ValueError("directive period must be nonempty")
        if alphabet is None:
            letters = set("ab")
            for g in pre + per:
                letters.update(g.letters)
            for f in registry.values():
                letters.update(f.alphabet.letters)
            alphabet = Alphabet("".join(sorted(letters)))
        return cls(tuple(pre), tuple(per), alphabet, registry)


def first_letter_product(spec: DirectiveSpec, start: int, stop: int) -> Dict[str, str]:
    """First-letter map of ``σ_{start+1} ∘ ... ∘ σ_stop``."""
    out = {x: x for x in spec.alphabet}
    for n in range(stop, start, -1):
        f = spec.morphism(n)
        out = {x: f.images[spec.alphabet.index(out[x])][0] for x in spec.alphabet}
    return out


def tokens(gens: Sequence[GeneratorName]) -> str:
    return " ".join(g.token for g in gens)
