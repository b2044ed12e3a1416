"""Checks of combinatorial properties on finite prefixes.

Every check answers with a :class:`ThreeValued`.  ``Fails`` always comes
with a finite witness; properties of the infinite word that a prefix cannot
confirm are reported as ``Unknown``.
"""
from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Tuple

import numpy as np

from .verdict import Fails, Holds, Outcome, ThreeValued, Unknown
from .words import Alphabet


@dataclass
class PropertyReport:
    property: str
    verdict: ThreeValued
    parameters: Dict[str, Any] = field(default_factory=dict)

    def to_text(self) -> str:
        params = ", ".join(f"{k}={v}" for k, v in self.parameters.items())
        return f"{self.property}({params}): {self.verdict}\n"

    def to_json(self) -> str:
        return json.dumps({"property": self.property, "verdict": self.verdict.outcome.value,
                           "witness": self.verdict.witness, "depth": self.verdict.depth,
                           "parameters": self.parameters}, sort_keys=True)

    @classmethod
    def from_json(cls, text: str) -> "PropertyReport":
        d = json.loads(text)
        witness = d["witness"]
        if isinstance(witness, list):
            witness = tuple(witness)
        verdict = ThreeValued(Outcome(d["verdict"]), witness, d["depth"])
        return cls(d["property"], verdict, d["parameters"])

    def __eq__(self, other):
        if not isinstance(other, PropertyReport):
            return NotImplemented
        return self.to_json() == other.to_json()


def _letters(w: str, alphabet: Optional[Alphabet]) -> str:
    if alphabet is None:
        return "".join(sorted(set(w)))
    alphabet.check(w)
    return alphabet.letters


# -- balance -----------------------------------------------------------------------

def _balanced_fast(w: str, letters: str) -> ThreeValued:
    n = len(w)
    codes = np.frombuffer(w.encode("utf-32-le"), dtype=np.uint32)
    for x in letters:
        ps = np.concatenate(([0], np.cumsum(codes == ord(x), dtype=np.int64)))
        for ell in range(1, n):
            counts = ps[ell:] - ps[:-ell]
            lo, hi = int(counts.argmin()), int(counts.argmax())
            if counts[hi] - counts[lo] > 1:
                return Fails((w[hi:hi + ell], w[lo:lo + ell]))
    return Holds()


def _balanced_oracle(w: str, letters: str) -> ThreeValued:
    # every pair of distinct abelian vectors among the windows of each length
    n = len(w)
    codes = np.frombuffer(w.encode("utf-32-le"), dtype=np.uint32)
    sums = [np.concatenate(([0], np.cumsum(codes == ord(x), dtype=np.int64))) for x in letters]
    base = n + 1
    for ell in range(1, n):
        keys = np.zeros(n - ell + 1, dtype=object if base ** len(letters) >= 2 ** 62 else np.int64)
        for ps in sums:
            keys = keys * base + (ps[ell:] - ps[:-ell])
        _, first = np.unique(keys, return_index=True)
        vectors = [(tuple(int(ps[i + ell] - ps[i]) for ps in sums), int(i)) for i in first]
        for (va, i), (vb, j) in itertools.combinations(vectors, 2):
            gap = next((p - q for p, q in zip(va, vb) if abs(p - q) > 1), 0)
            if gap:
                # the factor with more of the offending letter first
                u, v = w[i:i + ell], w[j:j + ell]
                return Fails((u, v) if gap > 0 else (v, u))
    return Holds()


def is_balanced(w: str, alphabet: Optional[Alphabet] = None, method: str = "fast") -> ThreeValued:
    """Do equal-length factors differ by at most one in every letter count?

    A finite word is checked exactly.  ``method`` is ``"fast"`` (sliding
    window minima and maxima) or ``"oracle"`` (pairwise over distinct
    abelian vectors of factors).
    """
    letters = _letters(w, alphabet)
    if method == "fast":
        return _balanced_fast(w, letters)
    if method == "oracle":
        return _balanced_oracle(w, letters)
    raise ValueError(f"unknown method {method!r}")


# -- special factors --------------------------------------------------------------------

def left_extensions(w: str, maxlen: int) -> Dict[int, Dict[str, set]]:
    out: Dict[int, Dict[str, set]] = {}
    n = len(w)
    for ell in range(1, maxlen + 1):
        ext: Dict[str, set] = {}
        for i in range(1, n - ell + 1):
            ext.setdefault(w[i:i + ell], set()).add(w[i - 1])
        out[ell] = ext
    return out


def left_special_report(w: str, maxlen: int) -> Dict[int, List[str]]:
    """Left special factors of each length ``1 .. maxlen``."""
    return {ell: sorted(u for u, e in ext.items() if len(e) > 1)
            for ell, ext in left_extensions(w, maxlen).items()}


def left_special_check(w: str, maxlen: int) -> ThreeValued:
    for ell, special in left_special_report(w, maxlen).items():
        if len(special) > 1:
            return Fails({"length": ell, "left_special": special})
    return Unknown(maxlen)


def reversal_check(w: str, maxlen: int) -> ThreeValued:
    """Factors whose reversal is missing, ignoring those too close to the end."""
    n = len(w)
    for ell in range(2, maxlen + 1):
        factors = {w[i:i + ell] for i in range(n - ell + 1)}
        for u in sorted(factors):
            if u[::-1] not in factors and n - (w.rfind(u) + ell) >= maxlen:
                return Fails({"factor": u, "missing_reversal": u[::-1]})
    return Unknown(maxlen)


def episturmian_necessary(w: str, maxlen: int) -> ThreeValued:
    """Necessary conditions only: at most one left special factor per length
    and closure under reversal."""
    for check in (left_special_check, reversal_check):
        v = check(w, maxlen)
        if v.fails:
            return v
    return Unknown(maxlen)


def is_LSP_prefixal(w: str, maxlen: int) -> ThreeValued:
    for ell, special in left_special_report(w, maxlen).items():
        for u in special:
            if not w.startswith(u):
                return Fails({"length": ell, "left_special": u})
    return Unknown(maxlen)


# -- recurrence, Lyndon, periodicity ----------------------------------------------------

def is_recurrent_bounded(w: str, k: int, margin: int) -> ThreeValued:
    """Fails when a length-``k`` factor starting before ``len(w) - margin`` occurs once."""
    n = len(w)
    seen: Dict[str, int] = {}
    for i in range(n - k + 1):
        u = w[i:i + k]
        seen[u] = seen.get(u, 0) + 1
    for i in range(max(0, n - margin - k + 1)):
        u = w[i:i + k]
        if seen[u] == 1:
            return Fails({"factor": u, "position": i})
    return Unknown(n)


def is_lyndon_bounded(w: str, alphabet: Optional[Alphabet] = None) -> ThreeValued:
    """Is some proper suffix provably smaller than the word itself?"""
    letters = _letters(w, alphabet)
    ranked = w.translate({ord(x): chr(0x100 + i) for i, x in enumerate(letters)})
    n = len(w)
    tie = None
    for i in range(1, n):
        s, t = ranked[i:], ranked[:n - i]
        if s < t:
            j = next(k for k in range(n - i) if s[k] != t[k])
            return Fails({"suffix_start": i, "mismatch": j})
        if s == t and tie is None:
            tie = i
    return Unknown(n, {"tie_at": tie} if tie is not None else None)


def detect_ultimate_period(w: str, min_reps: int = 3,
                           min_cover: float = 0.5) -> Optional[Tuple[int, str]]:
    """Shortest ``p`` such that a ``p``-periodic suffix repeats its period at
    least ``min_reps`` times and covers at least ``min_cover`` of the word.

    Returns ``(start, period word)``.  The coverage condition keeps isolated
    high powers near the end of an aperiodic prefix from counting.
    """
    n = len(w)
    for p in range(1, n // min_reps + 1):
        s = n - p
        while s > 0 and w[s - 1] == w[s - 1 + p]:
            s -= 1
        if n - s >= min_reps * p and n - s >= min_cover * n:
            return s, w[s:s + p]
    return None
