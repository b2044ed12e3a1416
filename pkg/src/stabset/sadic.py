"""Directive families, prefix generation and L/R normalization."""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Callable, Dict, List, Optional, Sequence, Tuple

import networkx as nx

from .desub import (KonigChain, SubstitutionSet, _reach_cycle, chain_word_prefix,
                    konig_chains)
from .directive import DirectiveSpec, tokens
from .morphisms import GeneratorName, L, R, compose_generators
from .words import Alphabet, EventuallyPeriodicWord

FAMILY_TAGS = ("S_bal", "S_Sturm", "S_Lynd", "L_family", "R_family", "LR_family",
               "RstarL", "L_StrictStand", "S_strictepi")


@dataclass(frozen=True)
class FamilyDescriptor:
    """A named family of substitutions.

    ``bound`` limits instantiation: members are generator words of length at
    most ``bound + 1``.  It plays no role in validation.
    """

    tag: str
    alphabet: Alphabet = Alphabet("ab")
    bound: int = 3

    def __post_init__(self):
        if self.tag not in FAMILY_TAGS:
            raise ValueError(f"unknown family {self.tag!r}")
        if self.tag in ("S_bal", "S_Sturm", "S_Lynd") and len(self.alphabet) != 2:
            raise ValueError(f"{self.tag} is defined over a binary alphabet")
        if self.bound < 1:
            raise ValueError("bound must be positive")

    def generators(self) -> List[GeneratorName]:
        letters = self.alphabet.letters
        if self.tag == "L_family" or self.tag == "L_StrictStand":
            return [L(x) for x in letters]
        if self.tag == "R_family":
            return [R(x) for x in letters]
        if self.tag == "S_Lynd":
            return [L(letters[0]), R(letters[1])]
        return [L(x) for x in letters] + [R(x) for x in letters]

    def is_block(self, block: Sequence[GeneratorName]) -> bool:
        return _BLOCKS[self.tag](tuple(block), self.alphabet.letters)

    def __str__(self):
        return f"{self.tag}[{self.alphabet.letters}, {self.bound}]"


def _sturm(block, letters) -> bool:
    if len(block) < 2:
        return False
    a, b = letters

    def kind(g):
        return g.letters[0] if g.tag in "LR" else None

    head, last = {kind(g) for g in block[:-1]}, kind(block[-1])
    return len(head) == 1 and None not in head and last is not None and last != head.pop()


def _lynd(block, letters) -> bool:
    a, b = letters
    if len(block) < 2:
        return False
    for first, last in ((L(a), R(b)), (R(b), L(a))):
        if all(g == first for g in block[:-1]) and block[-1] == last:
            return True
    return False


def _strict_stand(block, letters) -> bool:
    if any(g.tag != "L" for g in block):
        return False
    seen = [g.letters[0] for g in block]
    return set(seen) == set(letters) and seen[-1] not in seen[:-1]


def _strictepi(block, letters) -> bool:
    if not block or any(g.tag not in "LR" for g in block):
        return False
    return any(g.tag == "L" for g in block) and {g.letters[0] for g in block} == set(letters)


_BLOCKS: Dict[str, Callable] = {
    "S_bal": lambda b, ls: len(b) == 1 and b[0].tag in "LR",
    "S_Sturm": _sturm,
    "S_Lynd": _lynd,
    "L_family": lambda b, ls: len(b) == 1 and b[0].tag == "L",
    "R_family": lambda b, ls: len(b) == 1 and b[0].tag == "R",
    "LR_family": lambda b, ls: len(b) == 1 and b[0].tag in "LR",
    "RstarL": lambda b, ls: bool(b) and b[-1].tag == "L" and all(g.tag == "R" for g in b[:-1]),
    "L_StrictStand": _strict_stand,
    "S_strictepi": _strictepi,
}


def family_members(fam: FamilyDescriptor, bound: Optional[int] = None) -> SubstitutionSet:
    """All blocks of the family of length at most ``bound + 1``."""
    bound = fam.bound if bound is None else bound
    gens = fam.generators()
    members, words = {}, {}
    for length in range(1, bound + 2):
        for block in itertools.product(gens, repeat=length):
            if fam.is_block(block):
                name = "".join(g.token for g in block)
                members[name] = compose_generators(block, fam.alphabet)
                words[name] = block
    return SubstitutionSet(fam.alphabet, members, words, f"{fam.tag}:{bound}")


def _period_gap(spec: DirectiveSpec, fam: FamilyDescriptor) -> Optional[str]:
    """A readable reason why the period can never be cut into blocks, if obvious."""
    per = spec.period
    letters = fam.alphabet.letters
    if fam.tag == "S_Sturm":
        kinds = {g.letters[0] for g in per}
        for x in letters:
            if x not in kinds:
                return f"no {x}-type generator in period"
    if fam.tag == "S_Lynd":
        for g in (L(letters[0]), R(letters[1])):
            if g not in per:
                return f"no {g.token} in period"
    if fam.tag in ("RstarL", "S_strictepi") and not any(g.tag == "L" for g in per):
        return "no L generator in period"
    if fam.tag in ("L_StrictStand", "S_strictepi"):
        missing = set(letters) - {g.letters[0] for g in per}
        if missing:
            return f"letters {''.join(sorted(missing))} never occur in period"
    return None


def validate_directive_for_family(spec: DirectiveSpec, fam: FamilyDescriptor) -> Tuple[bool, str]:
    """Can ``pre · period^w`` be cut into blocks of ``fam``?"""
    allowed = set(fam.generators())
    for g in spec.preperiod + spec.period:
        if g not in allowed:
            return False, f"generator {g.token} is not allowed in {fam.tag}"
    if spec.alphabet != fam.alphabet:
        return False, f"alphabet {spec.alphabet.letters} differs from {fam.alphabet.letters}"
    gap = _period_gap(spec, fam)
    if gap:
        return False, gap
    N, P = len(spec.preperiod), len(spec.period)

    def fold(p: int) -> int:
        return p if p < N + P else N + (p - N) % P

    g = nx.DiGraph()
    longest = N + 2 * P
    for p in range(N + P):
        g.add_node(p)
        for ell in range(1, longest + 1):
            block = [spec.generator(p + i) for i in range(1, ell + 1)]
            if fam.is_block(block):
                g.add_edge(p, fold(p + ell))
    if 0 not in _reach_cycle(g):
        return False, f"no factorization into {fam.tag} blocks"
    return True, f"factorizes into {fam.tag} blocks"


# -- generation ---------------------------------------------------------------

def default_chain(spec: DirectiveSpec, seed: Optional[str] = None) -> Optional[KonigChain]:
    """The chain through ``seed``, or the one with the least letter."""
    chains = sorted(konig_chains(spec), key=lambda c: spec.alphabet.index(c.letter))
    if seed is None:
        return chains[0]
    for c in chains:
        if c.letter == seed:
            return c
    return None


def _constant_seed_prefix(spec: DirectiveSpec, n: int, seed: str) -> str:
    """Prefix of ``lim σ1...σk(seed)`` when the limit exists."""
    N, P = len(spec.preperiod), len(spec.period)
    results = set()
    for i in range(P):
        t = spec.apply_range(N, N + i, seed, limit=n)
        seen = set()
        while t not in seen:
            seen.add(t)
            t = spec.apply_range(N, N + P, t, limit=n)
        if spec.apply_range(N, N + P, t, limit=n) != t or len(t) < n:
            raise ValueError(f"the words {spec}({seed}) do not converge to an infinite word")
        results.add(spec.apply_range(0, N, t, limit=n))
    if len(results) != 1:
        raise ValueError(f"the words {spec}({seed}) oscillate between limits")
    return results.pop()


def generate_prefix(spec: DirectiveSpec, n: int, seed: Optional[str] = None) -> str:
    """Length-``n`` prefix of an S-adic limit of ``spec``.

    Without a seed the Kőnig chain with the least letter at the start of the
    period is followed.  A seed letter on such a chain selects that chain;
    any other seed is used as the constant letter sequence, which must
    converge.
    """
    if n < 0:
        raise ValueError("length must be nonnegative")
    if seed is not None and seed not in spec.alphabet:
        raise ValueError(f"seed {seed!r} not in alphabet")
    chain = default_chain(spec, seed)
    if chain is None:
        return _constant_seed_prefix(spec, n, seed)
    return chain_word_prefix(spec, chain, 0, n)


# -- normalization ---------------------------------------------------------------

@dataclass
class NormalizationResult:
    """Rewritten L/R directive that never uses ``R_x`` in front of a word starting with ``x``.

    ``normalized[k]`` desubstitutes the word ``w'_k`` whose first letter is
    ``first_letters[k]``; ``w'_k`` is the original depth-``k`` word with its
    first ``runs[k]`` letters removed.
    """

    spec: DirectiveSpec
    chain: KonigChain
    normalized: List[GeneratorName]
    first_letters: List[str]
    runs: List[int]
    periodic: Optional[DirectiveSpec]

    @property
    def cycle_found(self) -> bool:
        return self.periodic is not None

    def violations(self) -> List[int]:
        return [k for k, (g, x) in enumerate(zip(self.normalized, self.first_letters)) if g == R(x)]

    def reproduce_prefix(self, n: int) -> str:
        """Prefix of ``σ'_1 ... σ'_d (w'_d)``, which equals the original limit word."""
        d = len(self.normalized)
        run = self.runs[d]
        tail = chain_word_prefix(self.spec, self.chain, d, n + run)[run:]
        for g in reversed(self.normalized):
            tail = g.morphism(self.spec.alphabet)(tail[:n])
        return tail[:n]

    def __str__(self):
        body = tokens(self.normalized)
        if self.periodic is not None:
            return f"{self.periodic}\n# first {len(self.normalized)} levels: {body}"
        return body


def normalize_directive(spec: DirectiveSpec, depth: int, seed: Optional[str] = None,
                        search: int = 64) -> NormalizationResult:
    """Rewrite an L/R directive so that no level applies ``R_x`` to a word starting with ``x``.

    The limit word is the one chosen by :func:`generate_prefix` with the same
    seed.  Rewriting continues past ``depth`` (up to ``search`` periods of the
    chain) to find an eventually periodic form.
    """
    for g in spec.preperiod + spec.period:
        if g.tag not in "LR":
            raise ValueError(f"normalization only handles L and R generators, not {g.token}")
    chain = default_chain(spec, seed)
    if chain is None:
        raise ValueError(f"seed {seed!r} is not on a Kőnig chain of {spec}")
    N = len(spec.preperiod)
    span = chain.cycle * len(spec.period)
    horizon = max(depth, N + search * span)
    need = horizon + 3

    def phase(k: int) -> int:
        return k if k < N else N + (k - N) % span

    words: Dict[int, str] = {}

    def word(k: int) -> str:
        key = phase(k)
        if key not in words:
            words[key] = chain_word_prefix(spec, chain, key, need)
        return words[key]

    def saturated(k: int, run: int, x: str) -> bool:
        # for a mortal chain every w_k is eventually periodic; once the rest
        # is x^w the run length no longer changes the rewriting
        if chain.expanding or run < 2:
            return False
        m = N if k <= N else N + span * -(-(k - N) // span)
        u = spec.apply_range(k, m, chain.letter)
        return EventuallyPeriodicWord("", u).shift(run) == EventuallyPeriodicWord("", x)

    out: List[GeneratorName] = []
    firsts: List[str] = []
    runs: List[int] = [0]
    seen: Dict[tuple, int] = {}
    periodic = None
    run, x = 0, ""
    for k in range(horizon):
        state = (phase(k), "sat" if saturated(k, run, x) else run, x if run else "")
        if k >= N and state in seen and periodic is None:
            k1 = seen[state]
            periodic = DirectiveSpec(tuple(out[:k1]), tuple(out[k1:k]), spec.alphabet).compact()
            if k >= depth:
                break
        seen.setdefault(state, k)
        wk, wk1 = word(k), word(k + 1)
        g = spec.generator(k + 1)
        y = g.letters[0]
        if run == 0:
            x = wk[0]
            firsts.append(x)
            if g == R(x):
                out.append(L(x))
                run = 1
            else:
                out.append(g)
        else:
            beta = wk[run]
            firsts.append(beta)
            if g.tag == "L":
                if y != x:
                    raise AssertionError(f"L_{y} cannot produce a word starting with {x}{x}")
                if beta != x:
                    out.append(R(x))
                    run -= 1
                else:
                    out.append(L(x))
            elif y != x:
                if run != 1:
                    raise AssertionError(f"R_{y} cannot produce {x * run}")
                out.append(L(y))
            elif wk1[run] != x:
                out.append(R(x))
            else:
                out.append(L(x))
                run += 1
        runs.append(run)
        if k + 1 >= depth and periodic is not None:
            break
    return NormalizationResult(spec, chain, out[:depth], firsts[:depth], runs[:depth + 1], periodic)
