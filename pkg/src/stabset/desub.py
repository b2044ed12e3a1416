"""Desubstitution: parsing prefixes backwards through morphisms.

Covers prefix decoding over possibly non-uniquely-decodable codes, trees of
directive chains, limit points of directive sequences, the single-letter
stability sets and fixed points of powers of one morphism.
"""
from __future__ import annotations

import json
import math
import os
from dataclasses import dataclass, field
from typing import Dict, Iterator, List, Mapping, NamedTuple, Optional, Sequence, Set, Tuple, Union

import networkx as nx

from .directive import DirectiveSpec, first_letter_product
from .morphisms import (GeneratorName, L, Morphism, R, compose, first_letter_map,
                        parse_generator, read_morphism_file)
from .properties import is_balanced
from .verdict import Fails, Holds, ThreeValued, Unknown
from .words import Alphabet, EventuallyPeriodicWord, PrefixStream, expand


# -- substitution sets ---------------------------------------------------------

@dataclass
class SubstitutionSet:
    """A finite, named set of morphisms over one alphabet.

    ``words`` optionally records, for members built from generators, the
    generator word whose product is the member.
    """

    alphabet: Alphabet
    members: Dict[str, Morphism]
    words: Dict[str, Tuple[GeneratorName, ...]] = field(default_factory=dict)
    label: str = ""

    def __post_init__(self):
        for name, f in self.members.items():
            if f.alphabet != self.alphabet:
                raise ValueError(f"member {name!r} is not over {self.alphabet.letters!r}")

    def names(self) -> List[str]:
        return sorted(self.members)

    def __len__(self):
        return len(self.members)

    def __iter__(self):
        return iter(self.names())

    def __getitem__(self, name: str) -> Morphism:
        return self.members[name]

    @classmethod
    def from_generators(cls, gens: Sequence[Union[str, GeneratorName]], alphabet: Alphabet,
                        registry: Optional[Mapping[str, Morphism]] = None) -> "SubstitutionSet":
        members, words = {}, {}
        for g in gens:
            if isinstance(g, str):
                g = parse_generator(g, registry)
            members[g.token] = g.morphism(alphabet, registry)
            words[g.token] = (g,)
        return cls(alphabet, members, words, ",".join(members))

    @classmethod
    def from_directory(cls, path: str) -> "SubstitutionSet":
        members = {}
        for name in sorted(os.listdir(path)):
            full = os.path.join(path, name)
            if os.path.isfile(full) and not name.startswith("."):
                members[os.path.splitext(name)[0]] = read_morphism_file(full)
        if not members:
            raise ValueError(f"no morphism files in {path!r}")
        alphabets = {f.alphabet for f in members.values()}
        if len(alphabets) != 1:
            raise ValueError("morphism files disagree on the alphabet")
        return cls(alphabets.pop(), members, {}, path)


# -- prefix decoding -------------------------------------------------------------

class Parse(NamedTuple):
    """One way of reading ``w`` as ``σ(u)`` up to a cut-off last image.

    ``preimage`` is the shortest ``u`` with ``w`` a prefix of ``σ(u)``;
    ``consumed`` counts the letters of ``w`` covered by complete images, so
    ``consumed < len(w)`` exactly when the last image of ``u`` is cut off.
    """

    preimage: str
    consumed: int


def iter_desubstitutions(w: str, f: Morphism, partial: bool = True) -> Iterator[Parse]:
    """Enumerate parses of ``w`` under ``f`` in lexicographic letter order."""
    n = len(w)
    letters = f.alphabet.letters
    # edges[i]: (letter, next position) with next == -1 for a cut-off last image
    edges: List[List[Tuple[str, int]]] = [[] for _ in range(n + 1)]
    good = [False] * (n + 1)
    good[n] = True
    for i in range(n - 1, -1, -1):
        rest = n - i
        for x, img in zip(letters, f.images):
            if w.startswith(img, i):
                if good[i + len(img)]:
                    edges[i].append((x, i + len(img)))
            elif partial and len(img) > rest and img.startswith(w[i:]):
                edges[i].append((x, -1))
        good[i] = bool(edges[i])
    if n == 0:
        yield Parse("", 0)
        return
    if not good[0]:
        return
    stack: List[Tuple[int, int]] = [(0, 0)]
    path: List[str] = []
    while stack:
        pos, k = stack.pop()
        del path[len(stack):]
        if k >= len(edges[pos]):
            continue
        stack.append((pos, k + 1))
        x, nxt = edges[pos][k]
        path.append(x)
        if nxt == -1:
            yield Parse("".join(path), pos)
        elif nxt == n:
            yield Parse("".join(path), n)
        else:
            stack.append((nxt, 0))


def desubstitute_prefix(w: str, f: Morphism) -> Set[Parse]:
    f.alphabet.check(w)
    return set(iter_desubstitutions(w, f))


def desubstitute_exact(w: str, f: Morphism) -> Set[str]:
    """All ``u`` with ``f(u) == w``."""
    return {p.preimage for p in iter_desubstitutions(w, f, partial=False)}


# -- chain trees --------------------------------------------------------------

@dataclass(frozen=True)
class DesubNode:
    id: int
    parent: Optional[int]
    depth: int
    morphism: str
    preimage: str
    consumed: int


@dataclass
class DesubTree:
    """Tree of directive chains; the root holds the parsed word itself."""

    nodes: List[DesubNode]
    max_depth: int
    truncated: bool = False

    @property
    def root(self) -> DesubNode:
        return self.nodes[0]

    def children(self, node_id: int) -> List[DesubNode]:
        return [n for n in self.nodes if n.parent == node_id]

    def path(self, node: DesubNode) -> List[DesubNode]:
        out = []
        while node.parent is not None:
            out.append(node)
            node = self.nodes[node.parent]
        return out[::-1]

    def chains(self, depth: Optional[int] = None) -> List[Tuple[Tuple[str, ...], str]]:
        """``(morphism names, preimage)`` for every node at ``depth``."""
        depth = self.max_depth if depth is None else depth
        return [(tuple(n.morphism for n in self.path(node)), node.preimage)
                for node in self.nodes if node.depth == depth]

    @property
    def reached_depth(self) -> int:
        return max(n.depth for n in self.nodes)

    @property
    def empty(self) -> bool:
        return self.reached_depth < self.max_depth

    def verdict(self) -> ThreeValued:
        """Holds when some chain reaches full depth."""
        if not self.empty:
            return Holds(self.max_depth)
        if self.truncated:
            return Unknown(self.reached_depth)
        return Fails(f"no chain beyond depth {self.reached_depth}")

    def to_text(self) -> str:
        lines = [f"{self.root.preimage}"]
        for node in self._preorder():
            if node.parent is None:
                continue
            lines.append("  " * node.depth + f"{node.morphism}: {node.preimage} [{node.consumed}]")
        if self.truncated:
            lines.append("(truncated: node budget exhausted)")
        return "\n".join(lines) + "\n"

    def _preorder(self) -> List[DesubNode]:
        kids: Dict[Optional[int], List[DesubNode]] = {}
        for n in self.nodes:
            kids.setdefault(n.parent, []).append(n)
        out, stack = [], [self.root]
        while stack:
            node = stack.pop()
            out.append(node)
            stack.extend(reversed(kids.get(node.id, [])))
        return out

    def to_machine(self) -> str:
        head = {"root": self.root.preimage, "max_depth": self.max_depth, "truncated": self.truncated}
        lines = [json.dumps(head)]
        for n in self.nodes[1:]:
            lines.append(json.dumps({"id": n.id, "parent": n.parent, "depth": n.depth,
                                     "morphism": n.morphism, "preimage": n.preimage,
                                     "consumed": n.consumed}))
        return "\n".join(lines) + "\n"

    @classmethod
    def from_machine(cls, text: str) -> "DesubTree":
        rows = [json.loads(line) for line in text.splitlines() if line.strip()]
        head = rows[0]
        nodes = [DesubNode(0, None, 0, "", head["root"], len(head["root"]))]
        for r in rows[1:]:
            nodes.append(DesubNode(r["id"], r["parent"], r["depth"], r["morphism"],
                                   r["preimage"], r["consumed"]))
        return cls(nodes, head["max_depth"], head["truncated"])

    def __eq__(self, other):
        if not isinstance(other, DesubTree):
            return NotImplemented
        return (self.nodes, self.max_depth, self.truncated) == (other.nodes, other.max_depth, other.truncated)


def directive_parses(w: str, S: SubstitutionSet, depth: int, budget: int = 10**6) -> DesubTree:
    """All chains ``σ1 ... σd`` (``d <= depth``) from ``S`` that desubstitute ``w``.

    The node count is capped by ``budget``; hitting the cap marks the tree
    as truncated.
    """
    if not w:
        raise ValueError("cannot parse the empty word")
    S.alphabet.check(w)
    nodes = [DesubNode(0, None, 0, "", w, len(w))]
    tree = DesubTree(nodes, depth)
    names = S.names()

    def grow(node: DesubNode) -> bool:
        if node.depth == depth:
            return True
        for name in names:
            kids = []
            seen = set()
            for p in iter_desubstitutions(node.preimage, S.members[name]):
                if p in seen:
                    continue
                seen.add(p)
                kids.append(p)
                if len(nodes) + len(kids) > budget:
                    break
            for p in sorted(kids):
                if len(nodes) >= budget:
                    tree.truncated = True
                    return False
                child = DesubNode(len(nodes), node.id, node.depth + 1, name, p.preimage, p.consumed)
                nodes.append(child)
                if not grow(child):
                    return False
        return True

    grow(nodes[0])
    return tree


# -- Kőnig chains and limit points ----------------------------------------------------

def cyclic_letters(mapping: Mapping[str, str], order: str) -> Dict[str, int]:
    """Letters on a cycle of ``mapping`` with their cycle length."""
    out = {}
    for x in order:
        y, steps = mapping[x], 1
        while y != x and steps <= len(order):
            y, steps = mapping[y], steps + 1
        if y == x:
            out[x] = steps
    return out


@dataclass(frozen=True)
class KonigChain:
    """A chain of first letters fixed by its letter at the start of the period.

    ``letter`` sits at depth ``len(preperiod)``; the chain repeats every
    ``cycle * len(period)`` levels.
    """

    letter: str
    cycle: int
    expanding: bool


def konig_chains(spec: DirectiveSpec) -> List[KonigChain]:
    N, P = len(spec.preperiod), len(spec.period)
    phi = first_letter_product(spec, N, N + P)
    out = []
    for c, ell in cyclic_letters(phi, spec.alphabet.letters).items():
        img = spec.apply_range(N, N + ell * P, c, limit=2)
        out.append(KonigChain(c, ell, len(img) > 1))
    return out


def chain_word_prefix(spec: DirectiveSpec, chain: KonigChain, k: int, n: int) -> str:
    """Length-``n`` prefix of the desubstituted word at depth ``k`` along ``chain``."""
    N = len(spec.preperiod)
    span = chain.cycle * len(spec.period)
    m = N if k <= N else N + span * math.ceil((k - N) / span)
    if chain.expanding:
        x = chain.letter
        while len(x) < n:
            x = spec.apply_range(N, N + span, x, limit=n)
    else:
        x = chain.letter * n
    return spec.apply_range(k, m, x[:n], limit=n)


@dataclass
class LimitPoint:
    chain: KonigChain
    word: Union[EventuallyPeriodicWord, PrefixStream]

    def prefix(self, n: int) -> str:
        if isinstance(self.word, EventuallyPeriodicWord):
            return expand(self.word, n)
        return self.word.prefix(n)

    def __str__(self):
        if isinstance(self.word, EventuallyPeriodicWord):
            return f"chain {self.chain.letter}: ({self.word.normalized().period})^w"
        return f"chain {self.chain.letter}: {self.word.prefix(40)}..."


def limit_points(spec: DirectiveSpec) -> List[LimitPoint]:
    """One limit point per Kőnig chain, ordered by chain letter."""
    out = []
    N = len(spec.preperiod)
    for chain in sorted(konig_chains(spec), key=lambda c: spec.alphabet.index(c.letter)):
        if chain.expanding:
            stream = PrefixStream(lambda n, c=chain: chain_word_prefix(spec, c, 0, n),
                                  f"{spec} chain {chain.letter}")
            out.append(LimitPoint(chain, stream))
        else:
            u = spec.apply_range(0, N, chain.letter)
            out.append(LimitPoint(chain, EventuallyPeriodicWord("", u).normalized()))
    return out


# -- single-letter stability ---------------------------------------------------

def _reach_cycle(g: nx.DiGraph) -> Set:
    """Vertices from which an infinite path starts."""
    on_cycle = set()
    for comp in nx.strongly_connected_components(g):
        if len(comp) > 1 or any(g.has_edge(v, v) for v in comp):
            on_cycle |= comp
    out = set(on_cycle)
    for v in on_cycle:
        out |= nx.ancestors(g, v)
    return out


@dataclass
class StabLetGraph:
    edges: List[Tuple[str, str, str]]
    stablet: Set[str]

    @property
    def acyclic(self) -> bool:
        return not self.stablet


def stablet_graph(S: SubstitutionSet) -> StabLetGraph:
    """Edges ``(x, f, y)`` with ``f(y) == x``; StabLet is what reaches a cycle."""
    g = nx.DiGraph()
    g.add_nodes_from(S.alphabet)
    edges = []
    for name in S.names():
        f = S.members[name]
        for y, img in zip(S.alphabet, f.images):
            if len(img) == 1:
                edges.append((img, name, y))
                g.add_edge(img, y)
    return StabLetGraph(edges, _reach_cycle(g))


def stablet_at(spec: DirectiveSpec) -> Dict[int, Set[str]]:
    """StabLet of the shifted directive at each depth ``0 .. N+P-1``."""
    N, P = len(spec.preperiod), len(spec.period)
    g = nx.DiGraph()
    for i in range(P):
        f = spec.morphism(N + i + 1)
        for y, img in zip(spec.alphabet, f.images):
            g.add_node((y, i))
            if len(img) == 1:
                g.add_edge((img, i), (y, (i + 1) % P))
    alive = _reach_cycle(g)
    out = {N + i: {x for x in spec.alphabet if (x, i) in alive} for i in range(P)}
    for k in range(N - 1, -1, -1):
        f = spec.morphism(k + 1)
        out[k] = {f.image(y) for y in out[k + 1] if len(f.image(y)) == 1}
    return out


def stablet_of_directive(spec: DirectiveSpec) -> Set[str]:
    return stablet_at(spec)[0]


def stabultlet_bounded(spec: DirectiveSpec, bound: int) -> Set[str]:
    """Words ``σ1...σk(x)`` with ``x`` in the StabLet at depth ``k``, up to ``bound`` letters."""
    N, P = len(spec.preperiod), len(spec.period)
    T = stablet_at(spec)
    out: Set[str] = set()
    for k in range(N):
        for x in T[k]:
            u = spec.apply_range(0, k, x)
            if len(u) <= bound:
                out.add(u)
    head = spec.product(0, N)
    period = spec.product(N, N + P)
    for i in range(P):
        Z = frozenset(spec.apply_range(N, N + i, x) for x in T[N + i])
        seen = set()
        while Z not in seen:
            seen.add(Z)
            Z = frozenset(z for z in Z if len(z) <= bound)
            out.update(u for u in map(head, Z) if len(u) <= bound)
            Z = frozenset(period(z) for z in Z)
    return out


def in_stabfin(u: str, spec: DirectiveSpec) -> bool:
    """Exact test: can ``u`` be desubstituted (completely) along ``spec`` forever?"""
    N, P = len(spec.preperiod), len(spec.period)

    def key(k: int) -> int:
        return k if k < N else N + (k - N) % P

    # depth-first search for a cycle in the finite graph of (phase, word) states
    start = (0, u)
    colour: Dict[Tuple[int, str], int] = {}
    stack = [(start, None)]
    while stack:
        state, it = stack[-1]
        if it is None:
            if colour.get(state) == 2:
                stack.pop()
                continue
            colour[state] = 1
            k, w = state
            succ = sorted(desubstitute_exact(w, spec.morphism(k + 1)))
            it = iter([(key(k + 1), v) for v in succ])
            stack[-1] = (state, it)
        nxt = next(it, None)
        if nxt is None:
            colour[state] = 2
            stack.pop()
            continue
        c = colour.get(nxt)
        if c == 1:
            return True
        if c is None:
            stack.append((nxt, None))
    return False


def genstabfin_bounded(spec: DirectiveSpec, bound: int) -> Set[str]:
    """Members of the bounded StabUltLet that are not products of shorter StabFin words."""
    candidates = stabultlet_bounded(spec, bound)
    memo: Dict[str, bool] = {}

    def member(v: str) -> bool:
        if v not in memo:
            memo[v] = in_stabfin(v, spec)
        return memo[v]

    def splits(v: str) -> bool:
        # v = x · y with x, y nonempty, x in StabFin and y a product of StabFin words
        ok = [False] * (len(v) + 1)
        ok[0] = True
        for j in range(1, len(v) + 1):
            ok[j] = any(ok[i] and member(v[i:j]) for i in range(j) if (i, j) != (0, len(v)))
        return ok[len(v)]

    return {v for v in candidates if not splits(v)}


# -- fixed points of one morphism -------------------------------------------------------

@dataclass
class FixedPointReport:
    """Fixed points of powers of ``f``.

    ``cycle_lengths`` maps each letter on a cycle of the first-letter map to
    its cycle length; ``period`` is their lcm.  Every fixed point of some
    power of ``f`` is fixed by ``f ** period``.
    """

    morphism: Morphism
    period: int
    cycle_lengths: Dict[str, int]
    expanding_seeds: List[str]
    mortal_letters: List[str]

    @property
    def families(self) -> List[str]:
        m = "".join(self.mortal_letters)
        out = []
        if m:
            out.append(f"{{{m}}}^w")
        for s in self.expanding_seeds:
            pre = f"{{{m}}}* " if m else ""
            out.append(f"{pre}lim f^(n*{self.cycle_lengths[s]})({s})")
        return out

    def seed_stream(self, seed: str) -> PrefixStream:
        if seed not in self.expanding_seeds:
            raise ValueError(f"{seed!r} is not an expanding seed")
        f, ell = self.morphism, self.cycle_lengths[seed]

        def grow(n: int) -> str:
            x = seed
            while len(x) < n:
                for _ in range(ell):
                    x = f(x[:n])
            return x[:n]

        return PrefixStream(grow, f"lim f^(n*{ell})({seed})")

    def to_dict(self) -> dict:
        return {"morphism": self.morphism.as_dict(), "period": self.period,
                "cycle_lengths": self.cycle_lengths, "expanding_seeds": self.expanding_seeds,
                "mortal_letters": self.mortal_letters, "families": self.families}


def power(f: Morphism, n: int) -> Morphism:
    out = f
    for _ in range(n - 1):
        out = compose(out, f)
    return out


def fixed_point_analysis(f: Morphism) -> FixedPointReport:
    cycles = cyclic_letters(first_letter_map(f), f.alphabet.letters)
    seeds, mortal = [], []
    for x, ell in cycles.items():
        img = x
        for _ in range(ell):
            img = f(img[:2])
        (seeds if len(img) > 1 else mortal).append(x)
    period = math.lcm(*cycles.values()) if cycles else 1
    return FixedPointReport(f, period, cycles, seeds, mortal)


def apply_periodic(f: Morphism, w: EventuallyPeriodicWord) -> EventuallyPeriodicWord:
    return EventuallyPeriodicWord(f(w.preperiod), f(w.period)).normalized()


def is_fixed_by_power(w: Union[EventuallyPeriodicWord, str], f: Morphism,
                      cap: Optional[int] = None) -> ThreeValued:
    """Is ``w`` fixed by ``f ** n`` for some ``n``?

    Powers ``1 .. cap`` are tried; the default cap is the lcm of the cycle
    lengths of the first-letter map, which is always enough.  An eventually
    periodic word gets an exact answer; a finite prefix can only be refuted,
    otherwise the consistent powers are reported as Unknown.
    """
    if cap is None:
        cap = fixed_point_analysis(f).period
    if isinstance(w, EventuallyPeriodicWord):
        w = w.normalized()
        img = w
        mismatch = {}
        for n in range(1, cap + 1):
            img = apply_periodic(f, img)
            if img == w:
                return Holds(n)
            span = len(w.preperiod) + len(img.preperiod) + len(w.period) * len(img.period) + 1
            a, b = expand(w, span), expand(img, span)
            mismatch[n] = next(i for i in range(span) if a[i] != b[i])
        return Fails({"powers": cap, "first_mismatch": mismatch})
    f.alphabet.check(w)
    consistent, mismatch = [], {}
    img = w
    for n in range(1, cap + 1):
        img = f(img[:len(w)])
        m = min(len(w), len(img))
        bad = next((i for i in range(m) if w[i] != img[i]), None)
        if bad is None:
            consistent.append(n)
        else:
            mismatch[n] = bad
    if consistent:
        return Unknown(len(w), {"consistent_powers": consistent})
    return Fails({"powers": cap, "first_mismatch": mismatch})


# -- balanced words ---------------------------------------------------------------

def balanced_desub_step(w: str) -> Tuple[GeneratorName, str]:
    """One backward step for a balanced binary word over ``a, b``.

    The generator is chosen from the first letter and the missing square
    (``aa`` or ``bb``); with neither square present the L generator of the
    first letter is used.  Among the parses, balanced preimages come first,
    then complete parses before ones whose last image is cut off.
    """
    if len(w) < 2 or set(w) - set("ab"):
        raise ValueError("need a binary word over a, b with at least two letters")
    has_aa, has_bb = "aa" in w, "bb" in w
    if has_aa and has_bb:
        raise ValueError(f"{w!r} contains both aa and bb, so it is not balanced")
    first = w[0]
    if not has_aa and not has_bb:
        gen = L(first)
    elif first == "a":
        gen = L("a") if not has_bb else R("b")
    else:
        gen = R("a") if not has_bb else L("b")
    f = gen.morphism(Alphabet("ab"))
    parses = sorted(desubstitute_prefix(w, f),
                    key=lambda p: (not is_balanced(p.preimage).holds, -p.consumed, p.preimage))
    if not parses:
        raise ValueError(f"{w!r} does not desubstitute under {gen.token}")
    return gen, parses[0].preimage
