"""Nonerasing morphisms and the generators L, R, E, P."""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Dict, List, Mapping, Optional, Sequence, Tuple

from .words import Alphabet


@dataclass(frozen=True)
class Morphism:
    """A nonerasing endomorphism of the free monoid over ``alphabet``.

    ``images[i]`` is the image of ``alphabet.letters[i]``.  Equality is
    extensional: two morphisms are equal when they share an alphabet and
    every image.
    """

    alphabet: Alphabet
    images: Tuple[str, ...]
    _table: dict = field(default=None, compare=False, hash=False, repr=False)
    _letters: frozenset = field(default=None, compare=False, hash=False, repr=False)

    def __post_init__(self):
        if len(self.images) != len(self.alphabet):
            raise ValueError("one image per letter is required")
        for x, img in zip(self.alphabet, self.images):
            if not img:
                raise ValueError(f"image of {x!r} is empty (morphisms are nonerasing)")
            self.alphabet.check(img)
        table = {ord(x): img for x, img in zip(self.alphabet, self.images)}
        object.__setattr__(self, "_table", table)
        object.__setattr__(self, "_letters", frozenset(self.alphabet.letters))

    @classmethod
    def from_dict(cls, alphabet: Alphabet, images: Mapping[str, str]) -> "Morphism":
        missing = [x for x in alphabet if x not in images]
        if missing:
            raise ValueError(f"no image given for {''.join(missing)!r}")
        extra = set(images) - set(alphabet.letters)
        if extra:
            raise ValueError(f"images given for letters outside the alphabet: {sorted(extra)}")
        return cls(alphabet, tuple(images[x] for x in alphabet))

    def __call__(self, w: str) -> str:
        if not self._letters.issuperset(w):
            self.alphabet.check(w)
        return w.translate(self._table)

    def image(self, x: str) -> str:
        return self.images[self.alphabet.index(x)]

    def as_dict(self) -> Dict[str, str]:
        return dict(zip(self.alphabet, self.images))

    def __matmul__(self, other: "Morphism") -> "Morphism":
        return compose(self, other)

    def __str__(self):
        return ", ".join(f"{x}->{img}" for x, img in zip(self.alphabet, self.images))

    def to_text(self) -> str:
        lines = [f"alphabet: {self.alphabet}"]
        lines += [f"{x} -> {img}" for x, img in zip(self.alphabet, self.images)]
        return "\n".join(lines) + "\n"


def apply(f: Morphism, w: str) -> str:
    return f(w)


def compose(f: Morphism, g: Morphism) -> Morphism:
    """``compose(f, g)(x) == f(g(x))``."""
    if f.alphabet != g.alphabet:
        raise ValueError("cannot compose morphisms over different alphabets")
    return Morphism(f.alphabet, tuple(f(img) for img in g.images))


def compose_all(fs: Sequence[Morphism], alphabet: Alphabet) -> Morphism:
    out = identity(alphabet)
    for f in fs:
        out = compose(out, f)
    return out


def identity(alphabet: Alphabet) -> Morphism:
    return Morphism(alphabet, tuple(alphabet.letters))


def _need(alphabet: Alphabet, *letters: str):
    for x in letters:
        if x not in alphabet:
            raise ValueError(f"letter {x!r} not in alphabet {alphabet.letters!r}")


def make_L(alphabet: Alphabet, a: str) -> Morphism:
    _need(alphabet, a)
    return Morphism(alphabet, tuple(x if x == a else a + x for x in alphabet))


def make_R(alphabet: Alphabet, a: str) -> Morphism:
    _need(alphabet, a)
    return Morphism(alphabet, tuple(x if x == a else x + a for x in alphabet))


def make_E(alphabet: Alphabet, a: str, b: str) -> Morphism:
    _need(alphabet, a, b)
    if a == b:
        raise ValueError("an exchange needs two distinct letters")
    swap = {a: b, b: a}
    return Morphism(alphabet, tuple(swap.get(x, x) for x in alphabet))


def make_P(alphabet: Alphabet, a: str) -> Morphism:
    _need(alphabet, a)
    return Morphism(alphabet, (a,) * len(alphabet))


def first_letter_map(f: Morphism) -> Dict[str, str]:
    return {x: img[0] for x, img in zip(f.alphabet, f.images)}


def last_letter_map(f: Morphism) -> Dict[str, str]:
    return {x: img[-1] for x, img in zip(f.alphabet, f.images)}


def norm(f: Morphism) -> int:
    return sum(len(img) for img in f.images)


def is_permutation(f: Morphism) -> bool:
    return all(len(img) == 1 for img in f.images) and len(set(f.images)) == len(f.images)


def is_P_class(f: Morphism) -> Optional[str]:
    """The letter ``a`` when every image lies in ``a+``, else None."""
    a = f.images[0][0]
    if all(set(img) == {a} for img in f.images):
        return a
    return None


def permutation_cycles(mapping: Mapping[str, str], order: str) -> List[List[str]]:
    """Nontrivial cycles, each starting at its lowest letter in ``order``."""
    seen = set()
    cycles = []
    for x in order:
        if x in seen:
            continue
        cycle = [x]
        seen.add(x)
        y = mapping[x]
        while y != x:
            cycle.append(y)
            seen.add(y)
            y = mapping[y]
        if len(cycle) > 1:
            cycles.append(cycle)
    return cycles


# -- generator names ---------------------------------------------------------

@dataclass(frozen=True)
class GeneratorName:
    """A symbolic generator: ``L``, ``R``, ``E``, ``P`` or a named morphism."""

    tag: str
    letters: Tuple[str, ...] = ()
    name: str = ""

    def __post_init__(self):
        arity = {"L": 1, "R": 1, "P": 1, "E": 2, "N": 0}
        if self.tag not in arity:
            raise ValueError(f"unknown generator tag {self.tag!r}")
        if len(self.letters) != arity[self.tag]:
            raise ValueError(f"generator {self.tag} takes {arity[self.tag]} letter(s)")
        if self.tag == "E" and self.letters[0] == self.letters[1]:
            raise ValueError("an exchange needs two distinct letters")
        if self.tag == "N" and not self.name:
            raise ValueError("named generator needs a name")

    @property
    def token(self) -> str:
        return self.name if self.tag == "N" else self.tag + "".join(self.letters)

    def __str__(self):
        return self.token

    def __repr__(self):
        return f"GeneratorName({self.token})"

    def morphism(self, alphabet: Alphabet,
                 registry: Optional[Mapping[str, Morphism]] = None) -> Morphism:
        if self.tag == "L":
            return make_L(alphabet, self.letters[0])
        if self.tag == "R":
            return make_R(alphabet, self.letters[0])
        if self.tag == "E":
            return make_E(alphabet, *self.letters)
        if self.tag == "P":
            return make_P(alphabet, self.letters[0])
        if registry is None or self.name not in registry:
            if self.name == "id":
                return identity(alphabet)
            raise KeyError(f"unknown morphism {self.name!r}")
        f = registry[self.name]
        if f.alphabet != alphabet:
            raise ValueError(f"morphism {self.name!r} is over {f.alphabet.letters!r}, not {alphabet.letters!r}")
        return f


def L(a: str) -> GeneratorName:
    return GeneratorName("L", (a,))


def R(a: str) -> GeneratorName:
    return GeneratorName("R", (a,))


def E(a: str, b: str) -> GeneratorName:
    return GeneratorName("E", (a, b))


def P(a: str) -> GeneratorName:
    return GeneratorName("P", (a,))


def Named(name: str) -> GeneratorName:
    return GeneratorName("N", (), name)


_TOKEN = re.compile(r"^([LlRrPp])(\S)$|^([Ee])(\S)(\S)$")


def parse_generator(token: str, registry: Optional[Mapping[str, Morphism]] = None) -> GeneratorName:
    """Read ``La``, ``rb``, ``Eab``, ``Pa`` or a registry name.

    The tag letter is case-insensitive, the letters are taken literally.
    Registry names win over the built-in spelling.
    """
    if registry and token in registry:
        return Named(token)
    m = _TOKEN.match(token)
    if m is None:
        if not re.match(r"^[A-Za-z_][\w.-]*$", token):
            raise ValueError(f"malformed generator token {token!r}")
        return Named(token)
    if m.group(1):
        return GeneratorName(m.group(1).upper(), (m.group(2),))
    return GeneratorName("E", (m.group(4), m.group(5)))


def parse_generator_word(text: str, registry=None) -> List[GeneratorName]:
    return [parse_generator(t, registry) for t in text.replace(",", " ").split()]


def compose_generators(gens: Sequence[GeneratorName], alphabet: Alphabet,
                       registry: Optional[Mapping[str, Morphism]] = None) -> Morphism:
    return compose_all([g.morphism(alphabet, registry) for g in gens], alphabet)


# -- text format ---------------------------------------------------------------

def parse_morphism(text: str) -> Morphism:
    """Read the ``alphabet: a b`` / ``a -> ab`` text format."""
    alphabet = None
    images: Dict[str, str] = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("alphabet:"):
            if alphabet is not None:
                raise ValueError(f"line {lineno}: alphabet given twice")
            alphabet = Alphabet("".join(line[len("alphabet:"):].split()))
            continue
        if "->" not in line:
            raise ValueError(f"line {lineno}: expected 'x -> image', got {raw!r}")
        lhs, rhs = (s.strip() for s in line.split("->", 1))
        if len(lhs) != 1:
            raise ValueError(f"line {lineno}: left side must be one letter")
        if lhs in images:
            raise ValueError(f"line {lineno}: letter {lhs!r} given twice")
        images[lhs] = "".join(rhs.split())
    if alphabet is None:
        alphabet = Alphabet.of("".join(images))
    return Morphism.from_dict(alphabet, images)


def read_morphism_file(path: str) -> Morphism:
    with open(path, encoding="utf-8") as fh:
        return parse_morphism(fh.read())


# -- peeling -----------------------------------------------------------------------

def _decode_left(img: str, a: str) -> Optional[str]:
    """Preimage of ``img`` under ``L_a``, reading the suffix code right to left."""
    out = []
    i = len(img) - 1
    while i >= 0:
        x = img[i]
        if x == a:
            out.append(a)
            i -= 1
        elif i >= 1 and img[i - 1] == a:
            out.append(x)
            i -= 2
        else:
            return None
    return "".join(reversed(out))


def _decode_right(img: str, a: str) -> Optional[str]:
    """Preimage of ``img`` under ``R_a``, reading the prefix code left to right."""
    out = []
    i = 0
    while i < len(img):
        x = img[i]
        if x == a:
            out.append(a)
            i += 1
        elif i + 1 < len(img) and img[i + 1] == a:
            out.append(x)
            i += 2
        else:
            return None
    return "".join(out)


def peel_left(f: Morphism) -> Optional[Tuple[str, Morphism]]:
    """``(a, g)`` with ``f == L_a ∘ g``, or None."""
    a = f.images[0][0]
    pre = []
    for img in f.images:
        if img[0] != a:
            return None
        u = _decode_left(img, a)
        if u is None:
            return None
        pre.append(u)
    return a, Morphism(f.alphabet, tuple(pre))


def peel_right(f: Morphism) -> Optional[Tuple[str, Morphism]]:
    """``(a, g)`` with ``f == R_a ∘ g``, or None."""
    a = f.images[0][-1]
    pre = []
    for img in f.images:
        if img[-1] != a:
            return None
        u = _decode_right(img, a)
        if u is None:
            return None
        pre.append(u)
    return a, Morphism(f.alphabet, tuple(pre))


# -- classification ---------------------------------------------------------------

@dataclass
class GeneratorDecomposition:
    """Outcome of a classifier.

    On acceptance ``factors`` composes (left to right) to the input.  When the
    last factor is a ``P`` generator standing for a P-class morphism other than
    the constant one, ``residual`` holds that morphism and replaces it in the
    product.  On rejection ``residual`` is the stuck morphism reached after
    peeling ``factors`` and ``witness`` says why it is stuck.
    """

    factors: List[GeneratorName]
    accepted: bool
    residual: Optional[Morphism] = None
    witness: str = ""

    def recompose(self, alphabet: Alphabet) -> Morphism:
        gens = [g.morphism(alphabet) for g in self.factors]
        if self.residual is not None:
            if self.accepted:
                gens[-1] = self.residual
            else:
                gens.append(self.residual)
        return compose_all(gens, alphabet)

    @property
    def verdict(self) -> str:
        return "Accept" if self.accepted else "Reject"

    def __str__(self):
        word = " ".join(g.token for g in self.factors) or "id"
        if self.accepted:
            tail = f"  [P factor stands for {self.residual}]" if self.residual is not None else ""
            return f"Accept: {word}{tail}"
        return f"Reject after {word}: {self.witness}"


def _transpositions(f: Morphism) -> List[GeneratorName]:
    mapping = {x: img for x, img in zip(f.alphabet, f.images)}
    out = []
    for cycle in permutation_cycles(mapping, f.alphabet.letters):
        head = cycle[0]
        # anchored at the lowest letter: (c0 c1 .. ck) = E(c0,ck) ... E(c0,c1)
        out += [E(head, c) for c in reversed(cycle[1:])]
    return out


def _try_peel(f: Morphism):
    n = norm(f)
    for tag, peel in (("L", peel_left), ("R", peel_right)):
        got = peel(f)
        if got is not None and norm(got[1]) < n:
            return GeneratorName(tag, (got[0],)), got[1]
    return None


def classify_episturmian_preserving(f: Morphism) -> GeneratorDecomposition:
    """Decide whether ``f`` is a product of L, R, exchanges and a P-class tail."""
    factors: List[GeneratorName] = []
    k = len(f.alphabet)
    while True:
        a = is_P_class(f)
        if a is not None:
            factors.append(P(a))
            residual = None if f == make_P(f.alphabet, a) else f
            return GeneratorDecomposition(factors, True, residual)
        if norm(f) == k and is_permutation(f):
            return GeneratorDecomposition(factors + _transpositions(f), True)
        step = _try_peel(f)
        if step is None:
            return GeneratorDecomposition(factors, False, f, _stuck_reason(f))
        factors.append(step[0])
        f = step[1]


def _stuck_reason(f: Morphism) -> str:
    firsts = {img[0] for img in f.images}
    lasts = {img[-1] for img in f.images}
    if len(firsts) > 1 and len(lasts) > 1:
        return (f"images start with {''.join(sorted(firsts))} and end with "
                f"{''.join(sorted(lasts))}: no L or R factor on the left ({f})")
    if norm(f) == len(f.alphabet):
        return f"letter-to-letter but neither a permutation nor constant ({f})"
    return f"images do not decode under the shared first or last letter ({f})"


def classify_sturmian_preserving(f: Morphism) -> GeneratorDecomposition:
    """Decompose a binary morphism over ``La Lb Ra Rb E``, exchanges last."""
    if len(f.alphabet) != 2:
        raise ValueError("Sturmian classification needs a binary alphabet")
    a, b = f.alphabet.letters
    factors: List[GeneratorName] = []
    while True:
        if norm(f) == 2:
            if f == identity(f.alphabet):
                return GeneratorDecomposition(factors, True)
            if is_permutation(f):
                return GeneratorDecomposition(factors + [E(a, b)], True)
            return GeneratorDecomposition(factors, False, f, f"constant letter morphism ({f})")
        if is_P_class(f) is not None:
            return GeneratorDecomposition(factors, False, f, f"all images are powers of one letter ({f})")
        step = _try_peel(f)
        if step is None:
            return GeneratorDecomposition(factors, False, f, _stuck_reason(f))
        factors.append(step[0])
        f = step[1]


def canonical_LR_exch(seq: Sequence[GeneratorName]) -> Tuple[List[GeneratorName], List[GeneratorName]]:
    """Rewrite a word over L, R and exchanges as ``lr · perm``.

    Uses ``π L_x = L_{π(x)} π`` (and the same for R), pushing every exchange
    to the right end.  ``perm`` is the cycle decomposition of the accumulated
    permutation.
    """
    letters: List[str] = []
    for g in seq:
        for x in g.letters:
            if x not in letters:
                letters.append(x)
    pi: Dict[str, str] = {x: x for x in letters}
    lr: List[GeneratorName] = []
    for g in seq:
        if g.tag in "LR":
            lr.append(GeneratorName(g.tag, (pi[g.letters[0]],)))
        elif g.tag == "E":
            x, y = g.letters
            pi = {z: pi[{x: y, y: x}.get(z, z)] for z in letters}
        else:
            raise ValueError(f"{g.token} is not an L, R or exchange generator")
    order = "".join(sorted(letters))
    perm = []
    for cycle in permutation_cycles(pi, order):
        perm += [E(cycle[0], c) for c in reversed(cycle[1:])]
    return lr, perm
