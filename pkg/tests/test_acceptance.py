"""The ten acceptance criteria, each at its stated tolerance.

Every test prints one ``PASS``/``FAIL`` line.  Run ``pytest tests/test_acceptance.py -v``
or ``python tests/test_acceptance.py`` for the lines alone.
"""
import itertools
import os
import random
import sys
import time

import pytest

sys.path.insert(0, os.path.dirname(__file__))

from oracles import balanced_bruteforce, generated_closure, morphisms_upto_norm  # noqa: E402
from stabset.desub import (SubstitutionSet, balanced_desub_step, directive_parses,  # noqa: E402
                           fixed_point_analysis, genstabfin_bounded, is_fixed_by_power,
                           limit_points, stablet_graph)
from stabset.directive import DirectiveSpec  # noqa: E402
from stabset.morphisms import (E, L, Morphism, P, R, classify_episturmian_preserving,  # noqa: E402
                               compose, compose_generators, make_E, make_L, make_R)
from stabset.properties import (is_balanced, is_lyndon_bounded, left_special_report,  # noqa: E402
                                reversal_check)
from stabset.sadic import (FamilyDescriptor, family_members, generate_prefix,  # noqa: E402
                           normalize_directive)
from stabset.words import Alphabet, EventuallyPeriodicWord, expand  # noqa: E402

AB = Alphabet("ab")
ABC = Alphabet("abc")


def report(capsys, number, title, ok, detail):
    line = f"{'PASS' if ok else 'FAIL'} criterion {number:2d}: {title} ({detail})"
    if capsys is None:
        print(line)
    else:
        with capsys.disabled():
            print("\n" + line)
    return ok


def random_directive(rng, gens, alphabet, max_pre=3, max_per=4):
    pre = tuple(rng.choice(gens) for _ in range(rng.randint(0, max_pre)))
    per = tuple(rng.choice(gens) for _ in range(rng.randint(1, max_per)))
    return DirectiveSpec(pre, per, alphabet)


# -- 1 ----------------------------------------------------------------------------------

def criterion_1(capsys=None):
    rng = random.Random(1)
    gens = [L("a"), L("b"), R("a"), R("b")]
    start = time.perf_counter()
    bad = []
    for _ in range(100):
        spec = random_directive(rng, gens, AB)
        w = generate_prefix(spec, 1000)
        for method in ("fast", "oracle"):
            if not is_balanced(w, method=method).holds:
                bad.append((str(spec), method))
    elapsed = time.perf_counter() - start
    ok = not bad and elapsed < 10
    return report(capsys, 1, "S_bal prefixes are balanced", ok,
                  f"100 directives x 1000 letters, {len(bad)} failures, {elapsed:.2f}s < 10s")


# -- 2 ----------------------------------------------------------------------------------

def criterion_2(capsys=None):
    start = time.perf_counter()
    S = family_members(FamilyDescriptor("S_bal"))
    words = ["".join(t) for t in itertools.product("ab", repeat=12)]
    balanced = [w for w in words if balanced_bruteforce(w)]
    missing = []
    for w in balanced:
        chain, u = [], w
        for _ in range(4):
            gen, u = balanced_desub_step(u)
            chain.append(gen.token)
        if (tuple(chain), u) not in directive_parses(w, S, 4).chains(4):
            missing.append(w)
    elapsed = time.perf_counter() - start
    ok = len(balanced) == 224 and not missing and elapsed < 30
    return report(capsys, 2, "balanced words desubstitute through S_bal", ok,
                  f"{len(balanced)} balanced words of length 12, {len(missing)} without the "
                  f"table chain at depth 4, {elapsed:.2f}s < 30s")


# -- 3 ----------------------------------------------------------------------------------

def criterion_3(capsys=None):
    f2 = Morphism.from_dict(AB, {"a": "ba", "b": "ab"})
    mu = Morphism.from_dict(AB, {"a": "ab", "b": "ba"})
    rep = fixed_point_analysis(f2)
    w = "a"
    while len(w) < 512:
        w = mu(w)
    tree = directive_parses(w[:256], SubstitutionSet(AB, {"f2": f2}), 8)
    v = is_fixed_by_power(w[:512], f2)
    consistent = (v.witness or {}).get("consistent_powers", [])
    ok = (rep.period == 2 and set(rep.expanding_seeds) == {"a", "b"} and not rep.mortal_letters
          and not tree.empty and not v.fails and 2 in consistent
          and f2(f2(w[:128])) == w[:512])
    return report(capsys, 3, "Thue-Morse and powers of f2", ok,
                  f"period {rep.period}, seeds {sorted(rep.expanding_seeds)}, depth "
                  f"{tree.reached_depth}/8, consistent powers {consistent}")


# -- 4 ----------------------------------------------------------------------------------

def criterion_4(capsys=None):
    A = Alphabet("abcd")
    start = time.perf_counter()
    checked = failed = 0
    for x, y, z in itertools.permutations(A.letters, 3):
        for gen in (make_L, make_R):
            checked += 1
            failed += compose(gen(A, x), make_E(A, y, z)) != compose(make_E(A, y, z), gen(A, x))
    for x, y in itertools.permutations(A.letters, 2):
        for gen in (make_L, make_R):
            checked += 1
            failed += compose(gen(A, x), make_E(A, x, y)) != compose(make_E(A, x, y), gen(A, y))
    elapsed = time.perf_counter() - start
    ok = failed == 0 and elapsed < 1
    return report(capsys, 4, "generator relations on four letters", ok,
                  f"{checked} instances, {failed} failures, {elapsed:.3f}s < 1s")


# -- 5 ----------------------------------------------------------------------------------

def criterion_5(capsys=None):
    rng = random.Random(5)
    pool = ([L(x) for x in "abc"] + [R(x) for x in "abc"]
            + [E(x, y) for x, y in itertools.combinations("abc", 2)] + [P(x) for x in "abc"])
    start = time.perf_counter()
    bad_random = 0
    for _ in range(200):
        seq = [rng.choice(pool) for _ in range(rng.randint(1, 8))]
        f = compose_generators(seq, ABC)
        dec = classify_episturmian_preserving(f)
        bad_random += not (dec.accepted and dec.recompose(ABC) == f)
    closure = generated_closure("ab", 10)
    disagree = total = 0
    for images in morphisms_upto_norm("ab", 6):
        total += 1
        f = Morphism(AB, images)
        dec = classify_episturmian_preserving(f)
        disagree += dec.accepted != (images in closure)
        disagree += dec.accepted and dec.recompose(AB) != f
    elapsed = time.perf_counter() - start
    ok = bad_random == 0 and disagree == 0 and elapsed < 60
    return report(capsys, 5, "episturmian-preserving classifier", ok,
                  f"200 random compositions with {bad_random} failures, {total} binary "
                  f"morphisms of norm <= 6 with {disagree} disagreements, {elapsed:.2f}s < 60s")


# -- 6 ----------------------------------------------------------------------------------

def criterion_6(capsys=None):
    w = generate_prefix(DirectiveSpec.parse("(La Lb Lc)^w"), 500)
    rep = left_special_report(w, 20)
    counts = [len(rep[ell]) for ell in range(1, 21)]
    rev = reversal_check(w, 12)
    ok = all(c == 1 for c in counts) and not rev.fails
    return report(capsys, 6, "Tribonacci necessary conditions", ok,
                  f"left special counts for lengths 1..20: {set(counts)}, reversal check {rev}")


# -- 7 ----------------------------------------------------------------------------------

def criterion_7(capsys=None):
    two = stablet_graph(SubstitutionSet.from_generators(["La", "Lb"], AB)).stablet
    lynd = stablet_graph(family_members(FamilyDescriptor("S_Lynd", bound=3))).stablet
    f = Morphism.from_dict(ABC, {"a": "bc", "b": "b", "c": "c"})
    gen = genstabfin_bounded(DirectiveSpec.parse("f (id)^w", ABC, {"f": f}), 6)
    ok = two == {"a", "b"} and lynd == set() and gen == {"b", "c"}
    return report(capsys, 7, "StabLet graph and GenStabFin", ok,
                  f"{{La, Lb}} -> {sorted(two)}, S_Lynd -> {sorted(lynd)}, "
                  f"f.id^w GenStabFin -> {sorted(gen)}")


# -- 8 ----------------------------------------------------------------------------------

def criterion_8(capsys=None):
    rng = random.Random(8)
    gens = [L("a"), L("b"), R("a"), R("b")]
    violations = mismatches = 0
    for _ in range(100):
        spec = random_directive(rng, gens, AB)
        res = normalize_directive(spec, 30)
        violations += len(res.violations())
        mismatches += res.reproduce_prefix(500) != generate_prefix(spec, 500)
    ok = violations == 0 and mismatches == 0
    return report(capsys, 8, "L/R normalization", ok,
                  f"100 directives at depth 30, {violations} violations, "
                  f"{mismatches} prefix mismatches at 500 letters")


# -- 9 ----------------------------------------------------------------------------------

def criterion_9(capsys=None):
    pts = limit_points(DirectiveSpec.parse("(Rb)^w"))
    has_fixed = any(p.word == EventuallyPeriodicWord("", "b") for p in pts)
    w = expand(EventuallyPeriodicWord("bbba", "b"), 200)
    tree = directive_parses(w, SubstitutionSet.from_generators(["Rb"], AB), 20)
    ok = has_fixed and not tree.empty
    return report(capsys, 9, "limit points of (Rb)^w", ok,
                  f"b^w among limit points: {has_fixed}, b^3ab^w parsed to depth "
                  f"{tree.reached_depth}/20")


# -- 10 ---------------------------------------------------------------------------------

def criterion_10(capsys=None):
    rng = random.Random(10)
    members = family_members(FamilyDescriptor("S_Lynd", bound=3))
    names = members.names()
    start = time.perf_counter()
    lyndon_fail = unbalanced = 0
    for _ in range(20):
        blocks = [rng.choice(names) for _ in range(rng.randint(1, 4))]
        pre_blocks = [rng.choice(names) for _ in range(rng.randint(0, 2))]
        per = tuple(g for b in blocks for g in members.words[b])
        pre = tuple(g for b in pre_blocks for g in members.words[b])
        w = generate_prefix(DirectiveSpec(pre, per, AB), 2000)
        lyndon_fail += is_lyndon_bounded(w, AB).fails
        unbalanced += not is_balanced(w).holds
    elapsed = time.perf_counter() - start
    ok = lyndon_fail == 0 and unbalanced == 0 and elapsed < 10
    return report(capsys, 10, "Lyndon Sturmian words from S_Lynd", ok,
                  f"20 directives x 2000 letters, {lyndon_fail} Lyndon failures, "
                  f"{unbalanced} unbalanced, {elapsed:.2f}s < 10s")


CRITERIA = [criterion_1, criterion_2, criterion_3, criterion_4, criterion_5,
            criterion_6, criterion_7, criterion_8, criterion_9, criterion_10]


@pytest.mark.parametrize("criterion", CRITERIA, ids=[f"criterion_{i}" for i in range(1, 11)])
def test_acceptance(criterion, capsys):
    assert criterion(capsys)


if __name__ == "__main__":
    results = [c() for c in CRITERIA]
    print(f"{sum(results)}/{len(results)} criteria pass")
    sys.exit(0 if all(results) else 1)
