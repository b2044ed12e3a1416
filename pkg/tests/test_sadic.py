import random

import pytest
from hypothesis import given, settings, strategies as st

from conftest import AB, ABC
from oracles import balanced_bruteforce, palindromic_closure_word
from stabset.desub import directive_parses
from stabset.directive import DirectiveSpec
from stabset.morphisms import L, R
from stabset.sadic import (FamilyDescriptor, family_members, generate_prefix,
                           normalize_directive, validate_directive_for_family)
from stabset.words import Alphabet

TRIBONACCI_40 = "abacabaabacababacabaabacabacabaabacababa"


def spec(text, alphabet=None, registry=None):
    return DirectiveSpec.parse(text, alphabet, registry)


# -- generation ---------------------------------------------------------------------

def test_generate_examples():
    assert generate_prefix(spec("(La Lb)^w"), 8) == "abaababa"
    assert generate_prefix(spec("(La)^w"), 5, seed="b") == "aaaaa"
    assert generate_prefix(spec("(La Lb Lc)^w"), 40) == TRIBONACCI_40


def test_tribonacci_matches_palindromic_closure():
    assert generate_prefix(spec("(La Lb Lc)^w"), 500) == palindromic_closure_word("abc", 500)


@pytest.mark.parametrize("directive", ["ab", "aab", "abb", "abac", "cab", "aabbc"])
def test_standard_words_match_palindromic_closure(directive):
    text = "(" + " ".join("L" + x for x in directive) + ")^w"
    letters = "".join(sorted(set(directive) | set("ab")))
    got = generate_prefix(spec(text, Alphabet(letters)), 300)
    assert got == palindromic_closure_word(directive, 300)


def test_seed_selects_a_chain():
    assert generate_prefix(spec("(Rb)^w"), 4) == "abbb"
    assert generate_prefix(spec("(Rb)^w"), 4, seed="b") == "bbbb"


def test_seed_must_converge():
    assert generate_prefix(spec("(Eab)^w"), 5, seed="b") == "bbbbb"
    # b is not on a chain and collapses to the single letter a
    with pytest.raises(ValueError):
        generate_prefix(spec("(Pa)^w"), 5, seed="b")
    with pytest.raises(ValueError):
        generate_prefix(spec("(La)^w"), 5, seed="c")


def test_generate_is_prefix_closed():
    s = spec("Ra (La Rb Lb)^w")
    long = generate_prefix(s, 300)
    for n in (0, 1, 7, 64, 299):
        assert generate_prefix(s, n) == long[:n]


def test_generated_word_is_fixed_by_the_directive():
    s = spec("Rb La (Lb Ra)^w")
    w = generate_prefix(s, 400)
    shifted = generate_prefix(s.shifted(2), 400)
    assert s.apply_range(0, 2, shifted, limit=400) == w


# -- families ---------------------------------------------------------------------------

def test_family_members_examples():
    assert family_members(FamilyDescriptor("S_bal")).names() == ["La", "Lb", "Ra", "Rb"]
    assert family_members(FamilyDescriptor("S_Lynd"), 2).names() == ["LaLaRb", "LaRb", "RbLa",
                                                                       "RbRbLa"]
    assert family_members(FamilyDescriptor("L_StrictStand"), 3).names() == [
        "LaLaLaLb", "LaLaLb", "LaLb", "LbLa", "LbLbLa", "LbLbLbLa"]


def test_family_member_values():
    fam = family_members(FamilyDescriptor("S_Lynd"), 2)
    assert fam["LaRb"].as_dict() == {"a": "aab", "b": "ab"}
    assert fam.words["RbRbLa"] == (R("b"), R("b"), L("a"))


def test_family_rejects_bad_alphabet():
    with pytest.raises(ValueError):
        FamilyDescriptor("S_bal", ABC)
    with pytest.raises(ValueError):
        FamilyDescriptor("S_unknown")


@pytest.mark.parametrize("text,tag,ok", [
    ("(La Lb)^w", "S_Sturm", True),
    ("(La)^w", "S_Sturm", False),
    ("(Ra Ra Lb)^w", "RstarL", True),
    ("(La Rb Rb)^w", "S_Lynd", True),
    ("Rb (La La Rb)^w", "S_Lynd", True),
    ("(La Lb)^w", "S_Lynd", False),
    ("(Ra Rb)^w", "RstarL", False),
    ("(La Lb Ra)^w", "S_bal", True),
])
def test_validate_examples(text, tag, ok):
    got, reason = validate_directive_for_family(spec(text), FamilyDescriptor(tag))
    assert got is ok, reason


def test_validate_reason_names_the_gap():
    ok, reason = validate_directive_for_family(spec("(La)^w"), FamilyDescriptor("S_Sturm"))
    assert reason == "no b-type generator in period"


def test_validate_strict_stand_needs_every_letter():
    fam = FamilyDescriptor("L_StrictStand", ABC)
    assert validate_directive_for_family(spec("(La Lb Lc)^w", ABC), fam)[0]
    assert not validate_directive_for_family(spec("(La Lb)^w", ABC), fam)[0]


@pytest.mark.parametrize("tag", ["S_bal", "S_Sturm", "S_Lynd", "RstarL"])
def test_pipeline_generate_then_parse(tag):
    fam = FamilyDescriptor(tag, bound=2)
    rng = random.Random(tag)
    members = family_members(fam)
    names = members.names()
    for _ in range(5):
        chosen = [rng.choice(names) for _ in range(rng.randint(1, 3))]
        gens = [g for name in chosen for g in members.words[name]]
        s = DirectiveSpec((), tuple(gens), AB)
        assert validate_directive_for_family(s, fam)[0]
        w = generate_prefix(s, 120)
        assert balanced_bruteforce(w[:60])
        tree = directive_parses(w, members, 3)
        assert not tree.empty


# -- normalization -----------------------------------------------------------------------------

def test_normalize_R_becomes_L():
    res = normalize_directive(spec("(Ra)^w"), 10)
    assert res.normalized == [L("a")] * 10
    assert str(res.periodic) == "(La)^w"


def test_normalize_keeps_normal_directive():
    res = normalize_directive(spec("(La Lb)^w"), 8)
    assert res.normalized == [L("a"), L("b")] * 4 and res.violations() == []


def test_normalize_R_before_L():
    s = spec("Rb (La)^w")
    res = normalize_directive(s, 12)
    assert res.violations() == []
    assert res.reproduce_prefix(200) == generate_prefix(s, 200)


def test_normalize_rejects_other_generators():
    with pytest.raises(ValueError):
        normalize_directive(spec("(La Eab)^w"), 4)


lr = st.sampled_from([L("a"), L("b"), R("a"), R("b")])


@settings(max_examples=60, deadline=None)
@given(st.lists(lr, max_size=3), st.lists(lr, min_size=1, max_size=4))
def test_normalized_directive_generates_the_same_word(pre, per):
    s = DirectiveSpec(tuple(pre), tuple(per), AB)
    res = normalize_directive(s, 20)
    assert res.violations() == []
    assert res.reproduce_prefix(200) == generate_prefix(s, 200)
    if res.periodic is not None:
        assert res.periodic.generators and all(g.tag in "LR" for g in res.periodic.generators)


@settings(max_examples=25, deadline=None)
@given(st.lists(lr, max_size=2), st.lists(lr, min_size=1, max_size=3))
def test_periodic_form_spells_the_rewritten_levels(pre, per):
    s = DirectiveSpec(tuple(pre), tuple(per), AB)
    res = normalize_directive(s, 30)
    if res.periodic is not None:
        spelled = [res.periodic.generator(k + 1) for k in range(len(res.normalized))]
        assert spelled == res.normalized
