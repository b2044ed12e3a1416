"""Command line front end.

Exit codes: 0 for Holds / success / Accept, 1 for Fails / Reject / no chain,
2 for Unknown / truncated, 3 for bad usage or input.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
from typing import List, Optional

from .desub import (SubstitutionSet, directive_parses, fixed_point_analysis,
                    genstabfin_bounded, limit_points, stablet_graph, stablet_of_directive,
                    stabultlet_bounded)
from .directive import DirectiveSpec
from .morphisms import (classify_episturmian_preserving, classify_sturmian_preserving,
                        parse_generator, read_morphism_file)
from .properties import (PropertyReport, detect_ultimate_period, is_balanced,
                         is_LSP_prefixal, is_lyndon_bounded, is_recurrent_bounded,
                         left_special_check, reversal_check)
from .sadic import FamilyDescriptor, family_members, generate_prefix, normalize_directive
from .verdict import Holds, Unknown
from .words import Alphabet, EventuallyPeriodicWord, expand, read_word_file

USAGE_ERROR = 3

SET_NAMES = {
    "Sbal": "S_bal", "SSturm": "S_Sturm", "SLynd": "S_Lynd", "Lfam": "L_family",
    "Rfam": "R_family", "LRfam": "LR_family", "RstarL": "RstarL",
    "LStrictStand": "L_StrictStand", "Sstrictepi": "S_strictepi",
}


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(USAGE_ERROR, f"{self.prog}: error: {message}\n")


def _alphabet(args, *words: str) -> Alphabet:
    if getattr(args, "alphabet", None):
        return Alphabet(args.alphabet)
    return Alphabet.of("ab", *words)


def _registry(args) -> dict:
    if not getattr(args, "morphisms", None):
        return {}
    return dict(SubstitutionSet.from_directory(args.morphisms).members)


def _read_word(args) -> str:
    if args.word is not None:
        text = args.word
    elif args.input in (None, "-"):
        text = sys.stdin.read().rstrip("\r\n")
    else:
        text = read_word_file(args.input)
    text = text.strip()
    if "|" in text:
        return expand(EventuallyPeriodicWord.parse(text), args.expand)
    if not text:
        raise UsageError("empty input word")
    return text


def load_set(name: str, alphabet: Alphabet) -> SubstitutionSet:
    """Built-in family name (with optional ``:bound``), generator list, or directory."""
    if os.path.isdir(name):
        return SubstitutionSet.from_directory(name)
    base, _, bound = name.partition(":")
    if base in SET_NAMES:
        tag = SET_NAMES[base]
        fam_alphabet = Alphabet("ab") if tag in ("S_bal", "S_Sturm", "S_Lynd") else alphabet
        fam = FamilyDescriptor(tag, fam_alphabet, int(bound) if bound else 3)
        return family_members(fam)
    gens = [parse_generator(t) for t in name.replace(",", " ").split()]
    if not gens or any(g.tag == "N" for g in gens):
        raise UsageError(f"unknown substitution set {name!r}")
    letters = set(alphabet.letters)
    for g in gens:
        letters.update(g.letters)
    return SubstitutionSet.from_generators(gens, Alphabet("".join(sorted(letters))))


def _emit(args, text: str, machine: object):
    if args.format == "machine":
        out = machine if isinstance(machine, str) else json.dumps(machine, sort_keys=True) + "\n"
        sys.stdout.write(out)
    else:
        sys.stdout.write(text)


def _directive(args) -> DirectiveSpec:
    alphabet = Alphabet(args.alphabet) if args.alphabet else None
    return DirectiveSpec.parse(args.directive, alphabet, _registry(args))


# -- subcommands ----------------------------------------------------------------

def cmd_generate(args) -> int:
    spec = _directive(args)
    w = generate_prefix(spec, args.length, args.seed)
    _emit(args, w + "\n", {"directive": str(spec), "seed": args.seed, "length": args.length, "prefix": w})
    return 0


def cmd_parse(args) -> int:
    w = _read_word(args)
    S = load_set(args.set, _alphabet(args, w))
    tree = directive_parses(w, S, args.depth, args.budget)
    _emit(args, tree.to_text(), tree.to_machine())
    return tree.verdict().exit_code


def cmd_check(args) -> int:
    w = _read_word(args)
    prop = args.property
    params = {"length": len(w)}
    if prop == "balanced":
        v = is_balanced(w, method=args.method)
        params["method"] = args.method
    elif prop in ("special", "lsp", "reversal"):
        check = {"special": left_special_check, "lsp": is_LSP_prefixal, "reversal": reversal_check}[prop]
        v = check(w, args.maxlen)
        params["maxlen"] = args.maxlen
    elif prop == "recurrent":
        v = is_recurrent_bounded(w, args.k, args.margin)
        params.update(k=args.k, margin=args.margin)
    elif prop == "lyndon":
        v = is_lyndon_bounded(w, Alphabet(args.alphabet) if args.alphabet else None)
    else:
        found = detect_ultimate_period(w)
        v = Holds(list(found)) if found else Unknown(len(w))
    report = PropertyReport(prop, v, params)
    _emit(args, report.to_text(), report.to_json() + "\n")
    return v.exit_code


def cmd_morphism(args) -> int:
    f = read_morphism_file(args.file)
    if args.action == "fixed-points":
        rep = fixed_point_analysis(f)
        text = (f"period: {rep.period}\nexpanding seeds: {' '.join(rep.expanding_seeds) or '-'}\n"
                f"mortal letters: {' '.join(rep.mortal_letters) or '-'}\n"
                + "".join(f"family: {fam}\n" for fam in rep.families))
        _emit(args, text, rep.to_dict())
        return 0
    if args.family == "sturmian":
        dec = classify_sturmian_preserving(f)
    else:
        dec = classify_episturmian_preserving(f)
    machine = {"verdict": dec.verdict, "factors": [g.token for g in dec.factors],
               "residual": dec.residual.as_dict() if dec.residual is not None else None,
               "witness": dec.witness}
    _emit(args, str(dec) + "\n", machine)
    return 0 if dec.accepted else 1


def cmd_stablet(args) -> int:
    if args.directive:
        spec = _directive(args)
        let = sorted(stablet_of_directive(spec))
        ult = sorted(stabultlet_bounded(spec, args.bound), key=lambda u: (len(u), u))
        gen = sorted(genstabfin_bounded(spec, args.bound), key=lambda u: (len(u), u))
        text = (f"StabLet: {{{', '.join(let)}}}\nStabUltLet (<= {args.bound}): {{{', '.join(ult)}}}\n"
                f"GenStabFin (<= {args.bound}): {{{', '.join(gen)}}}\n")
        _emit(args, text, {"stablet": let, "stabultlet": ult, "genstabfin": gen, "bound": args.bound})
        return 0
    if not args.set:
        raise UsageError("stablet needs --set or --directive")
    S = load_set(args.set, _alphabet(args))
    g = stablet_graph(S)
    let = sorted(g.stablet)
    text = "".join(f"{x} <-{f}- {y}\n" for x, f, y in g.edges)
    text += f"StabLet: {{{', '.join(let)}}}\n" + ("no circuit: StabLet is empty\n" if g.acyclic else "")
    _emit(args, text, {"stablet": let, "edges": [list(e) for e in g.edges], "acyclic": g.acyclic})
    return 0


def cmd_limit_points(args) -> int:
    spec = _directive(args)
    pts = limit_points(spec)
    text = "".join(f"{p.chain.letter}: {p.prefix(args.length)}"
                   + ("" if p.chain.expanding else " (periodic)") + "\n" for p in pts)
    machine = [{"chain": p.chain.letter, "expanding": p.chain.expanding,
                "prefix": p.prefix(args.length)} for p in pts]
    _emit(args, text, machine)
    return 0


def cmd_normalize(args) -> int:
    spec = _directive(args)
    res = normalize_directive(spec, args.depth, args.seed)
    machine = {"normalized": [g.token for g in res.normalized], "first_letters": res.first_letters,
               "periodic": str(res.periodic) if res.periodic else None}
    _emit(args, str(res) + "\n", machine)
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="stabset", description="Stable sets of substitutions and S-adic words.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(sp, word=False, directive=False):
        sp.add_argument("--format", choices=("text", "machine"), default="text")
        sp.add_argument("--alphabet", help="letters in order, e.g. abc")
        if word:
            sp.add_argument("input", nargs="?", help="word file, or - for stdin")
            sp.add_argument("--word", help="inline word, or 'pre | period'")
            sp.add_argument("--expand", type=int, default=200,
                            help="length used for 'pre | period' input")
        if directive:
            sp.add_argument("--directive", required=directive == "required")
            sp.add_argument("--morphisms", help="directory of named morphism files")

    g = sub.add_parser("generate", help="prefix of an S-adic limit")
    common(g, directive="required")
    g.add_argument("--length", type=int, default=100)
    g.add_argument("--seed")
    g.set_defaults(func=cmd_generate)

    pa = sub.add_parser("parse", help="tree of desubstitution chains")
    common(pa, word=True)
    pa.add_argument("--set", required=True)
    pa.add_argument("--depth", type=int, default=5)
    pa.add_argument("--budget", type=int, default=10**6)
    pa.set_defaults(func=cmd_parse)

    c = sub.add_parser("check", help="property check on a prefix")
    c.add_argument("property", choices=("balanced", "special", "lsp", "reversal",
                                        "recurrent", "lyndon", "period"))
    common(c, word=True)
    c.add_argument("--maxlen", type=int, default=12)
    c.add_argument("--k", type=int, default=3)
    c.add_argument("--margin", type=int, default=50)
    c.add_argument("--method", choices=("fast", "oracle"), default="fast")
    c.set_defaults(func=cmd_check)

    m = sub.add_parser("morphism", help="classify a morphism or list its fixed points")
    m.add_argument("action", choices=("classify", "fixed-points"))
    m.add_argument("file")
    m.add_argument("--family", choices=("sturmian", "episturmian"), default="episturmian")
    m.add_argument("--format", choices=("text", "machine"), default="text")
    m.set_defaults(func=cmd_morphism)

    s = sub.add_parser("stablet", help="single-letter stability sets")
    common(s, directive=True)
    s.add_argument("--set")
    s.add_argument("--bound", type=int, default=6)
    s.set_defaults(func=cmd_stablet)

    lp = sub.add_parser("limit-points", help="limit points of a directive")
    common(lp, directive="required")
    lp.add_argument("--length", type=int, default=40)
    lp.set_defaults(func=cmd_limit_points)

    n = sub.add_parser("normalize", help="rewrite an L/R directive")
    common(n, directive="required")
    n.add_argument("--depth", type=int, default=10)
    n.add_argument("--seed")
    n.set_defaults(func=cmd_normalize)
    return p


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (UsageError, ValueError, KeyError, OSError) as exc:
        print(f"stabset: error: {exc}", file=sys.stderr)
        return USAGE_ERROR


if __name__ == "__main__":
    sys.exit(main())
