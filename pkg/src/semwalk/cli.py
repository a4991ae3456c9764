"""Command-line front end.

One binary, four subcommand groups:

  semwalk rc       validate | generate | lower | upper | resets | is-special
  semwalk walk     stationary | profile | lumped | simulate
  semwalk lattice  census
  semwalk graph    dot

All payloads are JSON with rationals as "num/den" strings.  Exit codes are
a stable contract: 0 success, 1 validation failure (diagnostic payload on
stdout), 2 parse error, 3 internal assertion, 4 enumeration bound exceeded.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from . import codes, congruences, graphs, walks
from .words import Alphabet, Word, WordError

EXIT_OK = 0
EXIT_VALIDATION = 1
EXIT_PARSE = 2
EXIT_INTERNAL = 3
EXIT_BOUND = 4


class ParseFailure(Exception):
    pass


def _load_json(path: str) -> dict:
    try:
        with open(path) as fh:
            data = json.load(fh)
    except (OSError, json.JSONDecodeError) as e:
        raise ParseFailure(f"cannot read JSON from {path}: {e}") from e
    if not isinstance(data, dict):
        raise ParseFailure(f"{path}: expected a JSON object")
    return data


def _alphabet_of(data: dict, path: str) -> Alphabet:
    if "alphabet" not in data:
        raise ParseFailure(f"{path}: missing 'alphabet'")
    try:
        return Alphabet(str(data["alphabet"]))
    except WordError as e:
        raise ParseFailure(f"{path}: {e}") from e


def _parse_congruence_file(path: str) -> tuple[Alphabet, int, list[list[Word]]]:
    """Returns the raw block lists in file order; canonicalization is the
    caller's concern so that output can be aligned back to the input."""
    data = _load_json(path)
    alphabet = _alphabet_of(data, path)
    try:
        k = int(data["k"])
        blocks = [[alphabet.word(str(w)) for w in blk] for blk in data["blocks"]]
    except (KeyError, TypeError, WordError) as e:
        raise ParseFailure(f"{path}: malformed congruence: {e}") from e
    return alphabet, k, blocks


def _parse_code_file(path: str) -> codes.IdealRep:
    data = _load_json(path)
    alphabet = _alphabet_of(data, path)
    try:
        word_list = [alphabet.word(str(w)) for w in data["code"]]
        k = int(data["k"]) if "k" in data else max((len(w) for w in word_list), default=1)
    except (KeyError, TypeError, WordError) as e:
        raise ParseFailure(f"{path}: malformed code: {e}") from e
    code = codes.SemaphoreCode(alphabet, tuple(word_list))
    return codes.IdealRep(code, k)


def _pi_arg(alphabet: Alphabet, text: str) -> walks.LetterDistribution:
    try:
        return walks.LetterDistribution.parse(alphabet, text)
    except (ValueError, ZeroDivisionError) as e:
        raise ParseFailure(f"bad --pi value: {e}") from e


def _congruence_json(rc: congruences.RightCongruence) -> dict:
    return {
        "alphabet": rc.alphabet.letters,
        "k": rc.k,
        "blocks": [[str(w) for w in blk] for blk in rc.blocks],
    }


def _code_json(ideal: codes.IdealRep) -> dict:
    payload = {
        "alphabet": ideal.alphabet.letters,
        "code": [str(w) for w in ideal.code.words],
        "k": ideal.k,
        "infinite_tail": ideal.code.infinite_tail,
    }
    if any(w.is_empty for w in ideal.code.words):
        # The empty word renders as ""; flag it so the payload is unambiguous.
        payload["epsilon"] = True
    return payload


def _emit(payload: dict, args) -> None:
    text = json.dumps(payload, indent=2, sort_keys=True)
    out = getattr(args, "out", None)
    if out:
        with open(out, "w") as fh:
            fh.write(text + "\n")
    else:
        print(text)


# ---------------------------------------------------------------- rc group


def _cmd_rc(args) -> int:
    alphabet, k, raw_blocks = _parse_congruence_file(args.infile)
    if args.action == "validate":
        rc = congruences.validate(alphabet, k, raw_blocks)
        _emit({"valid": True, "congruence": _congruence_json(rc)}, args)
        return EXIT_OK
    rc = congruences.validate(alphabet, k, raw_blocks)
    if args.action == "lower":
        approx, ideal = codes.lower_approx(rc)
        _emit({"congruence": _congruence_json(approx), "code": _code_json(ideal)}, args)
    elif args.action == "upper":
        approx, ideal = codes.upper_approx(rc)
        _emit({"congruence": _congruence_json(approx), "code": _code_json(ideal)}, args)
    elif args.action == "resets":
        _emit(_code_json(codes.reset_code(rc)), args)
    elif args.action == "is-special":
        _emit({"special": codes.is_special(rc)}, args)
    return EXIT_OK


def _cmd_rc_generate(args) -> int:
    data = _load_json(args.infile)
    alphabet = _alphabet_of(data, args.infile)
    try:
        k = int(data["k"])
        pairs = {(alphabet.word(str(u)), alphabet.word(str(v))) for u, v in data["pairs"]}
    except (KeyError, TypeError, ValueError, WordError) as e:
        raise ParseFailure(f"{args.infile}: malformed pair set: {e}") from e
    rc = congruences.generate(pairs, alphabet, k)
    _emit({"congruence": _congruence_json(rc)}, args)
    return EXIT_OK


# -------------------------------------------------------------- walk group


def _walk_congruence(args) -> congruences.RightCongruence:
    alphabet, k, raw_blocks = _parse_congruence_file(args.infile)
    return congruences.validate(alphabet, k, raw_blocks)


def _cmd_walk(args) -> int:
    if args.action == "stationary":
        ideal = _parse_code_file(args.code)
        pi = _pi_arg(ideal.alphabet, args.pi)
        vec = walks.stationary(ideal, pi)
        by_word = vec.as_dict()
        # Align output to the code order given in the input file.
        data = _load_json(args.code)
        order = [str(w) for w in data["code"]]
        _emit({"states": order, "stationary": [str(by_word[w]) for w in order]}, args)
        return EXIT_OK

    if args.action == "profile":
        rc = _walk_congruence(args)
        pi = _pi_arg(rc.alphabet, args.pi)
        prof = walks.reset_profile(rc, pi)
        _emit(
            {
                "P": [str(x) for x in prof.cumulative],
                "p": [str(x) for x in prof.increments],
                "t": str(prof.hitting_time),
            },
            args,
        )
        return EXIT_OK

    if args.action == "lumped":
        alphabet, k, raw_blocks = _parse_congruence_file(args.infile)
        rc = congruences.validate(alphabet, k, raw_blocks)
        pi = _pi_arg(alphabet, args.pi)
        lw = walks.lumped(rc, pi)
        by_label = lw.stationary.as_dict()
        labels = ["{" + ",".join(str(w) for w in sorted(blk)) + "}" for blk in raw_blocks]
        rows = {lab: row for lab, row in zip(lw.matrix.labels, lw.matrix.rows)}
        col = {lab: i for i, lab in enumerate(lw.matrix.labels)}
        _emit(
            {
                "blocks": [[str(w) for w in sorted(blk)] for blk in raw_blocks],
                "stationary": [str(by_label[lab]) for lab in labels],
                "matrix": [
                    [str(rows[lab][col[lab2]]) for lab2 in labels] for lab in labels
                ],
            },
            args,
        )
        return EXIT_OK

    if args.action == "simulate":
        if args.code:
            ideal = _parse_code_file(args.code)
        else:
            ideal = codes.reset_code(_walk_congruence(args))
        pi = _pi_arg(ideal.alphabet, args.pi)
        result = walks.simulate(ideal, pi, steps=args.steps, seed=args.seed)
        _emit(
            {
                "states": list(result.labels),
                "visits": list(result.visits),
                "frequencies": [repr(f) for f in result.frequencies],
                "episodes": result.episodes,
                "mean_reset_time": repr(result.mean_reset_time),
                "steps": result.steps,
                "seed": result.seed,
            },
            args,
        )
        return EXIT_OK
    raise ParseFailure(f"unknown walk action {args.action!r}")


# ------------------------------------------------------ lattice and graph


def _cmd_lattice_census(args) -> int:
    alphabet = Alphabet.of_size(args.alphabet_size)
    elements = congruences.enumerate_all(alphabet, args.k, carrier_bound=args.carrier_bound)
    report = congruences.lattice_report(elements)
    wanted = args.checks or ["semimodular", "modular", "atomistic", "jordan_dedekind"]
    payload: dict = {
        "alphabet": alphabet.letters,
        "k": args.k,
        "count": report.size,
        "atoms": [str(elements[i]) for i in report.atoms],
        "checks": {name: report.flags[name] for name in wanted},
    }
    witnesses: dict = {}
    if "modular" in wanted and not report.modular:
        witnesses["pentagon"] = [str(elements[i]) for i in report.pentagon]
    if "semimodular" in wanted and not report.semimodular:
        witnesses["semimodular_pentagon"] = [str(elements[i]) for i in report.semimodular_pentagon]
    if "atomistic" in wanted and not report.atomistic:
        witnesses["not_join_of_atoms"] = str(elements[report.non_atomistic_witness])
    if "jordan_dedekind" in wanted and not report.jordan_dedekind:
        witnesses["unequal_chains"] = [
            [str(elements[i]) for i in chain] for chain in report.unequal_chains
        ]
    payload["witnesses"] = witnesses
    _emit(payload, args)
    return EXIT_OK


def _cmd_graph_dot(args) -> int:
    rc = _walk_congruence(args)
    text = graphs.to_dot(graphs.cayley(rc))
    if getattr(args, "out", None):
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


# ------------------------------------------------------------------ main


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="semwalk", description=__doc__)
    sub = parser.add_subparsers(dest="group", required=True)

    rc = sub.add_parser("rc", help="right congruence operations")
    rc_sub = rc.add_subparsers(dest="action", required=True)
    for name in ["validate", "lower", "upper", "resets", "is-special"]:
        p = rc_sub.add_parser(name)
        p.add_argument("--in", dest="infile", required=True)
        p.add_argument("--out", dest="out")
        p.set_defaults(func=_cmd_rc)
    p = rc_sub.add_parser("generate")
    p.add_argument("--in", dest="infile", required=True, help="JSON with alphabet, k, pairs")
    p.add_argument("--out", dest="out")
    p.set_defaults(func=_cmd_rc_generate)

    walk = sub.add_parser("walk", help="exact random-walk analytics")
    walk_sub = walk.add_subparsers(dest="action", required=True)
    p = walk_sub.add_parser("stationary")
    p.add_argument("--code", required=True, help="semaphore code JSON")
    p.add_argument("--pi", required=True)
    p.add_argument("--out", dest="out")
    p.set_defaults(func=_cmd_walk)
    for name in ["profile", "lumped"]:
        p = walk_sub.add_parser(name)
        p.add_argument("--in", dest="infile", required=True)
        p.add_argument("--pi", required=True)
        p.add_argument("--out", dest="out")
        p.set_defaults(func=_cmd_walk)
    p = walk_sub.add_parser("simulate")
    p.add_argument("--in", dest="infile", help="congruence JSON (walk on its reset code)")
    p.add_argument("--code", help="semaphore code JSON")
    p.add_argument("--pi", required=True)
    p.add_argument("--steps", type=int, default=100_000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", dest="out")
    p.set_defaults(func=_cmd_walk)

    lattice = sub.add_parser("lattice", help="lattice census over RC(A^k)")
    lat_sub = lattice.add_subparsers(dest="action", required=True)
    p = lat_sub.add_parser("census")
    p.add_argument("-g", "--alphabet-size", type=int, required=True)
    p.add_argument("-k", "--k", type=int, required=True)
    p.add_argument("--checks", nargs="*", choices=["semimodular", "modular", "atomistic", "jordan_dedekind"])
    p.add_argument("--carrier-bound", type=int, default=congruences.DEFAULT_CARRIER_BOUND)
    p.add_argument("--out", dest="out")
    p.set_defaults(func=_cmd_lattice_census)

    graph = sub.add_parser("graph", help="graph exports")
    graph_sub = graph.add_subparsers(dest="action", required=True)
    p = graph_sub.add_parser("dot")
    p.add_argument("--in", dest="infile", required=True)
    p.add_argument("--out", dest="out")
    p.set_defaults(func=_cmd_graph_dot)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ParseFailure as e:
        print(json.dumps({"error": "parse", "message": str(e)}), file=sys.stderr)
        return EXIT_PARSE
    except congruences.ClosureViolation as e:
        payload = {
            "error": "closure",
            "message": str(e),
            "witness": {"u": str(e.u), "v": str(e.v), "letter": str(e.letter)},
        }
        print(json.dumps(payload))
        return EXIT_VALIDATION
    except congruences.BoundExceeded as e:
        print(json.dumps({"error": "bound", "message": str(e)}), file=sys.stderr)
        return EXIT_BOUND
    except (congruences.NotAPartitionError, codes.CodeError, walks.WalkError, WordError, graphs.GraphError, congruences.CongruenceError) as e:
        print(json.dumps({"error": "validation", "message": str(e)}))
        return EXIT_VALIDATION
    except AssertionError as e:
        print(json.dumps({"error": "internal", "message": str(e)}), file=sys.stderr)
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
