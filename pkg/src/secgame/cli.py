"""secgame command line.

Exit codes: 0 ok, 1 verification failure, 2 usage or game-file error,
3 enumeration cap exceeded, 4 closed-form precondition not met.
"""
from __future__ import annotations

import argparse
import json
import logging
import os
import sys
from fractions import Fraction

from . import gamefile
from .core import AttackerMixedStrategy, best_response_value
from .errors import CapExceeded, GameFormatError, PreconditionFailed, TooManySchedules
from .gamefile import fmt_both, fmt_decimal, fmt_rational

EXIT_OK, EXIT_FAIL, EXIT_PARSE, EXIT_CAP, EXIT_PRECONDITION = 0, 1, 2, 3, 4

log = logging.getLogger("secgame")


def _bits(d):
    return "".join(map(str, d))


def _attack_name(q):
    return "_".join(f"t{i + 1}" for i in q) or "none"


def _rat_json(x):
    return {"exact": fmt_rational(x), "decimal": fmt_decimal(x)}


def _defender_json(C):
    return {_bits(d): fmt_rational(p) for d, p in sorted(C.support.items(), reverse=True)}


def _attacker_json(A):
    return {_attack_name(q): fmt_rational(p) for q, p in sorted(A.probs.items())}


def _print_dist(title, items):
    print(title)
    for key, p in items:
        print(f"  {key:>12}  {fmt_both(p)}")


def _print_profile(prof, game):
    _print_dist("defender distribution over coverage vectors:",
                [(_bits(d), p) for d, p in sorted(prof.defender.support.items(), reverse=True)])
    _print_dist("coverage:", [(t.name or f"t{i + 1}", c)
                              for i, (t, c) in enumerate(zip(game.targets, prof.coverage))])
    _print_dist("attacker distribution:",
                [(_attack_name(q), p) for q, p in sorted(prof.attacker.probs.items())])
    print(f"defender value: {fmt_both(prof.defender_value)}")
    print(f"attacker value: {fmt_both(prof.attacker_value)}")


# ---------------------------------------------------------------------------
# verbs


def cmd_solve(args):
    from .equilibria import solve_minimax, solve_nash, solve_sse, _profile, MINIMAX
    game = gamefile.load(args.game)
    if args.concept == "sse":
        prof = solve_sse(game, args.backend)
    elif args.concept == "nash":
        prof = solve_nash(game, args.backend)
    else:
        C, e = solve_minimax(game, args.backend)
        br = best_response_value(C.marginals(), game)
        prof = _profile(game, C, AttackerMixedStrategy.pure(br.responses[0]), MINIMAX)
    if args.json:
        out = {
            "game": gamefile.game_to_dict(game),
            "concept": args.concept,
            "defender": _defender_json(prof.defender),
            "coverage": [fmt_rational(c) for c in prof.coverage],
            "attacker": _attacker_json(prof.attacker),
            "defender_value": _rat_json(prof.defender_value),
            "attacker_value": _rat_json(prof.attacker_value),
        }
        if args.concept == "minimax":
            out["e_star"] = _rat_json(prof.attacker_value)
        print(json.dumps(out, indent=1, sort_keys=True))
        return EXIT_OK
    print(f"concept: {args.concept}")
    _print_profile(prof, game)
    if args.concept == "minimax":
        print(f"E*: {fmt_both(prof.attacker_value)}")
    return EXIT_OK


def cmd_check_sse_ne(args):
    from .equilibria import check_sse_in_ne_full, solve_sse
    from .lp import check_solution
    game = gamefile.load(args.game)
    sse = solve_sse(game, args.backend)
    res = check_sse_in_ne_full(game, sse.defender, args.backend)
    _print_dist("SSE defender distribution:",
                [(_bits(d), p) for d, p in sorted(sse.defender.support.items(), reverse=True)])
    if res.witness is not None:
        print("SSE strategy is part of a Nash profile: yes")
        _print_dist("completing attacker strategy:",
                    [(_attack_name(q), p) for q, p in sorted(res.witness.probs.items())])
    else:
        ok = check_solution(res.program, res.solution)
        print("SSE strategy is part of a Nash profile: no")
        print(f"infeasibility certificate verified: {'yes' if ok else 'NO'}")
        if not ok:
            return EXIT_FAIL
    return EXIT_OK


def cmd_closed_form(args):
    from .equilibria import closed_form_attacker, closed_form_defender
    game = gamefile.load(args.game)
    try:
        cf = closed_form_defender(game, args.backend)
    except PreconditionFailed as exc:
        print(f"defender closed form not applicable: {exc}")
        return EXIT_PRECONDITION
    print(f"E*: {fmt_both(cf.e_star)}")
    print("T*: " + ", ".join(game.targets[i].name or f"t{i + 1}" for i in sorted(cf.t_star)))
    _print_dist("coverage:", [(t.name or f"t{i + 1}", c)
                              for i, (t, c) in enumerate(zip(game.targets, cf.coverage))])
    try:
        full = closed_form_attacker(game, cf)
    except PreconditionFailed as exc:
        print(f"attacker closed form not applicable: {exc}")
        return EXIT_OK
    print(f"beta: {fmt_both(full.beta)}")
    _print_dist("attacker distribution:", [(_attack_name(q), p)
                                           for q, p in sorted(full.attacker.probs.items())])
    return EXIT_OK


def cmd_gen(args):
    from .experiments import GeneratorParams, generate_game, params_to_dict
    params = GeneratorParams(args.targets, args.def_res, args.att_res, args.sched_size,
                             args.n_scheds, args.count, args.seed)
    os.makedirs(args.out, exist_ok=True)
    width = max(4, len(str(args.count - 1)))
    for i in range(args.count):
        gamefile.dump(generate_game(params, i), os.path.join(args.out, f"game_{i:0{width}d}.json"))
    with open(os.path.join(args.out, "params.json"), "w", encoding="utf-8") as fh:
        json.dump(params_to_dict(params), fh, indent=1, sort_keys=True)
        fh.write("\n")
    print(f"wrote {args.count} games to {args.out}")
    return EXIT_OK


def _load_sweep_config(path, games, seed):
    from .experiments import GeneratorParams
    try:
        with open(path, encoding="utf-8") as fh:
            raw = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise GameFormatError(f"cannot read sweep config {path}: {exc}") from exc
    if not isinstance(raw, list):
        raise GameFormatError("sweep config must be a JSON list of generator parameter objects")
    grid = []
    for i, d in enumerate(raw):
        if not isinstance(d, dict):
            raise GameFormatError(f"sweep config entry {i} is not an object")
        d = dict(d)
        if games is not None:
            d["n_games"] = games
        if seed is not None:
            d["seed"] = seed
        try:
            grid.append(GeneratorParams.from_dict(d))
        except (TypeError, ValueError) as exc:
            raise GameFormatError(f"sweep config entry {i}: {exc}") from exc
    return grid


def cmd_sweep(args):
    from .experiments import params_to_dict, records_to_csv, run_sweep
    grid = _load_sweep_config(args.config, args.games_per_cell, args.seed)

    def progress(rec):
        p = rec.params
        log.info("K=%d L=%d size=%d scheds=%d: %d/%d SSE not NE (%d ms)", p.defender_resources,
                 p.attacker_resources, p.schedule_size, p.n_schedules, rec.sse_not_ne_count,
                 rec.games_run, rec.wall_time_ms)

    records = run_sweep(grid, args.workers, args.backend, progress)
    with open(args.out, "w", encoding="utf-8", newline="") as fh:
        fh.write(records_to_csv(records))
    if args.json_out:
        # wall time is left out so that reruns are byte-identical
        cells = [{"params": params_to_dict(r.params), "games_run": r.games_run,
                  "sse_not_ne": r.sse_not_ne_count, "fraction": fmt_rational(r.fraction),
                  "failures": r.failures} for r in records]
        with open(args.json_out, "w", encoding="utf-8") as fh:
            json.dump(cells, fh, indent=1, sort_keys=True)
            fh.write("\n")
    failures = sum(r.failures for r in records)
    print(f"wrote {len(records)} cells to {args.out}"
          + (f" ({failures} games failed verification)" if failures else ""))
    return EXIT_FAIL if failures else EXIT_OK


def _parse_prob(text):
    try:
        p = Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a rational: {text!r}") from None
    if not 0 <= p <= 1:
        raise argparse.ArgumentTypeError("observation probability must lie in [0, 1]")
    return p


def cmd_obs(args):
    from .observability import ObservabilityGame, solve_observability
    game = gamefile.load(args.game)
    og = ObservabilityGame.with_equilibrium_rows(game, args.pobs, args.grid, args.backend)
    _, report = solve_observability(og, args.backend)
    if args.json:
        report = dict(report, game=gamefile.game_to_dict(game))
        print(json.dumps(report, indent=1, sort_keys=True))
        return EXIT_OK
    print(f"p_obs: {report['p_obs']}   grid m: {report['grid_m']}   rows: {report['n_rows']}")
    _print_dist("averaged defender distribution:",
                [(k, Fraction(v)) for k, v in report["defender_averaged"].items()])
    _print_dist("unobserved attacker distribution:",
                [(k, Fraction(v)) for k, v in report["attacker_unobserved"].items()])
    print(f"defender value: {fmt_both(Fraction(report['defender_value']))}")
    print(f"SSE value of the base game: {fmt_both(Fraction(report['sse_value']))}")
    for k, v in sorted(report["flags"].items()):
        print(f"{k}: {'pass' if v else 'FAIL'}")
    if report["mixture_note"]["rows_in_support"] > 1:
        print("note: " + report["mixture_note"]["note"])
    return EXIT_OK


def cmd_verify_paper(args):
    from .paper_fixtures import run_fixtures
    results = run_fixtures()
    width = max(len(r.name) for r in results)
    for r in results:
        n_ok = sum(ok for _, ok in r.checks)
        status = "PASS" if r.passed else "FAIL"
        print(f"{status}  {r.name:<{width}}  {n_ok}/{len(r.checks)} checks  {r.seconds:.2f}s")
        if args.verbose or not r.passed:
            for label, ok in r.checks:
                print(f"      [{'ok' if ok else 'FAIL'}] {label}")
            if r.error:
                print(f"      error: {r.error}")
    bad = [r.name for r in results if not r.passed]
    print(f"{len(results) - len(bad)}/{len(results)} fixtures passed")
    return EXIT_FAIL if bad else EXIT_OK


# ---------------------------------------------------------------------------


def _positive(text):
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if v < 1:
        raise argparse.ArgumentTypeError("must be positive")
    return v


def _seed(text):
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if not 0 <= v < 2**64:
        raise argparse.ArgumentTypeError("seed must fit in 64 unsigned bits")
    return v


def build_parser():
    from .lp import _backend
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--backend", choices=_backend.available(), default=None,
                        help="simplex tableau implementation (default: fastest available)")
    common.add_argument("--dump-lp", action="store_true",
                        help="print every linear program to stderr before solving it")
    common.add_argument("-v", "--verbose", action="store_true")

    ap = argparse.ArgumentParser(prog="secgame", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="verb", required=True, metavar="VERB")

    p = sub.add_parser("solve", parents=[common], help="solve one game")
    p.add_argument("--game", required=True)
    p.add_argument("--concept", required=True, choices=("sse", "nash", "minimax"))
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("check-sse-ne", parents=[common],
                       help="is the SSE defender strategy part of a Nash profile?")
    p.add_argument("--game", required=True)
    p.set_defaults(func=cmd_check_sse_ne)

    p = sub.add_parser("closed-form", parents=[common],
                       help="unique Nash strategies of a single-target game")
    p.add_argument("--game", required=True)
    p.set_defaults(func=cmd_closed_form)

    p = sub.add_parser("gen", parents=[common], help="write a corpus of random games")
    p.add_argument("--targets", type=_positive, required=True)
    p.add_argument("--def-res", type=_positive, required=True)
    p.add_argument("--att-res", type=_positive, required=True)
    p.add_argument("--sched-size", type=_positive, required=True)
    p.add_argument("--n-scheds", type=_positive, required=True)
    p.add_argument("--count", type=_positive, required=True)
    p.add_argument("--seed", type=_seed, required=True)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("sweep", parents=[common], help="fraction of games whose SSE is not Nash")
    p.add_argument("--config", required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--games-per-cell", type=_positive, default=None)
    p.add_argument("--seed", type=_seed, default=None)
    p.add_argument("--workers", type=_positive, default=1)
    p.add_argument("--json-out", default=None, help="also write per-cell results as JSON")
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("obs", parents=[common], help="partially observed commitment")
    p.add_argument("--game", required=True)
    p.add_argument("--pobs", type=_parse_prob, required=True, metavar="P/Q")
    p.add_argument("--grid", type=_positive, required=True, metavar="M")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_obs)

    p = sub.add_parser("verify-paper", parents=[common], help="replay the worked examples")
    p.set_defaults(func=cmd_verify_paper)
    return ap


def main(argv=None):
    ap = build_parser()
    args = ap.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    from .lp import set_dump_stream
    set_dump_stream(sys.stderr if args.dump_lp else None)
    try:
        return args.func(args)
    except (GameFormatError, TooManySchedules) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except CapExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CAP
    finally:
        set_dump_stream(None)


if __name__ == "__main__":
    sys.exit(main())
