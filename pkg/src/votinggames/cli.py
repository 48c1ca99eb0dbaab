"""Command line front end.

An election lives in a directory:

    election.json   public header (no board, no result)
    secret.json     the tallier's key
    board.jsonl     append-only ballots
    transcript.json written by ``tally``; everything needed to verify

Exit codes: 0 success or accept, 1 verify reject or unmet game
expectation, 2 usage or parse error.
"""

from __future__ import annotations

import argparse
import json
import secrets
import sys
import time
from pathlib import Path

from . import adversaries as adv_mod
from .board import (
    BoardStore,
    Transcript,
    TranscriptError,
    decode,
    make_transcript,
    seed_commitment,
    transcript_verify,
)
from .catalog import SCHEMES, VARIANTS, make_scheme
from .games import CoinGuesser
from .group import LEVELS, from_hex, to_hex
from .rng import Rng
from .scheme import BulletinBoard, DuplicateBallot

OK, REJECT, USAGE = 0, 1, 2


class CliError(Exception):
    pass


def _seed(args) -> int:
    if args.seed is None:
        return secrets.randbits(128)
    try:
        return int(args.seed, 16)
    except ValueError:
        raise CliError(f"--seed must be hex, got {args.seed!r}")


def _secret_to_json(scheme, sk) -> dict:
    if scheme.name == "enc2vote":
        return {"sk": to_hex(sk.kp.sk)}
    return {"sk": to_hex(sk.sk)}


def _secret_from_json(scheme, pk, d):
    x = from_hex(d["sk"])
    if scheme.name == "enc2vote":
        from .elgamal import KeyPair
        from .scheme import Enc2VoteSK

        return Enc2VoteSK(pk, KeyPair(pk.params, pk.pk.y, x))
    if scheme.name == "helios":
        from .helios import HeliosSK

        return HeliosSK(pk, x)
    from .mixnet import MixnetSK

    return MixnetSK(pk, x)


def _election(directory):
    path = Path(directory) / "election.json"
    try:
        t = Transcript.load(path)
    except FileNotFoundError:
        raise CliError(f"no election at {directory} (run keygen first)")
    scheme, pk, _, _, _ = decode(t)
    return t, scheme, pk


# -- subcommands --------------------------------------------------------------


def cmd_keygen(args) -> int:
    out = Path(args.out or "election")
    out.mkdir(parents=True, exist_ok=True)
    if (out / "election.json").exists():
        raise CliError(f"{out} already holds an election")
    seed = _seed(args)
    scheme = make_scheme(args.scheme, args.variant)
    pk, sk, mb, mc = scheme.setup(args.level, Rng(seed))
    if not 1 <= args.nc <= mc:
        raise CliError(f"nc must be in 1..{mc}")
    t = make_transcript(scheme, args.level, args.nc, pk, [], None, None, seed_commitment(seed))
    t.save(out / "election.json")
    (out / "secret.json").write_text(json.dumps(_secret_to_json(scheme, sk)) + "\n")
    (out / "board.jsonl").touch()
    print(f"{scheme.describe()} election with {args.nc} candidates in {out}")
    return OK


def cmd_vote(args) -> int:
    t, scheme, pk = _election(args.election)
    b = scheme.vote(pk, args.vote, t.nc, Rng(_seed(args)))
    if b is None:
        raise CliError(f"vote must be in 1..{t.nc}")
    text = json.dumps(b.to_json())
    if args.append:
        i = BoardStore(Path(args.election) / "board.jsonl").append(b.to_json())
        print(f"appended ballot {i}")
    elif args.out:
        Path(args.out).write_text(text + "\n")
    else:
        print(text)
    return OK


def cmd_append(args) -> int:
    t, scheme, pk = _election(args.election)
    raw = sys.stdin.read() if args.ballot == "-" else Path(args.ballot).read_text()
    try:
        entry = json.loads(raw)
        scheme.ballot_from_json(entry)
    except (json.JSONDecodeError, KeyError, TypeError, ValueError) as e:
        raise CliError(f"not a {scheme.name} ballot: {e}")
    try:
        i = BoardStore(Path(args.election) / "board.jsonl").append(entry)
    except DuplicateBallot:
        print("duplicate ballot rejected", file=sys.stderr)
        return REJECT
    print(f"appended ballot {i}")
    return OK


def cmd_tally(args) -> int:
    t, scheme, pk = _election(args.election)
    d = Path(args.election)
    sk = _secret_from_json(scheme, pk, json.loads((d / "secret.json").read_text()))
    entries = BoardStore(d / "board.jsonl").read()
    bb = BulletinBoard(scheme.ballot_from_json(e) for e in entries)
    outcome, proof = scheme.tally(sk, bb, t.nc, Rng(_seed(args)))
    out = make_transcript(scheme, t.level, t.nc, pk, bb, outcome, proof, t.seed_commitment)
    path = Path(args.out) if args.out else d / "transcript.json"
    out.save(path)
    print(f"outcome {list(outcome)} over {len(bb)} ballots -> {path}")
    return OK


def cmd_verify(args) -> int:
    variants = [None] if not args.variant else args.variant
    accepted = True
    for v in variants:
        report = transcript_verify(args.transcript, v)
        for line in report.lines():
            print(line)
        accepted &= report.accepted
    return OK if accepted else REJECT


def _report(spec, stats, elapsed) -> bool:
    ok = spec.meets(stats)
    print(f"{spec.key} [{spec.game}] {stats} expected {spec.expected}: {'OK' if ok else 'UNEXPECTED'} ({elapsed:.1f}s)")
    return ok


def _records(args):
    return open(args.out, "a") if args.out else None


def cmd_game(args) -> int:
    if args.adversary == "guesser":
        if args.game not in ("ballot-secrecy", "ind-cva", "ind-pa0"):
            raise CliError("the guesser only plays guessing games")
        scheme = "elgamal" if args.game == "ind-pa0" else args.scheme
        specs = [adv_mod.AttackSpec("guesser", scheme, args.variant, args.game, adv_mod.CHANCE, CoinGuesser, 2000, args.mode)]
    else:
        specs = [
            s for s in adv_mod.ATTACKS
            if s.name == args.adversary and s.game == args.game and s.variant == args.variant
            and (args.game == "ind-pa0" or s.scheme == args.scheme)
        ]
        specs = [adv_mod.AttackSpec(s.name, s.scheme, s.variant, s.game, s.expected, s.factory, s.trials, args.mode)
                 for s in specs]
    if not specs:
        raise CliError(f"no adversary {args.adversary!r} for {args.game} on {args.scheme}/{args.variant}")
    return _run_specs(specs, args)


def _run_specs(specs, args) -> int:
    seed = _seed(args)
    records = _records(args)
    ok = True
    try:
        for spec in specs:
            t0 = time.perf_counter()
            stats = adv_mod.run_attack(spec, args.trials, seed, args.level, records)
            ok &= _report(spec, stats, time.perf_counter() - t0)
    finally:
        if records:
            records.close()
    return OK if ok else REJECT


def cmd_attack(args) -> int:
    if args.list or not args.name:
        for s in adv_mod.ATTACKS:
            print(f"{s.name:22s} {s.scheme:14s} {s.variant:7s} {s.game:15s} expect {s.expected}")
        return OK
    specs = adv_mod.find_attacks(args.name, args.scheme, args.variant)
    if not specs:
        raise CliError(f"no attack {args.name!r} registered for {args.scheme or 'any scheme'}/{args.variant or 'any variant'}")
    if args.transcript:
        spec = specs[0]
        if spec.game != "soundness":
            raise CliError("--transcript is only available for soundness attacks")
        scheme = make_scheme(spec.scheme, spec.variant)
        seed = _seed(args)
        claim = spec.factory(Rng(seed)).forge(scheme, args.level)
        t = make_transcript(scheme, args.level, claim.nc, claim.pk, claim.bb, claim.outcome, claim.proof,
                            seed_commitment(seed))
        t.save(args.transcript)
        print(f"claimed outcome {list(claim.outcome)} written to {args.transcript}")
    return _run_specs(specs, args)


# -- parser -------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--scheme", choices=SCHEMES + ("mixnet",), help="default helios")
    common.add_argument("--variant", choices=VARIANTS, help="default strong")
    common.add_argument("--level", choices=LEVELS, default="test")
    common.add_argument("--seed", help="hex seed; omitted means fresh system entropy")
    common.add_argument("--trials", type=int)
    common.add_argument("--out")

    p = argparse.ArgumentParser(prog="votinggames", description="Election schemes, their security games and attacks.")
    sub = p.add_subparsers(dest="command", required=True)

    k = sub.add_parser("keygen", parents=[common], help="create an election directory")
    k.add_argument("--nc", type=int, default=3)
    k.set_defaults(func=cmd_keygen)

    v = sub.add_parser("vote", parents=[common], help="cast a ballot")
    v.add_argument("--election", default="election")
    v.add_argument("--vote", type=int, required=True)
    v.add_argument("--append", action="store_true", help="append straight to the board")
    v.set_defaults(func=cmd_vote)

    a = sub.add_parser("append", parents=[common], help="append a ballot file to the board")
    a.add_argument("--election", default="election")
    a.add_argument("ballot", help="ballot JSON file, or - for stdin")
    a.set_defaults(func=cmd_append)

    t = sub.add_parser("tally", parents=[common], help="tally the board and write a transcript")
    t.add_argument("--election", default="election")
    t.set_defaults(func=cmd_tally)

    vf = sub.add_parser("verify", help="verify a transcript offline")
    vf.add_argument("transcript")
    vf.add_argument("--variant", action="append", choices=VARIANTS,
                    help="verify under this variant instead of the recorded one (repeatable)")
    vf.set_defaults(func=cmd_verify)

    g = sub.add_parser("game", parents=[common], help="play a security game repeatedly")
    g.add_argument("--game", required=True, choices=("ballot-secrecy", "ind-cva", "ind-pa0", "soundness", "completeness", "iv"))
    g.add_argument("--adversary", default="guesser")
    g.add_argument("--mode", choices=("literal", "split"), default="literal")
    g.set_defaults(func=cmd_game)

    at = sub.add_parser("attack", parents=[common], help="run a registered attack")
    at.add_argument("name", nargs="?")
    at.add_argument("--list", action="store_true")
    at.add_argument("--transcript", help="also write one forged soundness transcript here")
    at.set_defaults(func=cmd_attack)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    # attack runs every registered target unless narrowed
    if args.command not in ("attack", "verify"):
        args.scheme = args.scheme or "helios"
        args.variant = args.variant or "strong"
    if getattr(args, "scheme", None) == "mixnet":
        args.scheme = "helios-mixnet"
    if getattr(args, "trials", None) is not None and args.trials < 1:
        parser.error("--trials must be at least 1")
    try:
        return args.func(args)
    except (CliError, TranscriptError) as e:
        print(f"error: {e}", file=sys.stderr)
        return USAGE
    except OSError as e:
        print(f"error: {e.strerror}: {e.filename}", file=sys.stderr)
        return USAGE


if __name__ == "__main__":
    sys.exit(main())
