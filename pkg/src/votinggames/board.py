"""Bulletin board files and election transcripts.

A board is a JSON Lines file, one ballot per line, append only.  A
transcript is one JSON document:

    {"format": ..., "header": {...}, "board": [...], "result": {...}}

with header fields scheme, variant, level, nc, public_key and
seed_commitment, in that order.  Integers inside ballots and proofs are
lowercase hex strings.  Verification needs nothing but the transcript.
"""

from __future__ import annotations

import hashlib
import json
import os
from dataclasses import dataclass, field
from pathlib import Path

from .catalog import make_scheme
from .scheme import BulletinBoard, Check, DuplicateBallot, ElectionScheme, canonical_json

FORMAT = "votinggames-transcript/1"


class TranscriptError(ValueError):
    """The file is not a readable transcript.  ``offset`` is a byte offset
    into the file when the failure can be pinned to one."""

    def __init__(self, message: str, offset: int | None = None):
        super().__init__(message if offset is None else f"{message} (byte {offset})")
        self.offset = offset


def seed_commitment(seed: int) -> str:
    return hashlib.sha256(b"seed:" + format(seed, "x").encode()).hexdigest()


class BoardStore:
    """Path-backed append-only ballot log with byte-level deduplication."""

    def __init__(self, path):
        self.path = Path(path)
        self._keys: set[bytes] = set()
        self._count = 0
        for entry in self.read():
            self._keys.add(canonical_json(entry))
            self._count += 1

    def read(self) -> list:
        if not self.path.exists():
            return []
        out, offset = [], 0
        with open(self.path, "rb") as f:
            for line in f:
                if line.strip():
                    try:
                        out.append(json.loads(line))
                    except json.JSONDecodeError as e:
                        raise TranscriptError(f"bad board line: {e.msg}", offset + e.pos) from e
                offset += len(line)
        return out

    def append(self, ballot_json) -> int:
        key = canonical_json(ballot_json)
        if key in self._keys:
            raise DuplicateBallot("ballot already on the board")
        with open(self.path, "ab") as f:
            f.write(key + b"\n")
            f.flush()
            os.fsync(f.fileno())
        self._keys.add(key)
        self._count += 1
        return self._count - 1

    def __len__(self) -> int:
        return self._count


@dataclass
class Transcript:
    scheme: str
    variant: str
    level: str
    nc: int
    public_key: dict
    seed_commitment: str
    board: list = field(default_factory=list)
    outcome: list | None = None
    proof: object = None

    def to_json(self) -> dict:
        return {
            "format": FORMAT,
            "header": {
                "scheme": self.scheme,
                "variant": self.variant,
                "level": self.level,
                "nc": self.nc,
                "public_key": self.public_key,
                "seed_commitment": self.seed_commitment,
            },
            "board": self.board,
            "result": None if self.outcome is None else {"outcome": self.outcome, "proof": self.proof},
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=1) + "\n"

    def save(self, path):
        Path(path).write_text(self.dumps())

    @classmethod
    def from_json(cls, d) -> "Transcript":
        if not isinstance(d, dict) or d.get("format") != FORMAT:
            raise TranscriptError(f"not a {FORMAT} document")
        try:
            h = d["header"]
            result = d.get("result")
            return cls(
                str(h["scheme"]),
                str(h["variant"]),
                str(h["level"]),
                int(h["nc"]),
                h["public_key"],
                str(h.get("seed_commitment", "")),
                list(d.get("board", [])),
                None if result is None else list(result["outcome"]),
                None if result is None else result["proof"],
            )
        except (KeyError, TypeError, ValueError) as e:
            raise TranscriptError(f"malformed transcript: {e!r}") from e

    @classmethod
    def loads(cls, text: str) -> "Transcript":
        try:
            d = json.loads(text)
        except json.JSONDecodeError as e:
            raise TranscriptError(f"JSON error: {e.msg}", len(text[: e.pos].encode())) from e
        return cls.from_json(d)

    @classmethod
    def load(cls, path) -> "Transcript":
        try:
            text = Path(path).read_bytes().decode("utf-8")
        except UnicodeDecodeError as e:
            raise TranscriptError("not UTF-8", e.start) from e
        return cls.loads(text)


def make_transcript(scheme: ElectionScheme, level: str, nc: int, pk, board, outcome, proof, commitment: str) -> Transcript:
    return Transcript(
        scheme.name,
        scheme.variant,
        level,
        nc,
        scheme.pk_to_json(pk),
        commitment,
        [b.to_json() for b in board],
        None if outcome is None else list(outcome),
        None if proof is None else scheme.proof_to_json(proof),
    )


@dataclass
class VerifyReport:
    scheme: str
    variant: str
    checks: list[Check]

    @property
    def accepted(self) -> bool:
        return bool(self.checks) and all(c.passed for c in self.checks)

    def lines(self) -> list[str]:
        out = [f"{'PASS' if c.passed else 'FAIL'} {c.name}" + (f"  ({c.note})" if c.note else "") for c in self.checks]
        out.append(f"{self.scheme}/{self.variant}: {'ACCEPT' if self.accepted else 'REJECT'}")
        return out


def decode(t: Transcript, variant: str | None = None):
    """Typed (scheme, pk, board, outcome, proof) for a transcript."""
    try:
        scheme = make_scheme(t.scheme, variant or t.variant)
        pk = scheme.pk_from_json(t.public_key)
        board = []
        for i, entry in enumerate(t.board):
            try:
                board.append(scheme.ballot_from_json(entry))
            except (KeyError, TypeError, ValueError) as e:
                raise TranscriptError(f"board[{i}] does not parse: {e!r}") from e
        proof = None if t.proof is None else scheme.proof_from_json(t.proof)
    except TranscriptError:
        raise
    except (KeyError, TypeError, ValueError) as e:
        raise TranscriptError(f"malformed public data: {e!r}") from e
    outcome = None if t.outcome is None else tuple(int(x) for x in t.outcome)
    return scheme, pk, board, outcome, proof


def transcript_verify(path_or_transcript, variant: str | None = None) -> VerifyReport:
    """Run every verification check over the public data.

    ``variant`` overrides the one recorded in the header, so one file can be
    checked under both weak and strong verification.
    """
    t = path_or_transcript if isinstance(path_or_transcript, Transcript) else Transcript.load(path_or_transcript)
    scheme, pk, board, outcome, proof = decode(t, variant)
    if outcome is None:
        return VerifyReport(scheme.name, scheme.variant, [Check("result-present", False, "no tally recorded")])
    bb = BulletinBoard()
    checks = []
    for b in board:
        if not bb.add(b):
            checks.append(Check("board-unique", False, "duplicate ballot in board section"))
    try:
        checks += scheme.audit(pk, bb, t.nc, outcome, proof)
    except Exception as e:
        checks.append(Check("audit", False, f"{type(e).__name__}: {e}"))
    return VerifyReport(scheme.name, scheme.variant, checks)
