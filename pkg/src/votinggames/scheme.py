"""The four-algorithm election scheme interface and what the games need
around it: bulletin boards, the oracle ledger, ``balanced``,
``correct_outcome`` and the Enc2Vote construction.
"""

from __future__ import annotations

import json
from abc import ABC, abstractmethod
from collections import Counter
from dataclasses import dataclass, field

from .elgamal import AsymmetricScheme, KeyPair, PublicKey, make_nm_elgamal, make_plain_elgamal
from .group import GroupParams, from_hex, gen_params, to_hex
from .rng import CoinsExhausted, RecordingRng, Rng, ScriptedRng

# maximum number of ballots; far beyond anything run at desk scale
MAX_BALLOTS = 1 << 20
# default candidate limit for schemes whose ballots do not cap it themselves
MAX_CANDIDATES_DEFAULT = 1 << 16

Outcome = tuple[int, ...]


class WitnessMismatch(Exception):
    """A disclosed (vote, coins) pair does not reproduce its ballot."""


class DuplicateBallot(ValueError):
    pass


@dataclass(frozen=True)
class Check:
    name: str
    passed: bool
    note: str = ""

    def to_json(self) -> dict:
        return {"name": self.name, "passed": self.passed, "note": self.note}


def canonical_json(obj) -> bytes:
    return json.dumps(obj, sort_keys=True, separators=(",", ":")).encode()


def ballot_bytes(b) -> bytes:
    """Byte identity of a board entry; raw bytes entries stand for themselves."""
    if isinstance(b, (bytes, bytearray)):
        return b"\x00" + bytes(b)
    return canonical_json(b.to_json())


class BulletinBoard:
    """Insertion-ordered board with no two byte-identical entries."""

    def __init__(self, ballots=()):
        self._items: list = []
        self._keys: set[bytes] = set()
        for b in ballots:
            self.add(b)

    def add(self, b) -> bool:
        """Insert unless already present; True if inserted."""
        key = ballot_bytes(b)
        if key in self._keys:
            return False
        self._keys.add(key)
        self._items.append(b)
        return True

    def append(self, b) -> int:
        if not self.add(b):
            raise DuplicateBallot("ballot already on the board")
        return len(self._items) - 1

    def __contains__(self, b) -> bool:
        return ballot_bytes(b) in self._keys

    def __iter__(self):
        return iter(self._items)

    def __len__(self) -> int:
        return len(self._items)

    def __getitem__(self, i):
        return self._items[i]

    @property
    def ballots(self) -> list:
        return list(self._items)


@dataclass
class VoteLedger:
    """The oracle's bookkeeping: (ballot, v0, v1) per query."""

    entries: list = field(default_factory=list)

    def record(self, ballot, v0: int, v1: int):
        self.entries.append((ballot, v0, v1))

    def ballot_keys(self) -> set[bytes]:
        return {ballot_bytes(b) for b, _, _ in self.entries}


def balanced(bb, nc: int, ledger: VoteLedger) -> bool:
    on_board = {ballot_bytes(b) for b in bb}
    left: dict[int, set] = {v: set() for v in range(1, nc + 1)}
    right: dict[int, set] = {v: set() for v in range(1, nc + 1)}
    for b, v0, v1 in ledger.entries:
        key = ballot_bytes(b)
        if key in on_board:
            left.setdefault(v0, set()).add(key)
            right.setdefault(v1, set()).add(key)
    return all(len(left[v]) == len(right[v]) for v in range(1, nc + 1))


@dataclass(frozen=True)
class Witness:
    ballot: object
    vote: int
    coins: tuple[int, ...]


def cast_with_witness(scheme: "ElectionScheme", pk, v: int, nc: int, rng: Rng):
    """Vote and keep the coins, so the ballot can be audited later."""
    rec = RecordingRng(rng)
    b = scheme.vote(pk, v, nc, rec)
    return b, (None if b is None else Witness(b, v, tuple(rec.coins)))


def replay_vote(scheme: "ElectionScheme", pk, w: Witness, nc: int):
    coins = ScriptedRng(w.coins)
    try:
        b = scheme.vote(pk, w.vote, nc, coins)
    except (CoinsExhausted, ValueError) as e:
        raise WitnessMismatch(f"coins do not replay: {e}") from e
    if b is None or not coins.exhausted or ballot_bytes(b) != ballot_bytes(w.ballot):
        raise WitnessMismatch("replayed ballot differs from the disclosed one")
    return b


def correct_outcome(scheme: "ElectionScheme", pk, nc: int, bb, witnesses) -> Outcome:
    """Count board ballots that are provably honest votes.

    Each witness is replayed through ``scheme.vote``; any witness that fails to
    reproduce its ballot raises ``WitnessMismatch``.  Board ballots without a
    witness contribute nothing.
    """
    by_key = {}
    for w in witnesses:
        replay_vote(scheme, pk, w, nc)
        by_key[ballot_bytes(w.ballot)] = w
    counts = [0] * nc
    for b in bb:
        w = by_key.get(ballot_bytes(b))
        if w is not None and 1 <= w.vote <= nc:
            counts[w.vote - 1] += 1
    return tuple(counts)


def plaintext_count(votes, nc: int) -> Outcome:
    c = Counter(votes)
    return tuple(c.get(v, 0) for v in range(1, nc + 1))


class ElectionScheme(ABC):
    """Setup / Vote / Tally / Verify.

    ``audit`` runs every verification check and reports each one; ``verify``
    is the single bit and never raises.
    """

    name = "abstract"
    variant = ""

    @abstractmethod
    def setup(self, level: str, rng: Rng):
        """-> (pk, sk, mb, mc)"""

    @abstractmethod
    def vote(self, pk, v: int, nc: int, rng: Rng):
        """-> ballot, or None when v or nc is out of range"""

    @abstractmethod
    def tally(self, sk, bb, nc: int, rng: Rng):
        """-> (outcome, proof)"""

    @abstractmethod
    def audit(self, pk, bb, nc: int, outcome, proof) -> list[Check]:
        ...

    def verify(self, pk, bb, nc: int, outcome, proof) -> bool:
        try:
            checks = self.audit(pk, bb, nc, outcome, proof)
            return bool(checks) and all(c.passed for c in checks)
        except Exception:
            return False

    def max_candidates(self, pk) -> int:
        return MAX_CANDIDATES_DEFAULT

    # serialization hooks for transcripts

    @abstractmethod
    def pk_to_json(self, pk) -> dict: ...

    @abstractmethod
    def pk_from_json(self, d: dict): ...

    @abstractmethod
    def ballot_from_json(self, d): ...

    @abstractmethod
    def proof_to_json(self, proof): ...

    @abstractmethod
    def proof_from_json(self, d): ...

    def params_of(self, pk) -> GroupParams:
        return pk.params

    def describe(self) -> str:
        return f"{self.name}/{self.variant}"


def params_to_json(params: GroupParams) -> dict:
    return {"level": params.level, "p": to_hex(params.p), "q": to_hex(params.q), "g": to_hex(params.g)}


def params_from_json(d: dict) -> GroupParams:
    p, q, g = from_hex(d["p"]), from_hex(d["q"]), from_hex(d["g"])
    level = d.get("level", "custom")
    if level in ("toy", "test", "production"):
        known = gen_params(level)
        if (known.p, known.q, known.g) == (p, q, g):
            return known
    return GroupParams(p, q, g, "custom").validate()


def run_election(scheme: ElectionScheme, votes, nc: int, rng: Rng, level: str = "test"):
    """Honest end to end run; returns (outcome, transcript dict)."""
    setup_rng, vote_rng, tally_rng = rng.spawn(3)
    pk, sk, mb, mc = scheme.setup(level, setup_rng)
    if len(votes) > mb or nc > mc:
        raise ValueError("election exceeds the scheme's limits")
    bb = BulletinBoard()
    for v, r in zip(votes, vote_rng.spawn(len(votes))):
        b = scheme.vote(pk, v, nc, r)
        if b is None:
            raise ValueError(f"vote {v} rejected for nc={nc}")
        bb.append(b)
    outcome, proof = scheme.tally(sk, bb, nc, tally_rng)
    transcript = {
        "pk": pk,
        "board": bb,
        "nc": nc,
        "outcome": outcome,
        "proof": proof,
        "verified": scheme.verify(pk, bb, nc, outcome, proof),
    }
    return outcome, transcript


# -- Enc2Vote -----------------------------------------------------------------


@dataclass(frozen=True)
class Enc2VotePK:
    pk: PublicKey
    mc: int

    @property
    def params(self):
        return self.pk.params


@dataclass(frozen=True)
class Enc2VoteSK:
    pk: Enc2VotePK
    kp: KeyPair


EPSILON = "epsilon"


class Enc2Vote(ElectionScheme):
    """Ballots are bare ciphertexts of the vote; the tally proof is a constant
    and verification always accepts."""

    name = "enc2vote"

    def __init__(self, enc: AsymmetricScheme):
        self.enc = enc
        self.variant = "strong" if enc.name == "nm" else "weak"

    def setup(self, level, rng):
        pk, kp, max_m = self.enc.generate(level, rng)
        # largest mc with every vote 1..mc in the message space
        bundle = Enc2VotePK(pk, max_m)
        return bundle, Enc2VoteSK(bundle, kp), MAX_BALLOTS, max_m

    def max_candidates(self, pk) -> int:
        return pk.mc

    def vote(self, pk, v, nc, rng):
        if not 1 <= v <= nc <= pk.mc:
            return None
        return self.enc.encrypt(pk.pk, v, rng)

    def tally(self, sk, bb, nc, rng):
        counts = [0] * nc
        for b in bb:
            m = self.enc.decrypt(sk.kp, b)
            if m is not None and 1 <= m <= nc:
                counts[m - 1] += 1
        return tuple(counts), EPSILON

    def audit(self, pk, bb, nc, outcome, proof):
        return [Check("accept-all", True, "verification accepts every outcome")]

    def pk_to_json(self, pk):
        return {"params": params_to_json(pk.params), "y": to_hex(pk.pk.y), "mc": pk.mc}

    def pk_from_json(self, d):
        return Enc2VotePK(PublicKey(params_from_json(d["params"]), from_hex(d["y"])), int(d["mc"]))

    def ballot_from_json(self, d):
        return self.enc.ciphertext_from_json(d)

    def proof_to_json(self, proof):
        return proof

    def proof_from_json(self, d):
        return d


def make_enc2vote(enc: AsymmetricScheme) -> Enc2Vote:
    return Enc2Vote(enc)


def enc2vote(variant: str = "strong") -> Enc2Vote:
    return Enc2Vote(make_nm_elgamal() if variant == "strong" else make_plain_elgamal())
