"""Helios with homomorphic tallying.

A ballot for candidate v out of nc encrypts the bits of the one-hot encoding
of v with the last candidate left implicit: nc - 1 ciphertexts, each with a
proof that it holds 0 or 1, plus one more proof that their product holds 0
or 1.  Tallying multiplies each column, decrypts the products and proves each
decryption; the last candidate gets whatever is left over.

Two variants are provided:

``weak``
    weak Fiat-Shamir everywhere, no weeding.  Each ballot proof only covers
    its own ciphertext, so ballots are malleable.
``strong``
    strong Fiat-Shamir, where each ballot proof also hashes nc, its index and
    every ciphertext of the ballot, and weeding of related ballots before
    tallying.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from . import sigma
from .elgamal import Ciphertext, encrypt_exp, hom_combine, plaintext_element
from .group import GroupParams, from_hex, gen_params, to_hex
from .rng import Rng
from .scheme import (
    MAX_BALLOTS,
    MAX_CANDIDATES_DEFAULT,
    Check,
    ElectionScheme,
    params_from_json,
    params_to_json,
)
from .sigma import FsMode, Transcript

KEY_CONTEXT = b"helios-key"
BALLOT_CONTEXT = b"helios-ballot"
DECRYPT_CONTEXT = b"helios-decrypt"


class IllFormedBoard(Exception):
    pass


@dataclass(frozen=True)
class HeliosVariant:
    name: str
    fs: FsMode
    weeding: bool


WEAK = HeliosVariant("weak", FsMode.WEAK, False)
STRONG = HeliosVariant("strong", FsMode.STRONG, True)
VARIANTS = {"weak": WEAK, "strong": STRONG}


@dataclass(frozen=True)
class HeliosPK:
    params: GroupParams
    y: int
    proof: Transcript


@dataclass(frozen=True)
class HeliosSK:
    pk: HeliosPK
    sk: int


@dataclass(frozen=True)
class HeliosBallot:
    cts: tuple[Ciphertext, ...]
    proofs: tuple[Transcript, ...]

    def to_json(self) -> dict:
        return {
            "nc": len(self.proofs),
            "cts": [c.to_json() for c in self.cts],
            "proofs": [p.to_json() for p in self.proofs],
        }

    @classmethod
    def from_json(cls, d) -> "HeliosBallot":
        b = cls(
            tuple(Ciphertext.from_json(c) for c in d["cts"]),
            tuple(Transcript.from_json(p) for p in d["proofs"]),
        )
        if int(d["nc"]) != len(b.proofs):
            raise ValueError("ballot nc tag disagrees with its proof count")
        return b


@dataclass(frozen=True)
class HeliosTallyProof:
    accepted: tuple[int, ...]
    decryptions: tuple[Transcript, ...]

    def to_json(self) -> dict:
        return {"accepted": list(self.accepted), "decryptions": [t.to_json() for t in self.decryptions]}

    @classmethod
    def from_json(cls, d) -> "HeliosTallyProof":
        return cls(tuple(int(i) for i in d["accepted"]), tuple(Transcript.from_json(t) for t in d["decryptions"]))


def encode_vote(v: int, nc: int) -> tuple[int, ...]:
    if not 1 <= v <= nc:
        raise ValueError(f"vote {v} outside 1..{nc}")
    return tuple(int(v == j) for j in range(1, nc))


def proof_binding(fs: FsMode, nc: int, index: int, cts) -> tuple:
    """Extra statement fields for proof ``index`` (1-based; nc is the sum proof)."""
    if fs is not FsMode.STRONG:
        return ()
    flat = [x for c in cts for x in (c.c1, c.c2)]
    return (nc, index, *flat)


def key_proof(params: GroupParams, sk: int, fs: FsMode, rng: Rng) -> Transcript:
    return sigma.prove_dlog(params, sk, fs, rng, KEY_CONTEXT)


def key_proof_ok(pk: HeliosPK, fs: FsMode) -> bool:
    return sigma.verify_dlog(pk.params, pk.y, pk.proof, fs, KEY_CONTEXT)


def make_ballot(params: GroupParams, y: int, bits, rs, fs: FsMode, rng: Rng) -> HeliosBallot:
    """Encrypt ``bits`` with randomness ``rs`` and prove every ciphertext."""
    nc = len(bits) + 1
    cts = tuple(encrypt_exp(params, y, m, r) for m, r in zip(bits, rs))
    proofs = []
    for j, (ct, m, r) in enumerate(zip(cts, bits, rs), start=1):
        proofs.append(
            sigma.prove_or(params, y, ct.c1, ct.c2, m, r, fs, rng, BALLOT_CONTEXT, proof_binding(fs, nc, j, cts))
        )
    total = hom_combine(params, *cts)
    proofs.append(
        sigma.prove_or(
            params, y, total.c1, total.c2, sum(bits), sum(rs) % params.q, fs, rng,
            BALLOT_CONTEXT, proof_binding(fs, nc, nc, cts),
        )
    )
    return HeliosBallot(cts, tuple(proofs))


@lru_cache(maxsize=1 << 14)
def ballot_valid(params: GroupParams, y: int, nc: int, fs: FsMode, ballot) -> bool:
    if not isinstance(ballot, HeliosBallot):
        return False
    if len(ballot.cts) != nc - 1 or len(ballot.proofs) != nc:
        return False
    if not all(c.valid(params) for c in ballot.cts):
        return False
    items = [
        (sigma.OrStatement(y, ct.c1, ct.c2, proof_binding(fs, nc, j, ballot.cts)), pf, None)
        for j, (ct, pf) in enumerate(zip(ballot.cts, ballot.proofs), start=1)
    ]
    total = hom_combine(params, *ballot.cts)
    items.append((sigma.OrStatement(y, total.c1, total.c2, proof_binding(fs, nc, nc, ballot.cts)), ballot.proofs[-1], ballot.cts))
    return sigma.verify_or_batch(params, items, fs, BALLOT_CONTEXT)


def ballot_valid_exact(params: GroupParams, y: int, nc: int, fs: FsMode, ballot) -> bool:
    """Proof-by-proof version of ``ballot_valid``, without batching."""
    if not isinstance(ballot, HeliosBallot):
        return False
    if len(ballot.cts) != nc - 1 or len(ballot.proofs) != nc:
        return False
    if not all(c.valid(params) for c in ballot.cts):
        return False
    for j, (ct, pf) in enumerate(zip(ballot.cts, ballot.proofs), start=1):
        if not sigma.verify_or(params, y, ct.c1, ct.c2, pf, fs, BALLOT_CONTEXT, proof_binding(fs, nc, j, ballot.cts)):
            return False
    total = hom_combine(params, *ballot.cts)
    return sigma.verify_or(
        params, y, total.c1, total.c2, ballot.proofs[-1], fs, BALLOT_CONTEXT,
        proof_binding(fs, nc, nc, ballot.cts),
    )


def weed(bb) -> list:
    """Keep the first of any group of related ballots.

    A later ballot is dropped when it is byte-identical to, or shares a single
    ciphertext with, a ballot already kept.
    """
    kept, seen_cts, seen = [], set(), set()
    for b in bb:
        if b in seen or any(c in seen_cts for c in b.cts):
            continue
        kept.append(b)
        seen.add(b)
        seen_cts.update(b.cts)
    return kept


def _valid(pk: HeliosPK, nc: int, fs: FsMode, b) -> bool:
    try:
        return ballot_valid(pk.params, pk.y, nc, fs, b)
    except TypeError:  # unhashable junk on the board
        return False


def accepted_indices(pk: HeliosPK, bb, nc: int, variant: HeliosVariant) -> list[int]:
    idx = [i for i, b in enumerate(bb) if _valid(pk, nc, variant.fs, b)]
    if variant.weeding:
        keep = {id(b) for b in weed([bb[i] for i in idx])}
        idx = [i for i in idx if id(bb[i]) in keep]
    return idx


def column_sums(params: GroupParams, ballots, nc: int) -> list[Ciphertext]:
    return [hom_combine(params, *(b.cts[j] for b in ballots)) for j in range(nc - 1)]


class Helios(ElectionScheme):
    name = "helios"

    def __init__(self, variant: HeliosVariant | str = STRONG):
        self.preset = VARIANTS[variant] if isinstance(variant, str) else variant
        self.variant = self.preset.name

    @property
    def fs(self) -> FsMode:
        return self.preset.fs

    def setup(self, level, rng):
        params = gen_params(level)
        sk = params.random_scalar(rng, nonzero=True)
        pk = HeliosPK(params, params.gpow(sk), key_proof(params, sk, self.fs, rng))
        return pk, HeliosSK(pk, sk), MAX_BALLOTS, MAX_CANDIDATES_DEFAULT

    def vote(self, pk, v, nc, rng):
        if not 1 <= v <= nc <= MAX_CANDIDATES_DEFAULT:
            return None
        params = pk.params
        bits = encode_vote(v, nc)
        rs = [params.random_scalar(rng) for _ in bits]
        return make_ballot(params, pk.y, bits, rs, self.fs, rng)

    def tally(self, sk, bb, nc, rng):
        pk, params = sk.pk, sk.pk.params
        if nc < 1:
            return (), HeliosTallyProof((), ())
        idx = accepted_indices(pk, bb, nc, self.preset)
        k = len(idx)
        sums, proofs = [], []
        for col in column_sums(params, [bb[i] for i in idx], nc):
            m_elem = plaintext_element(params, sk.sk, col)
            s = params.dlog_small(m_elem, k)
            if s is None:
                raise IllFormedBoard("column total outside [0, k]")
            st = sigma.EqStatement(pk.y, col.c1, m_elem, col.c2)
            proofs.append(sigma.prove_eq(params, sk.sk, st, self.fs, rng, DECRYPT_CONTEXT))
            sums.append(s)
        outcome = tuple(sums) + (k - sum(sums),)
        return outcome, HeliosTallyProof(tuple(idx), tuple(proofs))

    def audit(self, pk, bb, nc, outcome, proof):
        params = pk.params
        checks = [Check("key-proof", key_proof_ok(pk, self.fs))]
        if nc < 1:
            empty = isinstance(proof, HeliosTallyProof) and not proof.accepted and not proof.decryptions
            checks.append(Check("outcome-shape", tuple(outcome) == () and empty, "no candidates"))
            return checks
        shape = (
            isinstance(proof, HeliosTallyProof)
            and nc >= 1
            and len(outcome) == nc
            and all(isinstance(x, int) for x in outcome)
            and len(proof.decryptions) == nc - 1
        )
        checks.append(Check("outcome-shape", shape))
        if not shape:
            return checks
        idx = accepted_indices(pk, bb, nc, self.preset)
        checks.append(
            Check("accepted-set", list(proof.accepted) == idx, f"{len(idx)} of {len(bb)} ballots accepted")
        )
        cols = column_sums(params, [bb[i] for i in idx], nc)
        for j, (col, s, tr) in enumerate(zip(cols, outcome, proof.decryptions), start=1):
            st = sigma.EqStatement(pk.y, col.c1, params.gpow(s), col.c2)
            checks.append(Check(f"decryption-proof[{j}]", sigma.verify_eq(params, st, tr, self.fs, DECRYPT_CONTEXT)))
        checks.append(Check("last-count", outcome[-1] == len(idx) - sum(outcome[:-1])))
        return checks

    # serialization

    def pk_to_json(self, pk):
        return {"params": params_to_json(pk.params), "y": to_hex(pk.y), "proof": pk.proof.to_json()}

    def pk_from_json(self, d):
        return HeliosPK(params_from_json(d["params"]), from_hex(d["y"]), Transcript.from_json(d["proof"]))

    def ballot_from_json(self, d):
        return HeliosBallot.from_json(d)

    def proof_to_json(self, proof):
        return proof.to_json()

    def proof_from_json(self, d):
        return HeliosTallyProof.from_json(d)
