"""Re-encryption mixing with a cut-and-choose shuffle proof, and Helios Mixnet.

The shuffle proof is the classic binary cut-and-choose.  For each of k rounds
the mixer publishes an independent shuffle of the inputs (the round's
intermediate list).  A hash then picks one bit per round.  Bit 0 opens
inputs -> intermediate and bit 1 opens intermediate -> outputs.  A cheating
mixer is caught in each round with probability 1/2, so k rounds leave it a
2^-k chance.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import gmpy2

from . import sigma
from .elgamal import Ciphertext, encrypt_exp, plaintext_element
from .group import GroupParams, derive_weights, from_hex, gen_params, hash_to_int, to_hex
from .rng import Rng
from .scheme import MAX_BALLOTS, MAX_CANDIDATES_DEFAULT, Check, ElectionScheme, params_from_json, params_to_json
from .sigma import FsMode, Transcript

TAG_MIX = 0x04
KEY_CONTEXT = b"mixnet-key"
BALLOT_CONTEXT = b"mixnet-ballot"
DECRYPT_CONTEXT = b"mixnet-decrypt"
MIX_CONTEXT = b"mixnet-shuffle"

DEFAULT_ROUNDS = 40


def shuffle(params: GroupParams, pk: int, cts, perm, rands) -> list[Ciphertext]:
    """output[i] = re-encryption of cts[perm[i]] with rands[i]."""
    out = []
    for j, r in zip(perm, rands):
        c = cts[j]
        out.append(Ciphertext(c.c1 * params.gpow(r) % params.p, c.c2 * params.pow(pk, r) % params.p))
    return out


@dataclass(frozen=True)
class MixRound:
    mids: tuple[Ciphertext, ...]
    bit: int
    perm: tuple[int, ...]
    rands: tuple[int, ...]

    def to_json(self) -> dict:
        return {
            "mids": [c.to_json() for c in self.mids],
            "bit": self.bit,
            "perm": list(self.perm),
            "rands": [to_hex(r) for r in self.rands],
        }

    @classmethod
    def from_json(cls, d) -> "MixRound":
        return cls(
            tuple(Ciphertext.from_json(c) for c in d["mids"]),
            int(d["bit"]),
            tuple(int(i) for i in d["perm"]),
            tuple(from_hex(r) for r in d["rands"]),
        )


@dataclass(frozen=True)
class MixProof:
    rounds: tuple[MixRound, ...]

    def to_json(self) -> dict:
        return {"k": len(self.rounds), "rounds": [r.to_json() for r in self.rounds]}

    @classmethod
    def from_json(cls, d) -> "MixProof":
        rounds = tuple(MixRound.from_json(r) for r in d["rounds"])
        if int(d["k"]) != len(rounds):
            raise ValueError("round count disagrees with the round list")
        return cls(rounds)


def _flat(cts):
    return [x for c in cts for x in (c.c1, c.c2)]


def mids_digest(mids_list) -> int:
    """One hash over every round's intermediate ciphertexts."""
    return hash_to_int(TAG_MIX, b"mids", len(mids_list), *(x for mids in mids_list for x in _flat(mids)))


def challenge_bits(params: GroupParams, pk: int, cts, outs, mids_list, mode=FsMode.STRONG, digest: int | None = None) -> list[int]:
    k = len(mids_list)
    if digest is None:
        digest = mids_digest(mids_list)
    if FsMode.of(mode) is FsMode.STRONG:
        seed = hash_to_int(TAG_MIX, MIX_CONTEXT, params.p, params.g, pk, k, *_flat(cts), *_flat(outs), digest)
    else:
        seed = hash_to_int(TAG_MIX, MIX_CONTEXT, k, digest)
    bits = []
    block = 0
    while len(bits) < k:
        h = hash_to_int(TAG_MIX, seed, block)
        bits.extend((h >> i) & 1 for i in range(256))
        block += 1
    return bits[:k]


def _invert(perm):
    inv = [0] * len(perm)
    for i, j in enumerate(perm):
        inv[j] = i
    return inv


def mix_and_prove(params: GroupParams, pk: int, cts, k: int, rng: Rng, mode=FsMode.STRONG):
    """Shuffle and re-encrypt ``cts``; returns (outputs, MixProof)."""
    if not cts:
        raise ValueError("nothing to mix")
    if k < 1:
        raise ValueError("at least one round is needed")
    n, q = len(cts), params.q
    if (k + 1) * n >= 128:
        params.precompute(pk)
    perm = rng.permutation(n)
    rands = [params.random_scalar(rng) for _ in range(n)]
    outs = shuffle(params, pk, cts, perm, rands)
    secrets, mids_list = [], []
    for _ in range(k):
        s_perm = rng.permutation(n)
        s_rands = [params.random_scalar(rng) for _ in range(n)]
        secrets.append((s_perm, s_rands))
        mids_list.append(shuffle(params, pk, cts, s_perm, s_rands))
    bits = challenge_bits(params, pk, cts, outs, mids_list, mode)
    rounds = []
    for bit, mids, (s_perm, s_rands) in zip(bits, mids_list, secrets):
        if bit == 0:
            rounds.append(MixRound(tuple(mids), 0, tuple(s_perm), tuple(s_rands)))
            continue
        # outs[i] came from cts[perm[i]], which sits at mids[inv[perm[i]]]
        inv = _invert(s_perm)
        tau = [inv[j] for j in perm]
        t = [(rands[i] - s_rands[tau[i]]) % q for i in range(n)]
        rounds.append(MixRound(tuple(mids), 1, tuple(tau), tuple(t)))
    return outs, MixProof(tuple(rounds))


def replay_round(params: GroupParams, pk: int, cts, outs, rnd: MixRound) -> bool:
    """Recompute one opened side exactly."""
    src, dst = (list(cts), rnd.mids) if rnd.bit == 0 else (rnd.mids, list(outs))
    return _opening_shape_ok(params, len(src), rnd) and shuffle(params, pk, src, rnd.perm, rnd.rands) == list(dst)


def _opening_shape_ok(params, n, rnd: MixRound) -> bool:
    return (
        len(rnd.mids) == n
        and len(rnd.perm) == n
        and len(rnd.rands) == n
        and sorted(rnd.perm) == list(range(n))
        and all(params.is_scalar(r) for r in rnd.rands)
    )


BATCH_BITS = 64


def _batch_weights(params, pk, cts, outs, proof: MixProof, count: int, digest: int) -> list[int]:
    fields = [params.p, params.g, pk, *_flat(cts), *_flat(outs), digest]
    for r in proof.rounds:
        fields += [r.bit, *r.perm, *r.rands]
    return derive_weights(TAG_MIX, b"batch", count, *fields, bits=BATCH_BITS)


def _openings_ok_batched(params, pk, cts, outs, proof: MixProof, digest: int) -> bool:
    """Check every opened side at once with a small-exponent batch test.

    Each opening claims dst[i] = src[perm[i]] * (g, pk)^rands[i].  Raising
    each claim to an independent 64-bit weight and multiplying them all gives
    one equation per ciphertext component.  If any single claim is false it
    survives with probability about 2^-64, since every element has already
    been checked to lie in the prime-order subgroup.  Inputs and outputs occur
    in many rounds, so their weights are summed first and each is raised once.
    """
    p, q, n = params.p, params.q, len(cts)
    weights = iter(_batch_weights(params, pk, cts, outs, proof, n * len(proof.rounds), digest))
    in_w, out_w = [0] * n, [0] * n
    lhs1 = lhs2 = rhs1 = rhs2 = 1  # dst side, src side
    total = 0
    for r in proof.rounds:
        for i, (j, t) in enumerate(zip(r.perm, r.rands)):
            d = next(weights)
            total += d * t
            if r.bit == 0:  # inputs[j] -> mids[i]
                in_w[j] += d
                m = r.mids[i]
                lhs1 = lhs1 * gmpy2.powmod(m.c1, d, p) % p
                lhs2 = lhs2 * gmpy2.powmod(m.c2, d, p) % p
            else:  # mids[j] -> outputs[i]
                out_w[i] += d
                m = r.mids[j]
                rhs1 = rhs1 * gmpy2.powmod(m.c1, d, p) % p
                rhs2 = rhs2 * gmpy2.powmod(m.c2, d, p) % p
    for c, d in zip(cts, in_w):
        if d:
            rhs1 = rhs1 * gmpy2.powmod(c.c1, d, p) % p
            rhs2 = rhs2 * gmpy2.powmod(c.c2, d, p) % p
    for c, d in zip(outs, out_w):
        if d:
            lhs1 = lhs1 * gmpy2.powmod(c.c1, d, p) % p
            lhs2 = lhs2 * gmpy2.powmod(c.c2, d, p) % p
    total %= q
    return lhs1 == rhs1 * params.gpow(total) % p and lhs2 == rhs2 * params.pow(pk, total) % p


def verify_mix(params: GroupParams, pk: int, cts, outs, proof: MixProof, mode=FsMode.STRONG, batch: bool = True) -> bool:
    try:
        cts, outs = list(cts), list(outs)
        n = len(cts)
        if not n or len(outs) != n or not proof.rounds:
            return False
        if not params.is_member(pk) or not all(c.valid(params) for c in cts + outs):
            return False
        if not all(_opening_shape_ok(params, n, r) and all(c.valid(params) for c in r.mids) for r in proof.rounds):
            return False
        digest = mids_digest([r.mids for r in proof.rounds])
        bits = challenge_bits(params, pk, cts, outs, [r.mids for r in proof.rounds], mode, digest)
        if [r.bit for r in proof.rounds] != bits:
            return False
        if batch:
            return _openings_ok_batched(params, pk, cts, outs, proof, digest)
        return all(replay_round(params, pk, cts, outs, r) for r in proof.rounds)
    except Exception:
        return False


# -- Helios Mixnet ------------------------------------------------------------


@dataclass(frozen=True)
class MixnetPK:
    params: GroupParams
    y: int
    proof: Transcript


@dataclass(frozen=True)
class MixnetSK:
    pk: MixnetPK
    sk: int


@dataclass(frozen=True)
class MixnetBallot:
    ct: Ciphertext
    pok: Transcript

    def to_json(self) -> dict:
        return {"ct": self.ct.to_json(), "pok": self.pok.to_json()}

    @classmethod
    def from_json(cls, d) -> "MixnetBallot":
        return cls(Ciphertext.from_json(d["ct"]), Transcript.from_json(d["pok"]))


@dataclass(frozen=True)
class MixnetTallyProof:
    accepted: tuple[int, ...]
    mixed: tuple[Ciphertext, ...]
    mix: MixProof | None
    plaintexts: tuple[int, ...]
    decryptions: tuple[Transcript, ...]
    ill_formed: tuple[int, ...]

    def to_json(self) -> dict:
        return {
            "accepted": list(self.accepted),
            "mixed": [c.to_json() for c in self.mixed],
            "mix": None if self.mix is None else self.mix.to_json(),
            "plaintexts": [to_hex(m) for m in self.plaintexts],
            "decryptions": [t.to_json() for t in self.decryptions],
            "ill_formed": list(self.ill_formed),
        }

    @classmethod
    def from_json(cls, d) -> "MixnetTallyProof":
        return cls(
            tuple(int(i) for i in d["accepted"]),
            tuple(Ciphertext.from_json(c) for c in d["mixed"]),
            None if d["mix"] is None else MixProof.from_json(d["mix"]),
            tuple(from_hex(m) for m in d["plaintexts"]),
            tuple(Transcript.from_json(t) for t in d["decryptions"]),
            tuple(int(i) for i in d["ill_formed"]),
        )


def ballot_binding(fs: FsMode, y: int, ct: Ciphertext) -> tuple:
    return (y, ct.c2) if fs is FsMode.STRONG else ()


@lru_cache(maxsize=1 << 14)
def ballot_valid(params: GroupParams, y: int, fs: FsMode, ballot) -> bool:
    if not isinstance(ballot, MixnetBallot) or not ballot.ct.valid(params):
        return False
    return sigma.verify_dlog(params, ballot.ct.c1, ballot.pok, fs, BALLOT_CONTEXT, ballot_binding(fs, y, ballot.ct))


def read_plaintexts(params: GroupParams, elems, nc: int):
    """Frequency vector over 1..nc, plus the positions that decode to no candidate."""
    nc = max(nc, 0)
    counts, bad = [0] * nc, []
    for i, m in enumerate(elems):
        v = params.dlog_small(m, nc) if nc else None
        if v is None or v == 0:
            bad.append(i)
        else:
            counts[v - 1] += 1
    return tuple(counts), tuple(bad)


class HeliosMixnet(ElectionScheme):
    name = "helios-mixnet"

    def __init__(self, variant: FsMode | str = FsMode.STRONG, k: int = DEFAULT_ROUNDS):
        self.fs = FsMode.of(variant)
        self.variant = self.fs.value
        self.k = k

    def setup(self, level, rng):
        params = gen_params(level)
        sk = params.random_scalar(rng, nonzero=True)
        pk = MixnetPK(params, params.gpow(sk), sigma.prove_dlog(params, sk, self.fs, rng, KEY_CONTEXT))
        return pk, MixnetSK(pk, sk), MAX_BALLOTS, MAX_CANDIDATES_DEFAULT

    def vote(self, pk, v, nc, rng):
        if not 1 <= v <= nc <= MAX_CANDIDATES_DEFAULT:
            return None
        return self.encrypt_ballot(pk, v, rng)

    def encrypt_ballot(self, pk: MixnetPK, m: int, rng: Rng) -> MixnetBallot:
        """A well-proved ballot for any exponent m, in range or not."""
        params = pk.params
        r = params.random_scalar(rng)
        ct = encrypt_exp(params, pk.y, m, r)
        pok = sigma.prove_dlog(params, r, self.fs, rng, BALLOT_CONTEXT, ballot_binding(self.fs, pk.y, ct))
        return MixnetBallot(ct, pok)

    def accepted_indices(self, pk: MixnetPK, bb) -> list[int]:
        out = []
        for i, b in enumerate(bb):
            try:
                ok = ballot_valid(pk.params, pk.y, self.fs, b)
            except TypeError:
                ok = False
            if ok:
                out.append(i)
        return out

    def tally(self, sk, bb, nc, rng):
        pk, params = sk.pk, sk.pk.params
        idx = self.accepted_indices(pk, bb)
        if idx:
            mixed, mix = mix_and_prove(params, pk.y, [bb[i].ct for i in idx], self.k, rng, self.fs)
        else:
            mixed, mix = [], None
        elems, proofs = [], []
        for c in mixed:
            m = plaintext_element(params, sk.sk, c)
            elems.append(m)
            proofs.append(sigma.prove_eq(params, sk.sk, sigma.EqStatement(pk.y, c.c1, m, c.c2), self.fs, rng, DECRYPT_CONTEXT))
        counts, bad = read_plaintexts(params, elems, nc)
        return counts, MixnetTallyProof(tuple(idx), tuple(mixed), mix, tuple(elems), tuple(proofs), bad)

    def audit(self, pk, bb, nc, outcome, proof):
        params = pk.params
        checks = [Check("key-proof", sigma.verify_dlog(params, pk.y, pk.proof, self.fs, KEY_CONTEXT))]
        shape = (
            isinstance(proof, MixnetTallyProof)
            and len(outcome) == max(nc, 0)
            and all(isinstance(x, int) for x in outcome)
            and len(proof.mixed) == len(proof.accepted) == len(proof.plaintexts) == len(proof.decryptions)
        )
        checks.append(Check("outcome-shape", shape))
        if not shape:
            return checks
        idx = self.accepted_indices(pk, bb)
        checks.append(Check("accepted-set", list(proof.accepted) == idx, f"{len(idx)} of {len(bb)} ballots accepted"))
        if idx:
            ok = proof.mix is not None and len(proof.mix.rounds) == self.k and verify_mix(
                params, pk.y, [bb[i].ct for i in idx], proof.mixed, proof.mix, self.fs
            )
        else:
            ok = proof.mix is None and not proof.mixed
        checks.append(Check("shuffle-proof", ok))
        for i, (c, m, tr) in enumerate(zip(proof.mixed, proof.plaintexts, proof.decryptions), start=1):
            st = sigma.EqStatement(pk.y, c.c1, m, c.c2)
            checks.append(Check(f"decryption-proof[{i}]", sigma.verify_eq(params, st, tr, self.fs, DECRYPT_CONTEXT)))
        counts, bad = read_plaintexts(params, proof.plaintexts, nc)
        checks.append(Check("recount", tuple(outcome) == counts and tuple(proof.ill_formed) == bad,
                            f"{len(bad)} ill-formed"))
        return checks

    # serialization

    def pk_to_json(self, pk):
        return {"params": params_to_json(pk.params), "y": to_hex(pk.y), "proof": pk.proof.to_json()}

    def pk_from_json(self, d):
        return MixnetPK(params_from_json(d["params"]), from_hex(d["y"]), Transcript.from_json(d["proof"]))

    def ballot_from_json(self, d):
        return MixnetBallot.from_json(d)

    def proof_to_json(self, proof):
        return proof.to_json()

    def proof_from_json(self, d):
        return MixnetTallyProof.from_json(d)
