"""Concrete attacks, packaged as adversaries for the games module.

Each adversary is a single-run object built from a randomness stream, so a
given seed always replays the same attack.  ``ATTACKS`` lists the attack and
target pairs together with the win rate each one should reach.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

from . import sigma
from .catalog import make_encryption, make_scheme
from .elgamal import Ciphertext, NMCiphertext, encrypt_exp, hom_combine
from .games import (
    CompletenessAdversary,
    CvaAdversary,
    IVAdversary,
    Pa0Adversary,
    SecrecyAdversary,
    SoundnessAdversary,
    SoundnessClaim,
    TrialStats,
    play_ballot_secrecy,
    play_completeness,
    play_ind_cva,
    play_ind_pa0,
    play_individual_verifiability,
    play_soundness,
    run_trials,
)
from .group import GroupParams, gen_params
from .helios import (
    BALLOT_CONTEXT,
    DECRYPT_CONTEXT,
    Helios,
    HeliosBallot,
    HeliosPK,
    HeliosTallyProof,
    key_proof,
)
from .mixnet import DECRYPT_CONTEXT as MIX_DECRYPT_CONTEXT
from .mixnet import (
    HeliosMixnet,
    MixnetBallot,
    MixnetTallyProof,
    MixProof,
    MixRound,
    challenge_bits,
    read_plaintexts,
    shuffle,
)
from .rng import RecordingRng, Rng
from .scheme import BulletinBoard, cast_with_witness, plaintext_count
from .sigma import EqStatement, FsMode, Transcript

MAX_RETRIES = 64


class ForgeryFailed(RuntimeError):
    pass


def _y(pk) -> int:
    """The ElGamal key element inside any of the public key bundles."""
    y = getattr(pk, "y", None)
    return y if y is not None else pk.pk.y


# -- ballot transformations ---------------------------------------------------


def maul_ballot(ballot: HeliosBallot, perm) -> HeliosBallot:
    """Move each (ciphertext, proof) pair j to position perm[j-1].

    The last proof covers the product of all ciphertexts, which does not
    depend on their order, so it is kept.  A ballot for v becomes a ballot
    for perm[v-1] (and the implicit last candidate stays put).
    """
    n = len(ballot.cts)
    if n < 2 or sorted(perm) != list(range(1, n + 1)):
        raise ValueError("perm must be a permutation of 1..nc-1 with nc-1 >= 2")
    cts, proofs = [None] * n, [None] * n
    for j, target in enumerate(perm):
        cts[target - 1] = ballot.cts[j]
        proofs[target - 1] = ballot.proofs[j]
    return HeliosBallot(tuple(cts), tuple(proofs) + (ballot.proofs[-1],))


def shift_ballot(params: GroupParams, pk, b, delta: int, rng: Rng):
    """Multiply in a fresh encryption of ``delta``, keeping any attached proof.

    delta = 0 is a plain re-encryption.
    """
    y = _y(pk)

    def shift(ct: Ciphertext) -> Ciphertext:
        return hom_combine(params, ct, encrypt_exp(params, y, delta, params.random_scalar(rng)))

    if isinstance(b, Ciphertext):
        return shift(b)
    if isinstance(b, NMCiphertext):
        return NMCiphertext(shift(b.ct), b.proof)
    if isinstance(b, MixnetBallot):
        return MixnetBallot(shift(b.ct), b.pok)
    if isinstance(b, HeliosBallot):
        if delta:
            raise ValueError("a Helios ballot can only be re-encrypted")
        return HeliosBallot(tuple(shift(c) for c in b.cts), b.proofs)
    raise TypeError(f"cannot maul {type(b).__name__}")


class _PrefixRng(Rng):
    """Serve a fixed list of coins first, then draw from ``rest``."""

    def __init__(self, prefix, rest: Rng):
        self._prefix = list(prefix)
        self._rest = rest

    def spawn(self, n):
        return self._rest.spawn(n)

    def randrange(self, start, stop=None):
        if self._prefix:
            return self._prefix.pop(0)
        return self._rest.randrange(start, stop)


def cheat_shuffle(params: GroupParams, pk: int, cts, fake_outs, k: int, rng: Rng, mode=FsMode.STRONG) -> MixProof:
    """A shuffle proof for outputs that are not a shuffle of the inputs.

    Each round guesses its challenge bit in advance and builds mids it can
    open on that side only.  The proof verifies exactly when all k guesses
    match the hashed bits.
    """
    n, q = len(cts), params.q
    guesses, mids_list, secrets = [], [], []
    for _ in range(k):
        g = rng.bit()
        perm = rng.permutation(n)
        rands = [params.random_scalar(rng) for _ in range(n)]
        mids_list.append(shuffle(params, pk, cts if g == 0 else fake_outs, perm, rands))
        guesses.append(g)
        secrets.append((perm, rands))
    bits = challenge_bits(params, pk, cts, fake_outs, mids_list, mode)
    rounds = []
    for bit, g, mids, (perm, rands) in zip(bits, guesses, mids_list, secrets):
        if g == 0:
            opening = (tuple(perm), tuple(rands))
        else:
            # mids[j] = fake_outs[perm[j]] * E(0; rands[j]), so undo it
            tau = [0] * n
            for j, i in enumerate(perm):
                tau[i] = j
            opening = (tuple(tau), tuple(-rands[tau[i]] % q for i in range(n)))
        rounds.append(MixRound(tuple(mids), bit, *opening))
    return MixProof(tuple(rounds))


# -- ballot secrecy -----------------------------------------------------------


class PermutationAdversary(SecrecyAdversary):
    """Derive a related ballot by permuting the oracle ballot's ciphertexts.

    Plain form: ask for (v0, v1), post only the mauled ballot and read the
    count of candidate perm(v0).  The board is balanced because the oracle
    ballot is absent.

    Stealth form: also ask for (v1, v0), post both oracle ballots and the
    mauled one, and match the outcome against the two possible multisets.
    The voters' own ballots stay on the board.
    """

    def __init__(self, rng: Rng, nc: int = 3, stealth: bool = False):
        super().__init__(rng)
        if nc < 3:
            raise ValueError("the permutation attack needs nc >= 3")
        self.nc, self.stealth = nc, stealth

    def choose_nc(self, pk, level):
        return self.nc

    def build_board(self, pk, oracle):
        n = self.nc - 1
        self.v0 = self.rng.randrange(1, n + 1)
        self.v1 = self.rng.choice([v for v in range(1, n + 1) if v != self.v0])
        perm = list(range(1, n + 1))
        while perm == list(range(1, n + 1)):
            perm = [i + 1 for i in self.rng.permutation(n)]
        self.perm = perm
        b1 = oracle(self.v0, self.v1)
        mauled = maul_ballot(b1, perm)
        if not self.stealth:
            return [mauled]
        b2 = oracle(self.v1, self.v0)
        return [mauled, b1, b2]

    def guess(self, outcome, proof):
        chi = self.perm
        if not self.stealth:
            return 0 if outcome[chi[self.v0 - 1] - 1] == 1 else 1
        if tuple(outcome) == plaintext_count([self.v0, self.v1, chi[self.v0 - 1]], self.nc):
            return 0
        if tuple(outcome) == plaintext_count([self.v1, self.v0, chi[self.v1 - 1]], self.nc):
            return 1
        return self.rng.bit()


def make_secrecy_permutation_adversary(nc: int = 3, stealth: bool = False) -> Callable[[Rng], PermutationAdversary]:
    def factory(rng: Rng) -> PermutationAdversary:
        return PermutationAdversary(rng, nc, stealth)

    return factory


# -- malleation against encryption and Enc2Vote -------------------------------


class Pa0MalleationAdversary(Pa0Adversary):
    """Choose (2, 3), ask to decrypt c * E(1) and read off m_beta + 1."""

    def choose(self, pk, max_message):
        self.pk = pk
        return 2, 3

    def query(self, challenge):
        return [shift_ballot(self.pk.params, self.pk, challenge, 1, self.rng)]

    def guess(self, plaintexts):
        if plaintexts and plaintexts[0] in (3, 4):
            return plaintexts[0] - 3
        return self.rng.bit()


class CvaMalleationAdversary(CvaAdversary):
    """Challenge on (1, 2) with nc = 3; post b * E(1) so the vote moves up one."""

    def choose(self, pk, level):
        self.pk = pk
        return 1, 2, 3

    def build_board(self, pk, challenge):
        return [shift_ballot(pk.params, pk, challenge, 1, self.rng)]

    def guess(self, outcome):
        if tuple(outcome) == (0, 1, 0):
            return 0
        if tuple(outcome) == (0, 0, 1):
            return 1
        return self.rng.bit()


class CopyCvaAdversary(CvaAdversary):
    """The board refuses a byte copy of the challenge, so post a re-encryption
    of it instead.  Wherever the scheme rejects the re-encrypted ballot the
    outcome is empty and the guess is a coin flip."""

    def choose(self, pk, level):
        return 1, 2, 2

    def build_board(self, pk, challenge):
        return [shift_ballot(pk.params, pk, challenge, 0, self.rng)]

    def guess(self, outcome):
        if tuple(outcome) == (1, 0):
            return 0
        if tuple(outcome) == (0, 1):
            return 1
        return self.rng.bit()


# -- soundness ----------------------------------------------------------------


def forge_decryption_proof(params: GroupParams, pk: int, sk: int, r: int, c1: int, t: int, rng: Rng,
                           context: bytes = DECRYPT_CONTEXT) -> tuple[int, Transcript]:
    """Pick c2 after hashing so that (c1, c2) "decrypts" to g^t.

    With t1 = g^w1, t2 = c1^w2 and c = H(t1, t2) under weak Fiat-Shamir,
    z = w1 + c*sk satisfies both equations once
    c2 = g^(t + r*(w1 - w2)/c) * pk^r.  The real plaintext of (c1, c2) is
    t + r*(w1 - w2)/c.  The challenge is always the weak one, so under strong
    Fiat-Shamir the transcript is rejected.
    """
    q = params.q
    for _ in range(MAX_RETRIES):
        w1, w2 = params.random_scalar(rng), params.random_scalar(rng)
        t1, t2 = params.gpow(w1), params.pow(c1, w2)
        c = sigma.fs_challenge(params, FsMode.WEAK, sigma.TAG_EQ, (), (t1, t2), context)
        if c == 0:
            continue
        z = (w1 + c * sk) % q
        shift = (t + r * (w1 - w2) * params.sinv(c)) % q
        c2 = params.mul(params.gpow(shift), params.pow(pk, r))
        return c2, Transcript("eq", (t1, t2), c, (z,))
    raise ForgeryFailed("weak challenge kept hashing to zero")


def forge_decryption_claim(params: GroupParams, pk: int, sk: int, ct: Ciphertext, rng: Rng,
                           context: bytes = DECRYPT_CONTEXT) -> tuple[int, Transcript]:
    """Claim that a fixed ciphertext decrypts to some other element M.

    Used where the ciphertext is not the forger's to choose (mixer outputs
    are pinned by the shuffle proof), so the freedom moves to the claimed
    plaintext instead: t2 = g^u is committed before hashing, and
    M = c2 * c1^-sk * (g^u * c1^-w1)^(1/c) then satisfies the second equation.
    """
    q = params.q
    for _ in range(MAX_RETRIES):
        w1, u = params.random_scalar(rng), params.random_scalar(rng)
        t1, t2 = params.gpow(w1), params.gpow(u)
        c = sigma.fs_challenge(params, FsMode.WEAK, sigma.TAG_EQ, (), (t1, t2), context)
        if c == 0:
            continue
        z = (w1 + c * sk) % q
        blind = params.pow(params.div(t2, params.pow(ct.c1, w1)), params.sinv(c))
        m_elem = params.mul(params.div(ct.c2, params.pow(ct.c1, sk)), blind)
        return m_elem, Transcript("eq", (t1, t2), c, (z,))
    raise ForgeryFailed("weak challenge kept hashing to zero")


class HeliosForger(SoundnessAdversary):
    """A single nc = 2 ballot that encrypts m = 2 yet carries valid 0-or-1 proofs.

    Commit to a_i = g^w_i and b_i = g^u_i for both branches, hash them, then
    choose the private key x so that the branch challenges
    c_i = (x*w_i - u_i) / (m - i) add up to the hash.  With responses
    z_i = w_i + c_i*r both branches verify for c2 = g^m * pk^r.  The key's
    proof of knowledge and the decryption proof are honest, since x is known.
    Under weak Fiat-Shamir the product proof covers the same ciphertext with
    no other input, so the same transcript serves twice.

    The claimed outcome is (m, 1 - m).  It passes the leftover check.
    Nothing on the board is witnessed, so the correct outcome is (0, 0).
    """

    m = 2

    def forge(self, scheme, level):
        if not isinstance(scheme, Helios):
            raise TypeError("this forger targets homomorphic Helios")
        params, m = gen_params(level), self.m
        q = params.q
        for _ in range(MAX_RETRIES):
            w = [params.random_scalar(self.rng) for _ in range(2)]
            u = [params.random_scalar(self.rng) for _ in range(2)]
            commitments = (params.gpow(w[0]), params.gpow(u[0]), params.gpow(w[1]), params.gpow(u[1]))
            c = sigma.fs_challenge(params, FsMode.WEAK, sigma.TAG_OR, (), commitments, BALLOT_CONTEXT)
            inv = [params.sinv(m - i) for i in range(2)]
            denom = (w[0] * inv[0] + w[1] * inv[1]) % q
            if denom == 0:
                continue
            x = (c + u[0] * inv[0] + u[1] * inv[1]) * params.sinv(denom) % q
            if x == 0:
                continue
            break
        else:
            raise ForgeryFailed("no usable commitments found")
        subs = tuple((x * w[i] - u[i]) * inv[i] % q for i in range(2))
        r = params.random_scalar(self.rng)
        y = params.gpow(x)
        ct = encrypt_exp(params, y, m, r)
        tr = Transcript("or", commitments, c, tuple((w[i] + subs[i] * r) % q for i in range(2)), subs)
        ballot = HeliosBallot((ct,), (tr, tr))
        pk = HeliosPK(params, y, key_proof(params, x, scheme.fs, self.rng))
        st = EqStatement(y, ct.c1, params.gpow(m), ct.c2)
        dec = sigma.prove_eq(params, x, st, scheme.fs, self.rng, DECRYPT_CONTEXT)
        proof = HeliosTallyProof((0,), (dec,))
        return SoundnessClaim(pk, [ballot], 2, (m, 1 - m), proof, [])


class MixnetForger(SoundnessAdversary):
    """Honest keys, honest witnessed votes, honest mix; then some decryption
    proofs are replaced by forged claims that those outputs decrypt to
    elements naming no candidate.  Those votes drop out of the count."""

    def __init__(self, rng: Rng, ballots: int = 3, nc: int = 2):
        super().__init__(rng)
        self.ell, self.nc = ballots, nc

    def forge(self, scheme, level):
        if not isinstance(scheme, HeliosMixnet):
            raise TypeError("this forger targets Helios Mixnet")
        setup_rng, vote_rng, tally_rng, forge_rng = self.rng.spawn(4)
        pk, sk, _, _ = scheme.setup(level, setup_rng)
        params, nc = pk.params, self.nc
        bb, witnesses = BulletinBoard(), []
        for r in vote_rng.spawn(self.ell):
            b, w = cast_with_witness(scheme, pk, r.randrange(1, nc + 1), nc, r)
            bb.append(b)
            witnesses.append(w)
        _, honest = scheme.tally(sk, bb, nc, tally_rng)
        n = len(honest.mixed)
        n_forged = forge_rng.randrange(1, n)
        forged = set(forge_rng.permutation(n)[:n_forged])
        elems, proofs = list(honest.plaintexts), list(honest.decryptions)
        for i in forged:
            elems[i], proofs[i] = forge_decryption_claim(
                params, pk.y, sk.sk, honest.mixed[i], forge_rng, MIX_DECRYPT_CONTEXT
            )
        counts, bad = read_plaintexts(params, elems, nc)
        proof = MixnetTallyProof(honest.accepted, honest.mixed, honest.mix, tuple(elems), tuple(proofs), bad)
        return SoundnessClaim(pk, bb, nc, counts, proof, witnesses)


def make_soundness_forger(target: str = "helios") -> Callable[[Rng], SoundnessAdversary]:
    target = {"helios-hom": "helios", "mixnet": "helios-mixnet"}.get(target, target)
    if target == "helios":
        return HeliosForger
    if target == "helios-mixnet":
        return MixnetForger
    raise ValueError(f"no soundness forger for {target!r}")


class CopySoundnessAdversary(SoundnessAdversary):
    """An honest ballot plus a second honest ballot that reuses the first
    one's encryption coins but not its proof coins.  Both are witnessed, so
    the correct outcome counts two votes, while weeding drops the copy."""

    def __init__(self, rng: Rng, nc: int = 2, corrupt: bool = False):
        super().__init__(rng)
        self.nc, self.corrupt = nc, corrupt

    def forge(self, scheme, level):
        if not isinstance(scheme, Helios):
            raise TypeError("shared-ciphertext copies are a Helios construction")
        setup_rng, vote_rng, copy_rng, tally_rng = self.rng.spawn(4)
        pk, sk, _, _ = scheme.setup(level, setup_rng)
        nc = self.nc
        v = vote_rng.randrange(1, nc + 1)
        b, w = cast_with_witness(scheme, pk, v, nc, vote_rng)
        rec = RecordingRng(_PrefixRng(w.coins[: nc - 1], copy_rng))
        copy = scheme.vote(pk, v, nc, rec)
        w2 = type(w)(copy, v, tuple(rec.coins))
        witnesses = [w, w2]
        if self.corrupt:
            # break the first proof of both ballots: neither is well formed
            # any more, and neither can be witnessed
            bad = sigma.Transcript("or", b.proofs[0].commitments, b.proofs[0].challenge,
                                   b.proofs[0].responses[::-1], b.proofs[0].sub_challenges)
            b = HeliosBallot(b.cts, (bad,) + b.proofs[1:])
            copy = HeliosBallot(copy.cts, (bad,) + copy.proofs[1:])
            witnesses = []
        bb = BulletinBoard([b, copy])
        outcome, proof = scheme.tally(sk, bb, nc, tally_rng)
        return SoundnessClaim(pk, bb, nc, outcome, proof, witnesses)


class HonestSoundnessAdversary(SoundnessAdversary):
    """Runs an honest election and claims its true outcome."""

    def __init__(self, rng: Rng, voters: int = 3, nc: int = 3):
        super().__init__(rng)
        self.voters, self.nc = voters, nc

    def forge(self, scheme, level):
        setup_rng, vote_rng, tally_rng = self.rng.spawn(3)
        pk, sk, _, _ = scheme.setup(level, setup_rng)
        bb, witnesses = BulletinBoard(), []
        for r in vote_rng.spawn(self.voters):
            b, w = cast_with_witness(scheme, pk, r.randrange(1, self.nc + 1), self.nc, r)
            bb.append(b)
            witnesses.append(w)
        outcome, proof = scheme.tally(sk, bb, self.nc, tally_rng)
        return SoundnessClaim(pk, bb, self.nc, outcome, proof, witnesses)


def make_copy_adversary(game: str = "soundness"):
    if game == "soundness":
        return CopySoundnessAdversary
    if game == "ind-cva":
        return CopyCvaAdversary
    raise ValueError(f"no copy adversary for {game!r}")


# -- completeness and individual verifiability --------------------------------


class HonestBoardAdversary(CompletenessAdversary):
    def __init__(self, rng: Rng, max_voters: int = 6, max_nc: int = 4):
        super().__init__(rng)
        self.max_voters, self.max_nc = max_voters, max_nc

    def board(self, scheme, pk, level):
        nc = self.rng.randrange(1, self.max_nc + 1)
        n = self.rng.randrange(0, self.max_voters + 1)
        return [scheme.vote(pk, self.rng.randrange(1, nc + 1), nc, r) for r in self.rng.spawn(n)], nc


class GarbageBoardAdversary(CompletenessAdversary):
    """Honest ballots mixed with raw bytes and ballots made for another nc."""

    def board(self, scheme, pk, level):
        nc = self.rng.randrange(2, 4)
        entries = [scheme.vote(pk, self.rng.randrange(1, nc + 1), nc, r) for r in self.rng.spawn(3)]
        entries.append(bytes(self.rng.randrange(256) for _ in range(16)))
        entries.append(b"")
        entries.append(scheme.vote(pk, nc + 1, nc + 1, self.rng.child()))
        return entries, nc


class OversizedNcAdversary(CompletenessAdversary):
    def board(self, scheme, pk, level):
        return [], scheme.max_candidates(pk) + 1


class HonestKeyIVAdversary(IVAdversary):
    """Honestly generated keys; the two votes are equal half the time."""

    def __init__(self, rng: Rng, max_nc: int = 4):
        super().__init__(rng)
        self.max_nc = max_nc

    def choose(self, scheme, level):
        pk = scheme.setup(level, self.rng.child())[0]
        nc = self.rng.randrange(1, self.max_nc + 1)
        v = self.rng.randrange(1, nc + 1)
        v2 = v if self.rng.bit() else self.rng.randrange(1, nc + 1)
        return pk, nc, v, v2


# -- registry -----------------------------------------------------------------

# expected rate classes
CHANCE = "chance"  # guessing game, 0.5 inside the Wilson interval
NEVER = "never"  # reachability game, no wins at all
LIKELY = "likely"  # guessing game, rate >= 0.99
ALWAYS = "always"  # reachability game, every run won


@dataclass(frozen=True)
class AttackSpec:
    name: str
    scheme: str
    variant: str
    game: str
    expected: str
    factory: Callable
    trials: int = 200
    mode: str = "literal"

    @property
    def key(self) -> str:
        return f"{self.name}@{self.scheme}/{self.variant}"

    def meets(self, stats: TrialStats) -> bool:
        if self.expected == CHANCE:
            return stats.contains(0.5)
        if self.expected == NEVER:
            return stats.wins == 0
        if self.expected == LIKELY:
            return stats.rate >= 0.99
        return stats.wins == stats.trials


def game_closure(spec: AttackSpec, level: str = "test", k: int | None = None):
    """rng -> GameResult for one run of ``spec``."""
    if spec.game == "ind-pa0":
        target = make_encryption(spec.variant)
    else:
        target = make_scheme(spec.scheme, spec.variant) if k is None else make_scheme(spec.scheme, spec.variant, k)

    def run(rng: Rng):
        adv_rng, game_rng = rng.spawn(2)
        adv = spec.factory(adv_rng)
        if spec.game == "ballot-secrecy":
            return play_ballot_secrecy(target, adv, level, game_rng, spec.mode)
        if spec.game == "ind-cva":
            return play_ind_cva(target, adv, level, game_rng)
        if spec.game == "ind-pa0":
            return play_ind_pa0(target, adv, level, game_rng)
        if spec.game == "soundness":
            return play_soundness(target, adv, level, game_rng)
        if spec.game == "completeness":
            return play_completeness(target, adv, level, game_rng)
        if spec.game == "iv":
            return play_individual_verifiability(target, adv, level, game_rng)
        raise ValueError(f"unknown game {spec.game!r}")

    return run


def run_attack(spec: AttackSpec, trials: int | None = None, seed: int = 0, level: str = "test", records=None):
    n = trials or spec.trials
    meta = {"attack": spec.name, "game": spec.game, "scheme": spec.scheme, "variant": spec.variant}
    return run_trials(game_closure(spec, level), n, seed, records, meta)


def _perm(stealth):
    return make_secrecy_permutation_adversary(3, stealth)


def _pair(name, scheme, game, factory, weak, strong, trials=200, mode="literal"):
    return [
        AttackSpec(name, scheme, "weak", game, weak, factory, trials, mode),
        AttackSpec(name, scheme, "strong", game, strong, factory, trials, mode),
    ]


ATTACKS: list[AttackSpec] = [
    *_pair("permutation", "helios", "ballot-secrecy", _perm(False), LIKELY, CHANCE, 500),
    *_pair("permutation-stealth", "helios", "ballot-secrecy", _perm(True), LIKELY, CHANCE, 500),
    *_pair("weak-fs-forger", "helios", "soundness", make_soundness_forger("helios"), ALWAYS, NEVER),
    *_pair("weak-fs-forger", "helios-mixnet", "soundness", make_soundness_forger("helios-mixnet"), ALWAYS, NEVER),
    *_pair("copy", "helios", "soundness", make_copy_adversary("soundness"), NEVER, ALWAYS),
    *_pair("pa0-malleation", "elgamal", "ind-pa0", Pa0MalleationAdversary, LIKELY, CHANCE, 2000),
    *_pair("cva-malleation", "enc2vote", "ind-cva", CvaMalleationAdversary, LIKELY, CHANCE, 2000),
    *_pair("copy", "enc2vote", "ind-cva", make_copy_adversary("ind-cva"), LIKELY, CHANCE, 2000),
    *[
        AttackSpec("honest-iv", s, v, "iv", NEVER, HonestKeyIVAdversary, 500)
        for s in ("helios", "helios-mixnet", "enc2vote")
        for v in ("weak", "strong")
    ],
]


def find_attacks(name: str, scheme: str | None = None, variant: str | None = None) -> list[AttackSpec]:
    return [
        a for a in ATTACKS
        if a.name == name and (scheme is None or a.scheme == scheme) and (variant is None or a.variant == variant)
    ]
