"""Security games as executable experiments.

Each ``play_*`` function runs one game once and returns a ``GameResult``
whose ``won`` flag is the conjunction of the named conditions in
``detail["conjuncts"]``.  Games fail closed: an adversary that raises or
returns something malformed loses that run.

``run_trials`` repeats a game over independent randomness streams and
summarises the win rate with a Wilson 95% interval.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

from scipy.stats import binomtest

from .elgamal import AsymmetricScheme
from .rng import Rng, ScriptedRng
from .scheme import (
    BulletinBoard,
    ElectionScheme,
    VoteLedger,
    WitnessMismatch,
    balanced,
    ballot_bytes,
    correct_outcome,
)


@dataclass(frozen=True)
class GameResult:
    won: bool
    detail: dict = field(default_factory=dict)

    @classmethod
    def from_conjuncts(cls, conjuncts: dict, **info) -> "GameResult":
        conj = {k: bool(v) for k, v in conjuncts.items()}
        return cls(all(conj.values()), {"conjuncts": conj, **info})

    @classmethod
    def loss(cls, reason: str, **info) -> "GameResult":
        return cls(False, {"conjuncts": {"adversary-output-valid": False}, "reason": reason, **info})

    @property
    def failed(self) -> list[str]:
        return [k for k, v in self.detail.get("conjuncts", {}).items() if not v]

    def consistent(self) -> bool:
        """The won flag agrees with the recorded conjuncts."""
        return self.won == all(self.detail.get("conjuncts", {"none": False}).values())


@dataclass(frozen=True)
class TrialStats:
    trials: int
    wins: int
    rate: float
    ci95: tuple[float, float]

    @classmethod
    def from_counts(cls, wins: int, trials: int) -> "TrialStats":
        ci = binomtest(wins, trials).proportion_ci(0.95, method="wilson")
        return cls(trials, wins, wins / trials, (float(ci.low), float(ci.high)))

    def contains(self, p: float) -> bool:
        return self.ci95[0] <= p <= self.ci95[1]

    def __str__(self) -> str:
        return f"{self.wins}/{self.trials} = {self.rate:.3f} (95% CI {self.ci95[0]:.3f}-{self.ci95[1]:.3f})"


# -- adversary interfaces -----------------------------------------------------
# One instance per run.  Instances may keep whatever state they like between
# callbacks; the games never share an instance across runs.


class SecrecyAdversary:
    def __init__(self, rng: Rng):
        self.rng = rng

    def choose_nc(self, pk, level: str) -> int:
        raise NotImplementedError

    def build_board(self, pk, oracle) -> list:
        raise NotImplementedError

    def guess(self, outcome, proof) -> int:
        raise NotImplementedError


class CvaAdversary:
    def __init__(self, rng: Rng):
        self.rng = rng

    def choose(self, pk, level: str) -> tuple[int, int, int]:
        """-> (v0, v1, nc)"""
        raise NotImplementedError

    def build_board(self, pk, challenge) -> list:
        raise NotImplementedError

    def guess(self, outcome) -> int:
        raise NotImplementedError


class Pa0Adversary:
    def __init__(self, rng: Rng):
        self.rng = rng

    def choose(self, pk, max_message: int) -> tuple[int, int]:
        raise NotImplementedError

    def query(self, challenge) -> list:
        raise NotImplementedError

    def guess(self, plaintexts) -> int:
        raise NotImplementedError


@dataclass
class SoundnessClaim:
    pk: object
    bb: list
    nc: int
    outcome: tuple
    proof: object
    witnesses: list = field(default_factory=list)


class SoundnessAdversary:
    def __init__(self, rng: Rng):
        self.rng = rng

    def forge(self, scheme: ElectionScheme, level: str) -> SoundnessClaim:
        raise NotImplementedError


class CompletenessAdversary:
    def __init__(self, rng: Rng):
        self.rng = rng

    def board(self, scheme: ElectionScheme, pk, level: str) -> tuple[list, int]:
        raise NotImplementedError


class IVAdversary:
    def __init__(self, rng: Rng):
        self.rng = rng

    def choose(self, scheme: ElectionScheme, level: str) -> tuple:
        """-> (pk, nc, v, v')"""
        raise NotImplementedError


class CoinGuesser(SecrecyAdversary, CvaAdversary, Pa0Adversary):
    """Ignores everything and guesses.  Honest ballots for (1, 2) keep the
    secrecy board balanced, so only the guess decides the game."""

    def choose_nc(self, pk, level):
        return 2

    def build_board(self, pk, oracle_or_challenge):
        if callable(oracle_or_challenge):
            return [oracle_or_challenge(1, 2), oracle_or_challenge(2, 1)]
        return []

    def choose(self, pk, arg):
        if isinstance(arg, str):
            return 1, 2, 2
        return 2, 3

    def query(self, challenge):
        return []

    def guess(self, *_):
        return self.rng.bit()


# -- games --------------------------------------------------------------------


class VoteOracle:
    """The left-or-right voting oracle.  It owns the ledger; the adversary only
    ever sees the ballots it returns."""

    def __init__(self, scheme, pk, nc, beta, rng: Rng, ledger: VoteLedger):
        self._scheme, self._pk, self._nc, self._beta = scheme, pk, nc, beta
        self._rng, self._ledger = rng, ledger
        self.queries = 0

    def __call__(self, v0: int, v1: int):
        self.queries += 1
        if not (1 <= v0 <= self._nc and 1 <= v1 <= self._nc):
            return None
        b = self._scheme.vote(self._pk, (v0, v1)[self._beta], self._nc, self._rng.child())
        if b is not None:
            self._ledger.record(b, v0, v1)
        return b


def _board(entries) -> BulletinBoard:
    if isinstance(entries, BulletinBoard):
        return entries
    return BulletinBoard([b for b in entries if b is not None])


def play_ballot_secrecy(scheme: ElectionScheme, adv: SecrecyAdversary, level: str, rng: Rng, mode: str = "literal") -> GameResult:
    """Left-or-right ballot secrecy.

    ``mode="literal"`` tallies the whole board and hands the adversary the
    outcome and the tally proof.  ``mode="split"`` tallies only the ballots
    the adversary made itself, credits each oracle ballot on the board to
    the candidate it really encrypts, and withholds the proof.
    """
    if mode not in ("literal", "split"):
        raise ValueError(mode)
    setup_rng, beta_rng, oracle_rng, tally_rng = rng.spawn(4)
    pk, sk, mb, mc = scheme.setup(level, setup_rng)
    beta = beta_rng.bit()
    ledger = VoteLedger()
    try:
        nc = int(adv.choose_nc(pk, level))
        if not 1 <= nc <= mc:
            return GameResult.from_conjuncts({"nc-in-range": False}, beta=beta)
        oracle = VoteOracle(scheme, pk, nc, beta, oracle_rng, ledger)
        bb = _board(adv.build_board(pk, oracle))
    except Exception as e:
        return GameResult.loss(f"adversary raised {type(e).__name__}: {e}")
    try:
        if mode == "literal":
            outcome, proof = scheme.tally(sk, bb, nc, tally_rng)
        else:
            oracle_keys = ledger.ballot_keys()
            own = [b for b in bb if ballot_bytes(b) not in oracle_keys]
            outcome, _ = scheme.tally(sk, BulletinBoard(own), nc, tally_rng)
            counts = list(outcome)
            on_board = {ballot_bytes(b) for b in bb}
            for b, v0, v1 in ledger.entries:
                if ballot_bytes(b) in on_board:
                    counts[(v0, v1)[beta] - 1] += 1
            outcome, proof = tuple(counts), None
    except Exception as e:
        return GameResult.loss(f"tally failed on the adversary's board: {type(e).__name__}", beta=beta)
    try:
        g = adv.guess(outcome, proof)
    except Exception as e:
        return GameResult.loss(f"adversary raised {type(e).__name__}: {e}")
    return GameResult.from_conjuncts(
        {
            "guess-correct": g == beta,
            "balanced": balanced(bb, nc, ledger),
            "nc-in-range": 1 <= nc <= mc,
            "board-size": len(bb) <= mb,
        },
        beta=beta,
        outcome=list(outcome),
        board=len(bb),
        mode=mode,
    )


def play_ind_cva(scheme: ElectionScheme, adv: CvaAdversary, level: str, rng: Rng) -> GameResult:
    setup_rng, beta_rng, vote_rng, tally_rng = rng.spawn(4)
    pk, sk, mb, mc = scheme.setup(level, setup_rng)
    beta = beta_rng.bit()
    try:
        v0, v1, nc = (int(x) for x in adv.choose(pk, level))
        in_range = 1 <= v0 <= nc and 1 <= v1 <= nc and nc <= mc
        if not in_range:
            return GameResult.from_conjuncts({"votes-in-range": False}, beta=beta)
        b = scheme.vote(pk, (v0, v1)[beta], nc, vote_rng)
        bb = _board(adv.build_board(pk, b))
        outcome, _ = scheme.tally(sk, bb, nc, tally_rng)
        g = adv.guess(outcome)
    except Exception as e:
        return GameResult.loss(f"{type(e).__name__}: {e}", beta=beta)
    return GameResult.from_conjuncts(
        {
            "guess-correct": g == beta,
            "challenge-absent": b not in bb,
            "votes-in-range": in_range,
            "board-size": len(bb) <= mb,
        },
        beta=beta,
        outcome=list(outcome),
    )


def play_ind_pa0(enc: AsymmetricScheme, adv: Pa0Adversary, level: str, rng: Rng) -> GameResult:
    gen_rng, beta_rng, enc_rng = rng.spawn(3)
    pk, sk, max_m = enc.generate(level, gen_rng)
    beta = beta_rng.bit()
    try:
        m0, m1 = (int(x) for x in adv.choose(pk, max_m))
        valid = 0 <= m0 <= max_m and 0 <= m1 <= max_m and m0.bit_length() == m1.bit_length()
        if not valid:
            return GameResult.from_conjuncts({"messages-valid": False}, beta=beta)
        c = enc.encrypt(pk, (m0, m1)[beta], enc_rng)
        queries = list(adv.query(c))
        plaintexts = [enc.decrypt(sk, ci) for ci in queries]
        g = adv.guess(plaintexts)
    except Exception as e:
        return GameResult.loss(f"{type(e).__name__}: {e}", beta=beta)
    key = ballot_bytes(c)
    return GameResult.from_conjuncts(
        {
            "guess-correct": g == beta,
            "challenge-not-queried": all(ballot_bytes(ci) != key for ci in queries),
            "messages-valid": valid,
        },
        beta=beta,
        plaintexts=plaintexts,
    )


def play_soundness(scheme: ElectionScheme, adv: SoundnessAdversary, level: str, rng: Rng | None = None) -> GameResult:
    try:
        claim = adv.forge(scheme, level)
        bb = _board(claim.bb)
        checks = scheme.audit(claim.pk, bb, claim.nc, tuple(claim.outcome), claim.proof)
        accepted = scheme.verify(claim.pk, bb, claim.nc, tuple(claim.outcome), claim.proof)
    except Exception as e:
        return GameResult.loss(f"{type(e).__name__}: {e}")
    try:
        correct = correct_outcome(scheme, claim.pk, claim.nc, bb, claim.witnesses)
    except WitnessMismatch as e:
        return GameResult.loss(f"witness mismatch: {e}")
    return GameResult.from_conjuncts(
        {"verified": accepted, "outcome-incorrect": tuple(claim.outcome) != correct},
        claimed=list(claim.outcome),
        correct=list(correct),
        failed_checks=[c.name for c in checks if not c.passed],
    )


def play_completeness(scheme: ElectionScheme, adv: CompletenessAdversary, level: str, rng: Rng) -> GameResult:
    setup_rng, tally_rng = rng.spawn(2)
    pk, sk, mb, mc = scheme.setup(level, setup_rng)
    try:
        entries, nc = adv.board(scheme, pk, level)
        nc = int(nc)
        bb = _board(entries)
    except Exception as e:
        return GameResult.loss(f"{type(e).__name__}: {e}")
    size_ok = len(bb) <= mb and nc <= mc
    if not size_ok:
        return GameResult.from_conjuncts({"rejected": False, "board-size": len(bb) <= mb, "nc-in-range": nc <= mc})
    try:
        outcome, proof = scheme.tally(sk, bb, nc, tally_rng)
    except Exception as e:
        # the challenger's own tally broke on this board: no accepted outcome
        return GameResult.from_conjuncts(
            {"rejected": True, "board-size": True, "nc-in-range": True}, reason=f"tally raised {type(e).__name__}"
        )
    checks = scheme.audit(pk, bb, nc, outcome, proof)
    return GameResult.from_conjuncts(
        {"rejected": not scheme.verify(pk, bb, nc, outcome, proof), "board-size": True, "nc-in-range": True},
        failed_checks=[c.name for c in checks if not c.passed],
    )


def play_individual_verifiability(scheme: ElectionScheme, adv: IVAdversary, level: str, rng: Rng) -> GameResult:
    r1, r2 = rng.spawn(2)
    try:
        pk, nc, v, v2 = adv.choose(scheme, level)
        b = scheme.vote(pk, v, nc, r1)
        b2 = scheme.vote(pk, v2, nc, r2)
    except Exception as e:
        return GameResult.loss(f"{type(e).__name__}: {e}")
    return GameResult.from_conjuncts(
        {
            "ballots-equal": b is not None and b2 is not None and ballot_bytes(b) == ballot_bytes(b2),
            "first-not-bottom": b is not None,
            "second-not-bottom": b2 is not None,
        }
    )


def check_injectivity(scheme: ElectionScheme, sampler, trials: int) -> bool:
    """True when no sampled pair of distinct votes yields equal ballots.

    ``sampler(i)`` returns (pk, nc, v, v', rng, rng').  Passing two
    ``ScriptedRng`` over the same coins makes both ballots share randomness.
    """
    for i in range(trials):
        pk, nc, v, v2, ra, rb = sampler(i)
        if v == v2:
            continue
        b, b2 = scheme.vote(pk, v, nc, ra), scheme.vote(pk, v2, nc, rb)
        if b is not None and b2 is not None and ballot_bytes(b) == ballot_bytes(b2):
            return False
    return True


def shared_coin_sampler(pk, nc: int, coin_lists, pairs=None):
    """Sampler for ``check_injectivity`` cycling over vote pairs and coin lists."""
    if pairs is None:
        pairs = [(v, w) for v in range(1, nc + 1) for w in range(1, nc + 1) if v != w]
    coin_lists = list(coin_lists)

    def sample(i):
        v, w = pairs[i % len(pairs)]
        coins = coin_lists[(i // len(pairs)) % len(coin_lists)]
        return pk, nc, v, w, ScriptedRng(coins), ScriptedRng(coins)

    return sample, len(pairs) * len(coin_lists)


# -- trials -------------------------------------------------------------------


def run_trials(game, n: int, seed: int, records=None, meta: dict | None = None) -> TrialStats:
    """Run ``game(rng)`` on n independent streams split from ``seed``.

    When ``records`` is a writable text file, one JSON line per trial is
    written with the fields of ``meta`` plus seed, trial, won and detail.
    """
    if n < 1:
        raise ValueError("need at least one trial")
    wins = 0
    for i, stream in enumerate(Rng(seed).spawn(n)):
        res = game(stream)
        wins += bool(res.won)
        if records is not None:
            rec = dict(meta or {})
            rec.update(seed=format(seed, "x"), trial=i, won=bool(res.won), detail=res.detail)
            records.write(json.dumps(rec, default=str) + "\n")
    return TrialStats.from_counts(wins, n)
