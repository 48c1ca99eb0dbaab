import io
import json
import itertools

import pytest

from votinggames.adversaries import (
    GarbageBoardAdversary,
    HonestBoardAdversary,
    HonestKeyIVAdversary,
    HonestSoundnessAdversary,
    OversizedNcAdversary,
    PermutationAdversary,
)
from votinggames.catalog import make_encryption, make_scheme
from votinggames.games import (
    CoinGuesser,
    GameResult,
    IVAdversary,
    SecrecyAdversary,
    TrialStats,
    check_injectivity,
    play_ballot_secrecy,
    play_completeness,
    play_ind_cva,
    play_ind_pa0,
    play_individual_verifiability,
    play_soundness,
    run_trials,
    shared_coin_sampler,
)
from votinggames.rng import Rng, ScriptedRng


def _closure(play, target, factory, **kw):
    def run(rng):
        adv_rng, game_rng = rng.spawn(2)
        return play(target, factory(adv_rng), "test", game_rng, **kw)

    return run


def test_run_trials_always_win():
    stats = run_trials(lambda rng: GameResult(True), 100, seed=1)
    assert stats.rate == 1.0 and stats.wins == 100


def test_run_trials_fair_coin():
    stats = run_trials(lambda rng: GameResult(bool(rng.bit())), 2000, seed=2)
    assert stats.contains(0.5)


def test_run_trials_is_deterministic():
    game = lambda rng: GameResult(rng.randrange(3) == 0)
    assert run_trials(game, 300, seed=3) == run_trials(game, 300, seed=3)


def test_run_trials_records():
    out = io.StringIO()
    run_trials(lambda rng: GameResult(True, {"x": 1}), 3, seed=0xAB, records=out, meta={"game": "g"})
    lines = [json.loads(l) for l in out.getvalue().splitlines()]
    assert [l["trial"] for l in lines] == [0, 1, 2]
    assert lines[0]["game"] == "g" and lines[0]["seed"] == "ab" and lines[0]["won"]


def test_trial_stats_wilson():
    s = TrialStats.from_counts(0, 200)
    assert s.ci95[0] == 0.0 and 0.015 < s.ci95[1] < 0.02
    with pytest.raises(ValueError):
        run_trials(lambda rng: GameResult(True), 0, seed=0)


def test_game_result_conjuncts():
    r = GameResult.from_conjuncts({"a": True, "b": False})
    assert not r.won and r.failed == ["b"] and r.consistent()
    assert not GameResult.loss("no").won


def test_guesser_is_at_chance_in_secrecy():
    stats = run_trials(_closure(play_ballot_secrecy, make_scheme("enc2vote", "strong"), CoinGuesser), 2000, seed=4)
    assert 0.45 <= stats.rate <= 0.55


def test_guesser_is_at_chance_in_ind_cva():
    stats = run_trials(_closure(play_ind_cva, make_scheme("enc2vote", "weak"), CoinGuesser), 2000, seed=5)
    assert 0.45 <= stats.rate <= 0.55


def test_guesser_is_at_chance_in_ind_pa0():
    stats = run_trials(_closure(play_ind_pa0, make_encryption("plain"), CoinGuesser), 2000, seed=6)
    assert 0.45 <= stats.rate <= 0.55


class _UnbalancedAdversary(SecrecyAdversary):
    """Knows beta from the outcome but leaves the board unbalanced."""

    def choose_nc(self, pk, level):
        return 2

    def build_board(self, pk, oracle):
        return [oracle(1, 2)]

    def guess(self, outcome, proof):
        return int(outcome[1] == 1)


def test_unbalanced_board_never_wins():
    stats = run_trials(_closure(play_ballot_secrecy, make_scheme("helios", "strong"), _UnbalancedAdversary), 100, seed=7)
    assert stats.wins == 0


def test_split_mode_credits_oracle_ballots_by_their_real_vote():
    # in split mode the outcome is built from the ledger, so a balanced pair
    # of oracle ballots always gives the same outcome for both betas
    class Pair(SecrecyAdversary):
        def choose_nc(self, pk, level):
            return 2

        def build_board(self, pk, oracle):
            return [oracle(1, 2), oracle(2, 1)]

        def guess(self, outcome, proof):
            assert outcome == (1, 1) and proof is None
            return 0

    stats = run_trials(_closure(play_ballot_secrecy, make_scheme("helios", "strong"), Pair, mode="split"), 200, seed=8)
    assert stats.contains(0.5)


def test_permutation_attack_split_mode_weak_helios():
    stats = run_trials(
        _closure(play_ballot_secrecy, make_scheme("helios", "weak"), PermutationAdversary, mode="split"), 100, seed=9
    )
    assert stats.rate >= 0.95


def test_nc_out_of_range_loses():
    class Big(CoinGuesser):
        def choose_nc(self, pk, level):
            return 10**9

    res = play_ballot_secrecy(make_scheme("helios"), Big(Rng(1)), "test", Rng(2))
    assert not res.won and res.failed == ["nc-in-range"]


@pytest.mark.parametrize("name", ["helios", "helios-mixnet", "enc2vote"])
def test_completeness_honest_boards(name):
    stats = run_trials(_closure(play_completeness, make_scheme(name), HonestBoardAdversary), 20, seed=10)
    assert stats.wins == 0


@pytest.mark.parametrize("name", ["helios", "helios-mixnet", "enc2vote"])
def test_completeness_garbage_filtered(name):
    stats = run_trials(_closure(play_completeness, make_scheme(name), GarbageBoardAdversary), 20, seed=11)
    assert stats.wins == 0


def test_completeness_oversized_nc():
    res = play_completeness(make_scheme("helios"), OversizedNcAdversary(Rng(1)), "test", Rng(2))
    assert not res.won and "nc-in-range" in res.failed


def test_soundness_honest_claim_loses():
    for name in ("helios", "helios-mixnet"):
        res = play_soundness(make_scheme(name), HonestSoundnessAdversary(Rng(12)), "test")
        assert not res.won and res.failed == ["outcome-incorrect"]


@pytest.mark.parametrize("name", ["helios", "helios-mixnet", "enc2vote"])
def test_iv_honest_keys(name):
    stats = run_trials(_closure(play_individual_verifiability, make_scheme(name), HonestKeyIVAdversary), 200, seed=13)
    assert stats.wins == 0


def test_iv_forced_coins_and_equal_votes_do_not_win():
    class SameVote(IVAdversary):
        def choose(self, scheme, level):
            pk, _, _, _ = scheme.setup(level, Rng(1))
            return pk, 3, 2, 2

    res = play_individual_verifiability(make_scheme("helios"), SameVote(Rng(0)), "test", Rng(14))
    assert not res.won and "ballots-equal" in res.failed


def test_toy_group_exhaustive_injectivity():
    s = make_scheme("helios", "strong")
    pk, _, _, _ = s.setup("toy", ScriptedRng([6, 1, 1, 1]))
    # two encryption coins, then three coins for each of three proofs
    coins = [(r1, r2) + (1,) * 9 for r1, r2 in itertools.product(range(22), repeat=2)]
    sampler, n = shared_coin_sampler(pk, 3, coins)
    assert check_injectivity(s, sampler, n)


def test_injectivity_detects_collisions():
    class Constant:
        def vote(self, pk, v, nc, rng):
            return b"same"

    sampler, n = shared_coin_sampler(None, 2, [[0]])
    assert not check_injectivity(Constant(), sampler, n)
