import pytest

from votinggames.catalog import canonical_name, make_encryption, make_scheme
from votinggames.rng import Rng
from votinggames.scheme import (
    BulletinBoard,
    DuplicateBallot,
    VoteLedger,
    Witness,
    WitnessMismatch,
    balanced,
    cast_with_witness,
    correct_outcome,
    plaintext_count,
    run_election,
)


def test_enc2vote_counts_plaintexts():
    s = make_scheme("enc2vote", "strong")
    outcome, t = run_election(s, [1, 1, 2], 3, Rng(1))
    assert outcome == (2, 1, 0) and t["verified"]


def test_enc2vote_out_of_range_vote():
    s = make_scheme("enc2vote", "strong")
    pk, *_ = s.setup("test", Rng(2))
    assert s.vote(pk, 4, 3, Rng(3)) is None
    assert s.vote(pk, 0, 3, Rng(3)) is None


def test_enc2vote_verify_accepts_anything():
    s = make_scheme("enc2vote", "weak")
    pk, *_ = s.setup("test", Rng(4))
    assert s.verify(pk, BulletinBoard(), 3, (9, 9, 9), "whatever")


@pytest.fixture(scope="module")
def witnessed():
    s = make_scheme("helios", "strong")
    pk, sk, _, _ = s.setup("test", Rng(5))
    rng = Rng(6)
    pairs = [cast_with_witness(s, pk, v, 3, rng) for v in (2, 1, 1)]
    return s, pk, sk, pairs


def test_correct_outcome_from_witnesses(witnessed):
    s, pk, _, pairs = witnessed
    bb = BulletinBoard(b for b, _ in pairs)
    assert correct_outcome(s, pk, 3, bb, [w for _, w in pairs]) == (2, 1, 0)


def test_correct_outcome_empty_board(witnessed):
    s, pk, _, _ = witnessed
    assert correct_outcome(s, pk, 3, BulletinBoard(), []) == (0, 0, 0)


def test_correct_outcome_wrong_coins(witnessed):
    s, pk, _, pairs = witnessed
    b, w = pairs[0]
    bad = Witness(b, w.vote, (w.coins[0] + 1,) + w.coins[1:])
    with pytest.raises(WitnessMismatch):
        correct_outcome(s, pk, 3, BulletinBoard([b]), [bad])


def test_balanced_examples():
    ledger = VoteLedger()
    a, b, c = b"a", b"b", b"c"
    ledger.record(a, 1, 2)
    ledger.record(b, 2, 1)
    ledger.record(c, 3, 3)
    assert balanced([a, b, c], 3, ledger)
    assert not balanced([a], 3, ledger)
    assert balanced([b"other"], 3, ledger)


def test_board_rejects_duplicates():
    bb = BulletinBoard()
    assert bb.append(b"x") == 0
    with pytest.raises(DuplicateBallot):
        bb.append(b"x")
    assert not bb.add(b"x") and len(bb) == 1


@pytest.mark.parametrize("name", ["helios", "helios-mixnet", "enc2vote"])
def test_honest_elections(name):
    rng = Rng(7)
    for i, r in enumerate(rng.spawn(10)):
        s = make_scheme(name, ("weak", "strong")[i % 2], k=8)
        nc = r.randrange(1, 6)
        votes = [r.randrange(1, nc + 1) for _ in range(r.randrange(0, 21))]
        outcome, t = run_election(s, votes, nc, r.child())
        assert outcome == plaintext_count(votes, nc) and t["verified"]


@pytest.mark.parametrize("name", ["helios", "helios-mixnet", "enc2vote"])
def test_empty_election(name):
    outcome, t = run_election(make_scheme(name), [], 3, Rng(8))
    assert outcome == (0, 0, 0) and t["verified"]


def test_catalog_names():
    assert canonical_name("mixnet") == "helios-mixnet"
    assert canonical_name("helios-hom") == "helios"
    with pytest.raises(ValueError):
        make_scheme("nope")
    assert make_encryption("weak").name == "plain" and make_encryption("strong").name == "nm"
