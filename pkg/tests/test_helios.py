from dataclasses import replace

import pytest

from votinggames.elgamal import decrypt_exp, KeyPair
from votinggames.helios import (
    Helios,
    HeliosBallot,
    ballot_valid,
    ballot_valid_exact,
    column_sums,
    encode_vote,
    weed,
)
from votinggames.adversaries import maul_ballot
from votinggames.rng import Rng
from votinggames.scheme import BulletinBoard
from votinggames.sigma import verify_or


@pytest.mark.parametrize("v,nc,want", [(2, 4, (0, 1, 0)), (4, 4, (0, 0, 0)), (1, 2, (1,))])
def test_encode_vote(v, nc, want):
    assert encode_vote(v, nc) == want


@pytest.fixture(scope="module", params=["weak", "strong"])
def election(request):
    s = Helios(request.param)
    pk, sk, _, _ = s.setup("test", Rng(40))
    return s, pk, sk


def _valid(s, pk, nc, b):
    return ballot_valid(pk.params, pk.y, nc, s.fs, b)


def test_example_board_columns(election):
    s, pk, sk = election
    rng = Rng(41)
    bb = [s.vote(pk, v, 3, rng) for v in (2, 1, 1)]
    kp = KeyPair(pk.params, pk.y, sk.sk)
    assert [decrypt_exp(kp, c, 3) for c in column_sums(pk.params, bb, 3)] == [2, 1]
    outcome, proof = s.tally(sk, BulletinBoard(bb), 3, rng)
    assert outcome == (2, 1, 0)
    assert s.verify(pk, BulletinBoard(bb), 3, outcome, proof)


def test_honest_ballot_proofs_verify(election):
    s, pk, _ = election
    rng = Rng(42)
    for nc in (1, 2, 4):
        for v in range(1, nc + 1):
            b = s.vote(pk, v, nc, rng)
            assert _valid(s, pk, nc, b) and ballot_valid_exact(pk.params, pk.y, nc, s.fs, b)


def test_last_candidate_encrypts_zeros(election):
    s, pk, sk = election
    b = s.vote(pk, 3, 3, Rng(43))
    kp = KeyPair(pk.params, pk.y, sk.sk)
    assert [decrypt_exp(kp, c, 1) for c in b.cts] == [0, 0]
    assert _valid(s, pk, 3, b)


def test_ballot_for_other_nc_rejected(election):
    s, pk, _ = election
    b = s.vote(pk, 1, 3, Rng(44))
    assert not _valid(s, pk, 4, b) and not _valid(s, pk, 2, b)


def test_weed():
    s = Helios("strong")
    pk, _, _, _ = s.setup("test", Rng(45))
    rng = Rng(46)
    honest = [s.vote(pk, 1 + i % 3, 3, rng) for i in range(100)]
    assert weed(honest) == honest
    b = honest[0]
    assert weed([b, b]) == [b]
    copy = HeliosBallot((b.cts[0], honest[1].cts[1]), honest[1].proofs)
    assert weed([b, copy]) == [b]


def test_invalid_ballot_excluded(election):
    s, pk, sk = election
    rng = Rng(47)
    bb = [s.vote(pk, v, 3, rng) for v in (2, 1, 1)]
    first = bb[0].proofs[0]
    bad_proof = replace(first, responses=((first.responses[0] + 1) % pk.params.q, first.responses[1]))
    bb[0] = HeliosBallot(bb[0].cts, (bad_proof,) + bb[0].proofs[1:])
    outcome, proof = s.tally(sk, BulletinBoard(bb), 3, rng)
    assert outcome == (2, 0, 0) and list(proof.accepted) == [1, 2]
    assert s.verify(pk, BulletinBoard(bb), 3, outcome, proof)


def test_audit_catches_tampered_results(election):
    s, pk, sk = election
    rng = Rng(48)
    bb = BulletinBoard(s.vote(pk, v, 3, rng) for v in (1, 2, 2, 3))
    outcome, proof = s.tally(sk, bb, 3, rng)
    assert s.verify(pk, bb, 3, outcome, proof)
    bumped = (outcome[0] + 1,) + outcome[1:]
    assert not s.verify(pk, bb, 3, bumped, proof)
    swapped = replace(proof, decryptions=proof.decryptions[::-1])
    assert not s.verify(pk, bb, 3, outcome, swapped)


def test_no_candidates(election):
    s, pk, sk = election
    bb = BulletinBoard([s.vote(pk, 1, 2, Rng(49))])
    outcome, proof = s.tally(sk, bb, 0, Rng(50))
    assert outcome == () and s.verify(pk, bb, 0, outcome, proof)
    assert not s.verify(pk, bb, 0, (1,), proof)


def test_maul_valid_only_under_weak():
    for variant, expect in (("weak", True), ("strong", False)):
        s = Helios(variant)
        pk, _, _, _ = s.setup("test", Rng(51))
        b = s.vote(pk, 1, 3, Rng(52))
        mauled = maul_ballot(b, (2, 1))
        assert _valid(s, pk, 3, mauled) is expect
        assert ballot_valid_exact(pk.params, pk.y, 3, s.fs, mauled) is expect


def test_batch_and_exact_agree_on_mixed_inputs(election):
    s, pk, _ = election
    params, rng = pk.params, Rng(53)
    for _ in range(30):
        b = s.vote(pk, rng.randrange(1, 5), 4, rng)
        j = rng.randrange(0, 4)
        pf = b.proofs[j]
        kind = rng.randrange(0, 3)
        if kind == 0:
            pf = replace(pf, responses=(pf.responses[1], pf.responses[0]))
        elif kind == 1:
            pf = replace(pf, commitments=pf.commitments[2:] + pf.commitments[:2])
        proofs = b.proofs[:j] + (pf,) + b.proofs[j + 1:]
        t = HeliosBallot(b.cts, proofs)
        assert _valid(s, pk, 4, t) == ballot_valid_exact(params, pk.y, 4, s.fs, t) == (kind == 2)
