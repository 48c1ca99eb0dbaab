from dataclasses import replace

import pytest

from votinggames.adversaries import cheat_shuffle
from votinggames.elgamal import KeyPair, decrypt_exp, encrypt_exp, reencrypt
from votinggames.group import gen_params
from votinggames.mixnet import HeliosMixnet, mix_and_prove, read_plaintexts, verify_mix
from votinggames.rng import Rng
from votinggames.scheme import BulletinBoard
from votinggames.sigma import FsMode


@pytest.fixture(scope="module")
def setup():
    params = gen_params("test")
    sk = params.random_scalar(Rng(60), nonzero=True)
    return params, KeyPair(params, params.gpow(sk), sk)


def _cts(params, pk, ms, rng):
    return [encrypt_exp(params, pk, m, params.random_scalar(rng)) for m in ms]


def test_mix_preserves_multiset(setup):
    params, kp = setup
    rng = Rng(61)
    cts = _cts(params, kp.pk, [1, 2], rng)
    outs, proof = mix_and_prove(params, kp.pk, cts, 40, rng)
    assert sorted(decrypt_exp(kp, c, 5) for c in outs) == [1, 2]
    assert verify_mix(params, kp.pk, cts, outs, proof)


def test_single_ciphertext_mix(setup):
    params, kp = setup
    rng = Rng(62)
    cts = _cts(params, kp.pk, [3], rng)
    outs, proof = mix_and_prove(params, kp.pk, cts, 40, rng)
    assert outs != cts and decrypt_exp(kp, outs[0], 5) == 3
    assert verify_mix(params, kp.pk, cts, outs, proof)


@pytest.mark.parametrize("mode", [FsMode.WEAK, FsMode.STRONG])
def test_honest_mixes_verify(setup, mode):
    params, kp = setup
    rng = Rng(63)
    for _ in range(100):
        cts = _cts(params, kp.pk, [rng.randrange(1, 4) for _ in range(rng.randrange(1, 6))], rng)
        outs, proof = mix_and_prove(params, kp.pk, cts, 40, rng, mode)
        assert verify_mix(params, kp.pk, cts, outs, proof, mode)


def test_batched_and_replayed_verification_agree(setup):
    params, kp = setup
    rng = Rng(64)
    cts = _cts(params, kp.pk, [1, 2, 3, 1], rng)
    outs, proof = mix_and_prove(params, kp.pk, cts, 12, rng)
    assert verify_mix(params, kp.pk, cts, outs, proof, batch=False)
    rnd = proof.rounds[5]
    bad = replace(proof, rounds=proof.rounds[:5] + (replace(rnd, rands=(rnd.rands[0] + 1,) + rnd.rands[1:]),)
                  + proof.rounds[6:])
    assert not verify_mix(params, kp.pk, cts, outs, bad)
    assert not verify_mix(params, kp.pk, cts, outs, bad, batch=False)


def test_replaced_output_rejected(setup):
    params, kp = setup
    rng = Rng(65)
    for _ in range(100):
        cts = _cts(params, kp.pk, [1, 2, 3], rng)
        outs, proof = mix_and_prove(params, kp.pk, cts, 40, rng)
        outs = list(outs)
        outs[rng.randrange(0, 3)] = encrypt_exp(params, kp.pk, 7, params.random_scalar(rng))
        assert not verify_mix(params, kp.pk, cts, outs, proof)


def test_cheating_prover_caught_at_expected_rate(setup):
    """A prover who guesses each round's bit wins only when every guess is right."""
    params, kp = setup
    rng = Rng(66)
    cts = _cts(params, kp.pk, [1, 2], rng)
    fake = [reencrypt(params, kp.pk, cts[0], 5), encrypt_exp(params, kp.pk, 9, 6)]
    wins = 0
    for _ in range(400):
        proof = cheat_shuffle(params, kp.pk, cts, fake, 2, rng)
        wins += verify_mix(params, kp.pk, cts, fake, proof)
    assert 50 <= wins <= 150  # 1/4 of 400 expected


def test_read_plaintexts():
    params = gen_params("test")
    elems = [params.gpow(m) for m in (3, 1, 3, 5, 0)]
    assert read_plaintexts(params, elems, 3) == ((1, 0, 2), (3, 4))
    assert read_plaintexts(params, elems, 0) == ((), (0, 1, 2, 3, 4))


@pytest.fixture(scope="module", params=["weak", "strong"])
def mixnet(request):
    s = HeliosMixnet(request.param, k=40)
    pk, sk, _, _ = s.setup("test", Rng(67))
    return s, pk, sk


def test_mixnet_election(mixnet):
    s, pk, sk = mixnet
    rng = Rng(68)
    bb = BulletinBoard(s.vote(pk, v, 3, rng) for v in (3, 1, 3))
    outcome, proof = s.tally(sk, bb, 3, rng)
    assert outcome == (1, 0, 2) and s.verify(pk, bb, 3, outcome, proof)


def test_out_of_range_ballot_listed_ill_formed(mixnet):
    s, pk, sk = mixnet
    rng = Rng(69)
    bb = BulletinBoard([s.vote(pk, 2, 3, rng), s.encrypt_ballot(pk, 5, rng), s.vote(pk, 1, 3, rng)])
    outcome, proof = s.tally(sk, bb, 3, rng)
    assert outcome == (1, 1, 0) and len(proof.ill_formed) == 1
    assert s.verify(pk, bb, 3, outcome, proof)


def test_mixnet_empty_board(mixnet):
    s, pk, sk = mixnet
    outcome, proof = s.tally(sk, BulletinBoard(), 3, Rng(70))
    assert outcome == (0, 0, 0) and proof.mix is None
    assert s.verify(pk, BulletinBoard(), 3, outcome, proof)


def test_mixnet_tampered_count(mixnet):
    s, pk, sk = mixnet
    rng = Rng(71)
    bb = BulletinBoard(s.vote(pk, v, 2, rng) for v in (1, 2))
    outcome, proof = s.tally(sk, bb, 2, rng)
    assert not s.verify(pk, bb, 2, (2, 0), proof)


def test_mixnet_json_roundtrip(mixnet):
    s, pk, sk = mixnet
    rng = Rng(72)
    bb = BulletinBoard(s.vote(pk, v, 2, rng) for v in (1, 2))
    outcome, proof = s.tally(sk, bb, 2, rng)
    again = s.proof_from_json(s.proof_to_json(proof))
    assert again == proof
    assert s.pk_from_json(s.pk_to_json(pk)) == pk
