"""The eight acceptance criteria, each at its stated trial counts and time budget.

Every test records one PASS/FAIL line, printed in the "acceptance criteria"
section at the end of the run.
"""

import time

import pytest

from conftest import record_criterion
from votinggames.adversaries import (
    CopySoundnessAdversary,
    CvaMalleationAdversary,
    HonestKeyIVAdversary,
    MixnetForger,
    HeliosForger,
    Pa0MalleationAdversary,
    cheat_shuffle,
    make_secrecy_permutation_adversary,
)
from votinggames.board import make_transcript, transcript_verify
from votinggames.catalog import make_encryption, make_scheme
from votinggames.elgamal import Ciphertext, KeyPair, decrypt_exp, encrypt_exp, hom_combine, reencrypt
from votinggames.games import (
    play_ballot_secrecy,
    play_ind_cva,
    play_ind_pa0,
    play_individual_verifiability,
    play_soundness,
    run_trials,
)
from votinggames.group import gen_params
from votinggames.helios import Helios, column_sums
from votinggames.mixnet import mix_and_prove, verify_mix
from votinggames.rng import Rng
from votinggames.scheme import plaintext_count, run_election
from votinggames.sigma import FsMode

pytestmark = pytest.mark.slow


def _closure(play, target, factory, level="test", **kw):
    def run(rng):
        adv_rng, game_rng = rng.spawn(2)
        return play(target, factory(adv_rng), level, game_rng, **kw)

    return run


def _soundness(target, factory):
    def run(rng):
        return play_soundness(target, factory(rng), "test")

    return run


def test_criterion_1_elgamal_known_answers():
    t0 = time.perf_counter()
    params = gen_params("toy")
    kp = KeyPair(params, params.gpow(6), 6)
    a = encrypt_exp(params, kp.pk, 2, 3)
    b = encrypt_exp(params, kp.pk, 1, 5)
    prod = hom_combine(params, a, b)
    got = (kp.pk, a, b, prod, [decrypt_exp(kp, c, 10) for c in (a, b, prod)])
    want = (8, Ciphertext(10, 12), Ciphertext(20, 11), Ciphertext(16, 17), [2, 1, 3])
    elapsed = time.perf_counter() - t0
    ok = got == want and elapsed < 1
    record_criterion(1, ok, f"toy-group vectors {'match' if got == want else got} in {elapsed:.3f}s")
    print(f"criterion 1: {'PASS' if ok else 'FAIL'}")
    assert got == want
    assert elapsed < 1


def test_criterion_2_homomorphic_tally_trace():
    t0 = time.perf_counter()
    scheme = Helios("strong")
    outcome, tr = run_election(scheme, [2, 1, 1], 3, Rng(2))
    sk_rng = Rng(2).spawn(3)[0]
    _, sk, _, _ = scheme.setup("test", sk_rng)
    cols = column_sums(sk.pk.params, list(tr["board"]), 3)
    sums = [decrypt_exp(KeyPair(sk.pk.params, sk.pk.y, sk.sk), c, 3) for c in cols]
    elapsed = time.perf_counter() - t0
    ok = outcome == (2, 1, 0) and sums == [2, 1] and outcome[-1] == 3 - sum(sums) == 0 and tr["verified"] and elapsed < 1
    record_criterion(2, ok, f"outcome {outcome}, column sums {sums}, verified={tr['verified']} in {elapsed:.3f}s")
    print(f"criterion 2: {'PASS' if ok else 'FAIL'}")
    assert outcome == (2, 1, 0)
    assert sums == [2, 1]
    assert outcome[-1] == 0
    assert tr["verified"]
    assert elapsed < 1


def test_criterion_3_randomized_correctness():
    t0 = time.perf_counter()
    wrong, unverified, runs = 0, 0, 0
    for name in ("helios", "helios-mixnet", "enc2vote"):
        schemes = [make_scheme(name, "weak"), make_scheme(name, "strong")]
        for i, r in enumerate(Rng(3000 + len(name)).spawn(1000)):
            scheme = schemes[i % 2]
            nc = r.randrange(1, 6)
            votes = [r.randrange(1, nc + 1) for _ in range(r.randrange(0, 21))]
            outcome, tr = run_election(scheme, votes, nc, r.child())
            runs += 1
            wrong += outcome != plaintext_count(votes, nc)
            unverified += not tr["verified"]
    elapsed = time.perf_counter() - t0
    ok = wrong == 0 and unverified == 0 and elapsed < 120
    record_criterion(3, ok, f"{runs} elections, {wrong} wrong outcomes, {unverified} rejected, {elapsed:.1f}s")
    print(f"criterion 3: {'PASS' if ok else 'FAIL'}")
    assert wrong == 0
    assert unverified == 0
    assert elapsed < 120


def test_criterion_4_attack_matrix():
    t0 = time.perf_counter()
    results = {}
    perm = make_secrecy_permutation_adversary(3, stealth=False)
    results["secrecy weak"] = s = run_trials(_closure(play_ballot_secrecy, Helios("weak"), perm), 500, 41)
    secrecy_weak = s.rate >= 0.99
    results["secrecy strong"] = s = run_trials(_closure(play_ballot_secrecy, Helios("strong"), perm), 2000, 42)
    secrecy_strong = 0.45 <= s.rate <= 0.55

    forgers = {"helios": HeliosForger, "helios-mixnet": MixnetForger}
    forge_ok = True
    for name, factory in forgers.items():
        for variant, want in (("weak", 200), ("strong", 0)):
            s = run_trials(_soundness(make_scheme(name, variant), factory), 200, 43)
            results[f"forger {name}/{variant}"] = s
            forge_ok &= s.wins == want

    iv_ok = True
    for name in ("helios", "helios-mixnet", "enc2vote"):
        schemes = [make_scheme(name, "weak"), make_scheme(name, "strong")]
        wins = 0
        for i, r in enumerate(Rng(44).spawn(10_000)):
            adv_rng, game_rng = r.spawn(2)
            wins += play_individual_verifiability(schemes[i % 2], HonestKeyIVAdversary(adv_rng), "test", game_rng).won
        results[f"iv {name}"] = wins
        iv_ok &= wins == 0
    elapsed = time.perf_counter() - t0
    ok = secrecy_weak and secrecy_strong and forge_ok and iv_ok and elapsed < 600
    for k, v in results.items():
        print(f"  {k}: {v}")
    record_criterion(
        4, ok,
        f"secrecy weak {results['secrecy weak'].rate:.3f}, strong {results['secrecy strong'].rate:.3f}; "
        f"forgers {'as expected' if forge_ok else 'off'}; IV collisions "
        f"{sum(results[f'iv {n}'] for n in ('helios', 'helios-mixnet', 'enc2vote'))}; {elapsed:.1f}s",
    )
    print(f"criterion 4: {'PASS' if ok else 'FAIL'}")
    assert secrecy_weak, results["secrecy weak"]
    assert secrecy_strong, results["secrecy strong"]
    assert forge_ok, results
    assert iv_ok, results
    assert elapsed < 600


def test_criterion_5_malleability_split():
    t0 = time.perf_counter()
    pa0 = {
        v: run_trials(_closure(play_ind_pa0, make_encryption(v), Pa0MalleationAdversary), 2000, 50 + i)
        for i, v in enumerate(("plain", "nm"))
    }
    cva = {
        v: run_trials(_closure(play_ind_cva, make_scheme("enc2vote", v), CvaMalleationAdversary), 2000, 52 + i)
        for i, v in enumerate(("weak", "strong"))
    }
    elapsed = time.perf_counter() - t0
    ok = (
        pa0["plain"].rate >= 0.99
        and pa0["nm"].contains(0.5)
        and cva["weak"].rate >= 0.99
        and cva["strong"].contains(0.5)
        and elapsed < 300
    )
    record_criterion(
        5, ok,
        f"IND-PA0 plain {pa0['plain'].rate:.3f} nm {pa0['nm']}; IND-CVA plain {cva['weak'].rate:.3f} "
        f"nm {cva['strong']}; {elapsed:.1f}s",
    )
    print(f"criterion 5: {'PASS' if ok else 'FAIL'}")
    assert pa0["plain"].rate >= 0.99
    assert pa0["nm"].contains(0.5), pa0["nm"]
    assert cva["weak"].rate >= 0.99
    assert cva["strong"].contains(0.5), cva["strong"]
    assert elapsed < 300


def _tamper(params, y, cts, outs, proof, mode, rng, i):
    """Outputs that are not a shuffle of cts, with a proof attempt."""
    n = len(outs)
    kind = i % 4
    if kind == 0:  # shift one plaintext, keep the honest proof
        j = rng.randrange(n)
        bad = list(outs)
        bad[j] = hom_combine(params, outs[j], encrypt_exp(params, y, 1, params.random_scalar(rng)))
        return bad, proof
    if kind == 1:  # fresh re-encryption of one output, keep the proof
        j = rng.randrange(n)
        bad = list(outs)
        bad[j] = reencrypt(params, y, outs[j], params.random_scalar(rng, nonzero=True))
        return bad, proof
    if kind == 2:  # replace one output by an encryption of another vote and cheat the proof
        j = rng.randrange(n)
        bad = list(outs)
        bad[j] = encrypt_exp(params, y, 7, params.random_scalar(rng))
        return bad, cheat_shuffle(params, y, cts, bad, len(proof.rounds), rng, mode)
    # drop one input and duplicate another, then cheat the proof
    src = list(cts)
    src[0] = src[-1]
    perm = rng.permutation(n)
    bad = [reencrypt(params, y, src[j], params.random_scalar(rng)) for j in perm]
    return bad, cheat_shuffle(params, y, cts, bad, len(proof.rounds), rng, mode)


def test_criterion_6_shuffle_proof():
    t0 = time.perf_counter()
    params = gen_params("test")
    rng = Rng(60)
    honest_ok = preserved = 0
    for i in range(100):
        sk = params.random_scalar(rng, nonzero=True)
        y = params.gpow(sk)
        ms = [rng.randrange(1, 6) for _ in range(rng.randrange(1, 9))]
        cts = [encrypt_exp(params, y, m, params.random_scalar(rng)) for m in ms]
        outs, proof = mix_and_prove(params, y, cts, 40, rng, FsMode.STRONG)
        honest_ok += verify_mix(params, y, cts, outs, proof, FsMode.STRONG)
        kp = KeyPair(params, y, sk)
        preserved += sorted(decrypt_exp(kp, c, 5) for c in outs) == sorted(ms)
    accepted = 0
    y = params.gpow(params.random_scalar(rng, nonzero=True))
    for i in range(1000):
        cts = [encrypt_exp(params, y, m, params.random_scalar(rng)) for m in (1, 2, 3, 4)]
        outs, proof = mix_and_prove(params, y, cts, 40, rng, FsMode.STRONG)
        bad, bad_proof = _tamper(params, y, cts, outs, proof, FsMode.STRONG, rng, i)
        accepted += verify_mix(params, y, cts, bad, bad_proof, FsMode.STRONG)
    elapsed = time.perf_counter() - t0
    ok = honest_ok == 100 and preserved == 100 and accepted == 0 and elapsed < 180
    record_criterion(
        6, ok, f"honest {honest_ok}/100 verified, multiset kept {preserved}/100, tampered accepted {accepted}/1000, {elapsed:.1f}s"
    )
    print(f"criterion 6: {'PASS' if ok else 'FAIL'}")
    assert honest_ok == 100
    assert preserved == 100
    assert accepted == 0
    assert elapsed < 180


def test_criterion_7_weeding_omits_a_vote():
    t0 = time.perf_counter()
    weeded = run_trials(_soundness(Helios("strong"), CopySoundnessAdversary), 100, 70)
    unweeded = run_trials(_soundness(Helios("weak"), CopySoundnessAdversary), 100, 71)
    elapsed = time.perf_counter() - t0
    ok = weeded.wins == weeded.trials and unweeded.wins == 0 and elapsed < 60
    record_criterion(7, ok, f"weeded {weeded.rate:.2f}, unweeded {unweeded.rate:.2f}, {elapsed:.1f}s")
    print(f"criterion 7: {'PASS' if ok else 'FAIL'}")
    assert weeded.wins == weeded.trials
    assert unweeded.wins == 0
    assert elapsed < 60


def test_criterion_8_forged_transcript_audit(tmp_path):
    t0 = time.perf_counter()
    scheme = Helios("weak")
    claim = HeliosForger(Rng(80)).forge(scheme, "test")
    path = tmp_path / "forged.json"
    make_transcript(scheme, "test", claim.nc, claim.pk, claim.bb, claim.outcome, claim.proof, "").save(path)
    weak = transcript_verify(path, "weak")
    strong = transcript_verify(path, "strong")
    failing = [c.name for c in strong.checks if not c.passed]
    elapsed = time.perf_counter() - t0
    ok = weak.accepted and not strong.accepted and "accepted-set" in failing and elapsed < 5
    record_criterion(8, ok, f"weak {'ACCEPT' if weak.accepted else 'REJECT'}, strong REJECT on {failing}, {elapsed:.2f}s")
    print(f"criterion 8: {'PASS' if ok else 'FAIL'}")
    for line in weak.lines() + strong.lines():
        print(" ", line)
    assert weak.accepted
    assert not strong.accepted
    assert "accepted-set" in failing
    assert elapsed < 5
