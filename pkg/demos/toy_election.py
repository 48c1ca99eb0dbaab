"""Walk through a three-voter Helios election in the 23-element toy group.

Prints every ciphertext so the arithmetic can be checked by hand.

    python3 demos/toy_election.py
"""

from votinggames.elgamal import KeyPair, decrypt_exp, encrypt_exp, hom_combine
from votinggames.group import gen_params
from votinggames.helios import encode_vote

params = gen_params("toy")
kp = KeyPair(params, params.gpow(6), 6)
print(f"p={params.p} g={params.g} sk={kp.sk} pk={kp.pk}")

# single-ciphertext warm-up: m=2 with r=3, then m=1 with r=5
a = encrypt_exp(params, kp.pk, 2, 3)
b = encrypt_exp(params, kp.pk, 1, 5)
print(f"E(2; 3) = {(a.c1, a.c2)}   E(1; 5) = {(b.c1, b.c2)}")
ab = hom_combine(params, a, b)
print(f"product = {(ab.c1, ab.c2)} decrypts to {decrypt_exp(kp, ab, 3)}")

# three voters, candidates 1..3; the last column is implied
votes, coins = [2, 1, 1], [(3, 7), (5, 2), (9, 4)]
ballots = []
for v, rs in zip(votes, coins):
    bits = encode_vote(v, 3)
    cts = [encrypt_exp(params, kp.pk, m, r) for m, r in zip(bits, rs)]
    ballots.append(cts)
    print(f"vote {v}: bits {bits} -> {[(c.c1, c.c2) for c in cts]}")

sums = [decrypt_exp(kp, hom_combine(params, *(bl[j] for bl in ballots)), len(votes)) for j in range(2)]
print(f"columns decrypt to {sums}; outcome {tuple(sums) + (len(votes) - sum(sums),)}")
