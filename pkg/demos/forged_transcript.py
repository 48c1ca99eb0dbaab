"""Forge a Helios election transcript against weak Fiat-Shamir and audit it
under both verifiers.

The forger runs the election itself, so it holds the key.  Its single
ballot encrypts 2 yet carries 0-or-1 proofs, and the decryption proof is
built after the challenge is known.  The weak verifier accepts; the strong
one recomputes challenges over the statements and rejects.

    python3 demos/forged_transcript.py [out.json]
"""

import sys

from votinggames.adversaries import HeliosForger
from votinggames.board import make_transcript, transcript_verify
from votinggames.catalog import make_scheme
from votinggames.rng import Rng

path = sys.argv[1] if len(sys.argv) > 1 else "forged-transcript.json"
scheme = make_scheme("helios", "weak")
claim = HeliosForger(Rng(7)).forge(scheme, "test")
make_transcript(scheme, "test", claim.nc, claim.pk, claim.bb, claim.outcome, claim.proof, "").save(path)
print(f"claimed outcome {list(claim.outcome)} from {len(claim.bb)} ballot(s), written to {path}\n")

for variant in ("weak", "strong"):
    for line in transcript_verify(path, variant).lines():
        print(line)
    print()
