"""Exponential ElGamal and two asymmetric encryption schemes built on it.

Messages are small non-negative integers m, encrypted as g^m.  Multiplying
ciphertexts adds plaintexts, and decryption finishes with a small discrete log.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import sigma
from .group import GroupParams, from_hex, gen_params, to_hex
from .rng import Rng

# message space of the generic encryption schemes: [0, MAX_MESSAGE]
MAX_MESSAGE = 1 << 16

NM_CONTEXT = b"nm-elgamal"


class DecryptionError(ValueError):
    """The plaintext element has no discrete log within the given bound."""


@dataclass(frozen=True)
class Ciphertext:
    c1: int
    c2: int

    def to_json(self) -> list[str]:
        return [to_hex(self.c1), to_hex(self.c2)]

    @classmethod
    def from_json(cls, d) -> "Ciphertext":
        c1, c2 = d
        return cls(from_hex(c1), from_hex(c2))

    def valid(self, params: GroupParams) -> bool:
        return params.is_member(self.c1) and params.is_member(self.c2)


IDENTITY = Ciphertext(1, 1)


@dataclass(frozen=True)
class KeyPair:
    params: GroupParams
    pk: int
    sk: int


def keygen(params: GroupParams, rng: Rng) -> KeyPair:
    sk = params.random_scalar(rng, nonzero=True)
    return KeyPair(params, params.gpow(sk), sk)


def encrypt_exp(params: GroupParams, pk: int, m: int, r: int) -> Ciphertext:
    if m < 0:
        raise ValueError("exponent messages are non-negative")
    return Ciphertext(params.gpow(r), params.mul(params.gpow(m), params.pow(pk, r)))


def plaintext_element(params: GroupParams, sk: int, ct: Ciphertext) -> int:
    """g^m = c2 / c1^sk."""
    return params.div(ct.c2, params.pow(ct.c1, sk))


def decrypt_exp(kp: KeyPair, ct: Ciphertext, bound: int) -> int:
    m = kp.params.dlog_small(plaintext_element(kp.params, kp.sk, ct), bound)
    if m is None:
        raise DecryptionError(f"plaintext outside [0, {bound}]")
    return m


def hom_combine(params: GroupParams, *cts: Ciphertext) -> Ciphertext:
    c1 = c2 = 1
    for ct in cts:
        c1 = c1 * ct.c1 % params.p
        c2 = c2 * ct.c2 % params.p
    return Ciphertext(c1, c2)


def reencrypt(params: GroupParams, pk: int, ct: Ciphertext, r: int) -> Ciphertext:
    return hom_combine(params, ct, encrypt_exp(params, pk, 0, r))


# -- asymmetric encryption schemes --------------------------------------------


@dataclass(frozen=True)
class PublicKey:
    params: GroupParams
    y: int


@dataclass(frozen=True)
class NMCiphertext:
    """Ciphertext plus a proof of knowledge of its randomness."""

    ct: Ciphertext
    proof: sigma.Transcript

    def to_json(self) -> dict:
        return {"ct": self.ct.to_json(), "proof": self.proof.to_json()}

    @classmethod
    def from_json(cls, d) -> "NMCiphertext":
        return cls(Ciphertext.from_json(d["ct"]), sigma.Transcript.from_json(d["proof"]))


class AsymmetricScheme:
    """generate / encrypt / decrypt over the message space [0, max_message].

    ``decrypt`` returns None for ciphertexts it refuses (the failure symbol).
    """

    name = "abstract"

    def generate(self, level: str, rng: Rng):
        params = gen_params(level)
        kp = keygen(params, rng)
        return PublicKey(params, kp.pk), kp, self.max_message(params)

    @staticmethod
    def max_message(params: GroupParams) -> int:
        return min(params.q - 1, MAX_MESSAGE)

    def encrypt(self, pk: PublicKey, m: int, rng: Rng):
        raise NotImplementedError

    def decrypt(self, kp: KeyPair, c):
        raise NotImplementedError

    def ciphertext_to_json(self, c):
        return c.to_json()

    def ciphertext_from_json(self, d):
        raise NotImplementedError

    def _open(self, kp: KeyPair, ct: Ciphertext):
        try:
            return decrypt_exp(kp, ct, self.max_message(kp.params))
        except DecryptionError:
            return None


class PlainElGamal(AsymmetricScheme):
    """Bare exponential ElGamal.  Malleable by design."""

    name = "plain"

    def encrypt(self, pk: PublicKey, m: int, rng: Rng) -> Ciphertext:
        params = pk.params
        if not 0 <= m <= self.max_message(params):
            raise ValueError("message outside the message space")
        return encrypt_exp(params, pk.y, m, params.random_scalar(rng))

    def decrypt(self, kp: KeyPair, c):
        if not isinstance(c, Ciphertext) or not c.valid(kp.params):
            return None
        return self._open(kp, c)

    def ciphertext_from_json(self, d):
        return Ciphertext.from_json(d)


class NMElGamal(AsymmetricScheme):
    """ElGamal with a strong Fiat-Shamir Schnorr proof of knowledge of r.

    The proof's hash binds pk, c1 and c2, so a ciphertext cannot be mauled
    without invalidating its proof.  Non-malleability here rests on the random
    oracle heuristic.
    """

    name = "nm"

    def encrypt(self, pk: PublicKey, m: int, rng: Rng) -> NMCiphertext:
        params = pk.params
        if not 0 <= m <= self.max_message(params):
            raise ValueError("message outside the message space")
        r = params.random_scalar(rng)
        ct = encrypt_exp(params, pk.y, m, r)
        proof = sigma.prove_dlog(params, r, sigma.FsMode.STRONG, rng, NM_CONTEXT, (pk.y, ct.c2))
        return NMCiphertext(ct, proof)

    def well_formed(self, pk: PublicKey, c) -> bool:
        if not isinstance(c, NMCiphertext) or not c.ct.valid(pk.params):
            return False
        return sigma.verify_dlog(pk.params, c.ct.c1, c.proof, sigma.FsMode.STRONG, NM_CONTEXT, (pk.y, c.ct.c2))

    def decrypt(self, kp: KeyPair, c):
        if not self.well_formed(PublicKey(kp.params, kp.pk), c):
            return None
        return self._open(kp, c.ct)

    def ciphertext_from_json(self, d):
        return NMCiphertext.from_json(d)


def make_plain_elgamal() -> PlainElGamal:
    return PlainElGamal()


def make_nm_elgamal() -> NMElGamal:
    return NMElGamal()
