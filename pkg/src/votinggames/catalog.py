"""Name-based construction of schemes, used by the CLI and transcripts."""

from __future__ import annotations

from .elgamal import AsymmetricScheme, make_nm_elgamal, make_plain_elgamal
from .helios import Helios
from .mixnet import DEFAULT_ROUNDS, HeliosMixnet
from .scheme import ElectionScheme, enc2vote

SCHEMES = ("helios", "helios-mixnet", "enc2vote")
ALIASES = {"mixnet": "helios-mixnet", "helios-hom": "helios"}
VARIANTS = ("weak", "strong")


def canonical_name(name: str) -> str:
    name = ALIASES.get(name, name)
    if name not in SCHEMES:
        raise ValueError(f"unknown scheme {name!r}; choose from {', '.join(SCHEMES)}")
    return name


def make_scheme(name: str, variant: str = "strong", k: int = DEFAULT_ROUNDS) -> ElectionScheme:
    name = canonical_name(name)
    if variant not in VARIANTS:
        raise ValueError(f"unknown variant {variant!r}")
    if name == "helios":
        return Helios(variant)
    if name == "helios-mixnet":
        return HeliosMixnet(variant, k)
    return enc2vote(variant)


def make_encryption(name: str) -> AsymmetricScheme:
    if name in ("plain", "weak"):
        return make_plain_elgamal()
    if name in ("nm", "strong"):
        return make_nm_elgamal()
    raise ValueError(f"unknown encryption scheme {name!r}")
