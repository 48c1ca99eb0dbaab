"""Prime-modulus group arithmetic.

Group elements and scalars are plain Python ints.  ``GroupParams`` carries the
modulus and the working subgroup and exposes the handful of operations every
other module needs.  Exponentiation goes through gmpy2; bases that are used
over and over (the generator, an election's public key) get a fixed-base
table after they have been seen often enough.

Nothing here is constant time.
"""

from __future__ import annotations

import hashlib
import math
import re
import threading
from dataclasses import dataclass
from functools import lru_cache

import gmpy2

from .rng import Rng

LEVELS = ("toy", "test", "production")

# largest bound answered from a precomputed table; baby-step giant-step above
DLOG_TABLE_LIMIT = 1 << 20

# 512-bit safe prime produced by generate_safe_prime(512, Rng(TEST_PRIME_SEED))
TEST_PRIME_SEED = 20261016
TEST_P = int(
    "c877a7d11ce85dbb428d57074282d24842c662fdad01d60a431f7097ea511147"
    "91695c2802c0e7abd32bca8076de3f827466ae1b0476ef5ddf24f56013f356bf",
    16,
)

# RFC 3526 group 14 (2048-bit MODP), generator 2
RFC3526_P = int(
    "FFFFFFFFFFFFFFFFC90FDAA22168C234C4C6628B80DC1CD129024E088A67CC74"
    "020BBEA63B139B22514A08798E3404DDEF9519B3CD3A431B302B0A6DF25F1437"
    "4FE1356D6D51C245E485B576625E7EC6F44C42E9A637ED6B0BFF5CB6F406B7ED"
    "EE386BFB5A899FA5AE9F24117C4B1FE649286651ECE45B3DC2007CB8A163BF05"
    "98DA48361C55D39A69163FA8FD24CF5F83655D23DCA3AD961C62F356208552BB"
    "9ED529077096966D670C354E4ABC9804F1746C08CA18217C32905E462E36CE3B"
    "E39E772C180E86039B2783A2EC07A28FB5C55DF06F4C52C9DE2BCBF695581718"
    "3995497CEA956AE515D2261898FA051015728E5A8AACAA68FFFFFFFFFFFFFFFF",
    16,
)


class GroupGenerationError(Exception):
    pass


class InvalidParams(ValueError):
    pass


# -- hex convention -----------------------------------------------------------

_HEX = re.compile(r"^(0|[1-9a-f][0-9a-f]*)$")


def to_hex(x: int) -> str:
    if x < 0:
        raise ValueError("negative integers have no hex encoding here")
    return format(x, "x")


def from_hex(s: str) -> int:
    if not isinstance(s, str) or not _HEX.match(s):
        raise ValueError(f"not a canonical lowercase hex integer: {s!r}")
    return int(s, 16)


# -- fixed-base exponentiation cache ------------------------------------------


class _FixedBaseCache:
    """Byte-window tables for bases that keep coming back.

    A table costs about as much as 90 plain exponentiations to build and makes
    each later one roughly four times cheaper, so a base only gets one after
    ``threshold`` uses.  Both the table store and the use counter are bounded.
    """

    def __init__(self, threshold=64, max_tables=24, max_counted=8192, max_bits=1024):
        self.threshold = threshold
        self.max_tables = max_tables
        self.max_counted = max_counted
        self.max_bits = max_bits
        self._tables: dict[tuple[int, int], list] = {}
        self._uses: dict[tuple[int, int], int] = {}
        self._lock = threading.Lock()

    def lookup(self, p: int, q: int, base: int):
        key = (p, base)
        table = self._tables.get(key)
        if table is not None or p.bit_length() > self.max_bits:
            return table
        with self._lock:
            n = self._uses.get(key, 0) + 1
            if n < self.threshold:
                if len(self._uses) >= self.max_counted:
                    self._uses.clear()
                self._uses[key] = n
                return None
            self._uses.pop(key, None)
        table = _build_table(p, q, base)
        with self._lock:
            if len(self._tables) >= self.max_tables:
                self._tables.pop(next(iter(self._tables)))
            self._tables[key] = table
        return table

    def prepare(self, p: int, q: int, base: int):
        """Build the table for ``base`` now, for callers that know a long run
        of exponentiations with it is coming."""
        key = (p, base)
        if key in self._tables or p.bit_length() > self.max_bits:
            return
        table = _build_table(p, q, base)
        with self._lock:
            if len(self._tables) >= self.max_tables:
                self._tables.pop(next(iter(self._tables)))
            self._tables[key] = table

    def clear(self):
        with self._lock:
            self._tables.clear()
            self._uses.clear()


def _build_table(p: int, q: int, base: int) -> list:
    nbytes = (q.bit_length() + 7) // 8
    mp, b = gmpy2.mpz(p), gmpy2.mpz(base)
    rows = []
    for _ in range(nbytes):
        row = [gmpy2.mpz(1)]
        for _ in range(255):
            row.append(row[-1] * b % mp)
        rows.append(row)
        b = row[-1] * b % mp
    return rows


def _table_pow(table: list, p, e: int) -> int:
    acc = gmpy2.mpz(1)
    for row, byte in zip(table, e.to_bytes(len(table), "little")):
        if byte:
            acc = acc * row[byte] % p
    return int(acc)


FIXED_BASE = _FixedBaseCache()


@lru_cache(maxsize=64)
def _mpz(n: int):
    return gmpy2.mpz(n)


# -- the group ----------------------------------------------------------------


@dataclass(frozen=True)
class GroupParams:
    p: int
    q: int
    g: int
    level: str = "custom"

    @property
    def safe_prime(self) -> bool:
        return self.q == (self.p - 1) // 2

    @property
    def scalar_bytes(self) -> int:
        return (self.q.bit_length() + 7) // 8

    def validate(self) -> "GroupParams":
        p, q, g = self.p, self.q, self.g
        if not gmpy2.is_prime(p, 30):
            raise InvalidParams("p is not prime")
        if q <= 1 or (p - 1) % q:
            raise InvalidParams("q does not divide p - 1")
        if not 1 < g < p or pow(g, q, p) != 1:
            raise InvalidParams("g does not generate a subgroup of order q")
        if self.level in ("test", "production") and not (self.safe_prime and gmpy2.is_prime(q, 30)):
            raise InvalidParams(f"{self.level} level requires a safe prime")
        return self

    # arithmetic

    def pow(self, base: int, e: int) -> int:
        e %= self.q
        table = FIXED_BASE.lookup(self.p, self.q, base)
        if table is not None:
            return _table_pow(table, _mpz(self.p), e)
        return int(gmpy2.powmod(base, e, self.p))

    def precompute(self, base: int):
        FIXED_BASE.prepare(self.p, self.q, base)

    def gpow(self, e: int) -> int:
        return self.pow(self.g, e)

    def mul(self, *xs: int) -> int:
        acc = 1
        for x in xs:
            acc = acc * x % self.p
        return acc

    def inv(self, x: int) -> int:
        return int(gmpy2.invert(x, self.p))

    def div(self, x: int, y: int) -> int:
        return x * self.inv(y) % self.p

    def is_member(self, x) -> bool:
        if not isinstance(x, int) or isinstance(x, bool) or not 1 <= x < self.p:
            return False
        if self.safe_prime and self.q > 2:
            # the order-q subgroup of a safe-prime group is the quadratic residues
            return gmpy2.jacobi(x, self.p) == 1
        if gmpy2.is_prime(self.q):
            return pow(x, self.q, self.p) == 1
        return True

    def is_scalar(self, x) -> bool:
        return isinstance(x, int) and not isinstance(x, bool) and 0 <= x < self.q

    # scalar arithmetic mod q

    def sinv(self, x: int) -> int:
        """Inverse mod q; raises ZeroDivisionError when none exists."""
        return int(gmpy2.invert(x, self.q))

    def random_scalar(self, rng: Rng, nonzero: bool = False) -> int:
        return rng.randrange(1 if nonzero else 0, self.q)

    def hash_to_scalar(self, tag: int, *fields) -> int:
        return hash_to_int(tag, *fields) % self.q

    # small discrete logarithms

    def dlog_small(self, x: int, bound: int) -> int | None:
        """Smallest t in [0, bound] with g^t = x, or None."""
        if bound < 0:
            raise ValueError("bound must be non-negative")
        if bound <= DLOG_TABLE_LIMIT:
            t = _dlog_table(self.p, self.g, bound).get(x)
            return t if t is not None and t <= bound else None
        return _bsgs(self, x, bound)


def encode_fields(tag: int, *fields) -> bytes:
    """Tag byte, then each field as a 4-byte big-endian length and its bytes.

    Integers are written as big-endian magnitudes (zero is the empty string);
    byte strings are written as they are.
    """
    if not 0 <= tag < 256:
        raise ValueError("domain tag must fit in one byte")
    out = bytearray([tag])
    for f in fields:
        if isinstance(f, (bytes, bytearray)):
            raw = bytes(f)
        elif isinstance(f, str):
            raw = f.encode()
        else:
            f = int(f)
            if f < 0:
                raise ValueError("cannot encode a negative field")
            raw = f.to_bytes((f.bit_length() + 7) // 8, "big")
        out += len(raw).to_bytes(4, "big") + raw
    return bytes(out)


def hash_to_int(tag: int, *fields) -> int:
    return int.from_bytes(hashlib.sha256(encode_fields(tag, *fields)).digest(), "big")


def derive_weights(tag: int, label: bytes, count: int, *fields, bits: int = 64) -> list[int]:
    """``count`` pseudorandom ``bits``-bit integers bound to ``fields``.

    Used as the random weights of small-exponent batch verification.
    """
    seed = hash_to_int(tag, label, *fields)
    per_block = 256 // bits
    mask = (1 << bits) - 1
    out, block = [], 0
    while len(out) < count:
        h = hash_to_int(tag, seed, block)
        out.extend((h >> (bits * i)) & mask for i in range(per_block))
        block += 1
    return out[:count]


class _DlogTable:
    """Growable map g^t -> t, holding every t in [0, reach]."""

    def __init__(self, p: int, g: int):
        self.p, self.g = p, g
        self.map: dict[int, int] = {1: 0}
        self.reach = 0
        self._last = 1

    def grow_to(self, bound: int):
        p, g, x = self.p, self.g, self._last
        for t in range(self.reach + 1, bound + 1):
            x = x * g % p
            # setdefault keeps the smallest exponent once a small group wraps
            self.map.setdefault(x, t)
        self._last, self.reach = x, max(self.reach, bound)

    def get(self, x):
        return self.map.get(x)


_dlog_tables: dict[tuple[int, int], _DlogTable] = {}
_dlog_lock = threading.Lock()


def _dlog_table(p: int, g: int, bound: int) -> _DlogTable:
    with _dlog_lock:
        tab = _dlog_tables.get((p, g))
        if tab is None:
            tab = _dlog_tables[(p, g)] = _DlogTable(p, g)
        if tab.reach < bound:
            tab.grow_to(bound)
        return tab


def _bsgs(params: GroupParams, x: int, bound: int) -> int | None:
    p = params.p
    m = math.isqrt(bound) + 1
    baby = {}
    e = 1
    for j in range(m):
        baby.setdefault(e, j)
        e = e * params.g % p
    step = params.inv(params.gpow(m))
    y = x % p
    for i in range(m + 1):
        j = baby.get(y)
        if j is not None and i * m + j <= bound:
            return i * m + j
        y = y * step % p
    return None


# -- parameter generation -----------------------------------------------------

_SMALL_PRIMES = [n for n in range(3, 2000) if all(n % d for d in range(2, math.isqrt(n) + 1))]


def generate_safe_prime(bits: int, rng: Rng, max_tries: int = 1_000_000) -> int:
    """Random safe prime p = 2q + 1 with exactly ``bits`` bits."""
    if bits < 8:
        raise ValueError("too few bits for a safe prime search")
    for _ in range(max_tries):
        q = rng.randrange(1 << (bits - 2), 1 << (bits - 1)) | 1
        p = 2 * q + 1
        if any(q % s == 0 or p % s == 0 for s in _SMALL_PRIMES if s < q):
            continue
        if gmpy2.is_prime(q, 30) and gmpy2.is_prime(p, 30):
            return p
    raise GroupGenerationError(f"no {bits}-bit safe prime after {max_tries} candidates")


def generate_group(bits: int, rng: Rng, max_tries: int = 1_000_000) -> GroupParams:
    p = generate_safe_prime(bits, rng, max_tries)
    # 4 = 2^2 is a quadratic residue, hence of order q whenever p > 5
    return GroupParams(p, (p - 1) // 2, 4, "custom")


@lru_cache(maxsize=None)
def gen_params(level: str) -> GroupParams:
    if level == "toy":
        return GroupParams(23, 22, 5, "toy")
    if level == "test":
        return GroupParams(TEST_P, (TEST_P - 1) // 2, 4, "test")
    if level == "production":
        return GroupParams(RFC3526_P, (RFC3526_P - 1) // 2, 2, "production")
    raise ValueError(f"unknown level {level!r}; expected one of {LEVELS}")
