"""Sigma protocols made non-interactive with Fiat-Shamir.

Three proof kinds are supported:

* ``dlog``: knowledge of x with y = g^x (Schnorr);
* ``eq``: equality of discrete logs, log_g pk = log_c1 (c2 / M), used to show a
  claimed plaintext element M is the decryption of (c1, c2);
* ``or``: a ciphertext encrypts g^0 or g^1 (disjunction of two equality proofs).

The challenge comes from ``fs_challenge``.  In strong mode it hashes the
statement together with the commitments.  In weak mode it hashes the
commitments only, which is exactly the gap the forgeries in ``adversaries``
walk through.

All ``verify_*`` functions return a bool and never raise.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum

import gmpy2

from .group import GroupParams, derive_weights, from_hex, to_hex
from .rng import Rng

TAG_DLOG = 0x01
TAG_EQ = 0x02
TAG_OR = 0x03

ARITY = {"dlog": (1, 1, 0), "eq": (2, 1, 0), "or": (4, 2, 2)}


class FsMode(str, Enum):
    STRONG = "strong"
    WEAK = "weak"

    @classmethod
    def of(cls, x) -> "FsMode":
        return x if isinstance(x, cls) else cls(str(x))


@dataclass(frozen=True)
class Transcript:
    kind: str
    commitments: tuple[int, ...]
    challenge: int
    responses: tuple[int, ...]
    sub_challenges: tuple[int, ...] = ()

    def to_json(self) -> dict:
        return {
            "kind": self.kind,
            "commitments": [to_hex(x) for x in self.commitments],
            "challenge": to_hex(self.challenge),
            "responses": [to_hex(x) for x in self.responses],
            "sub_challenges": [to_hex(x) for x in self.sub_challenges],
        }

    @classmethod
    def from_json(cls, d: dict) -> "Transcript":
        kind = d["kind"]
        if kind not in ARITY:
            raise ValueError(f"unknown proof kind {kind!r}")
        return cls(
            kind,
            tuple(from_hex(x) for x in d["commitments"]),
            from_hex(d["challenge"]),
            tuple(from_hex(x) for x in d["responses"]),
            tuple(from_hex(x) for x in d.get("sub_challenges", [])),
        )

    def well_shaped(self, params: GroupParams) -> bool:
        nt, nz, ns = ARITY.get(self.kind, (-1, -1, -1))
        return (
            len(self.commitments) == nt
            and len(self.responses) == nz
            and len(self.sub_challenges) == ns
            and all(params.is_member(t) for t in self.commitments)
            and params.is_scalar(self.challenge)
            and all(params.is_scalar(z) for z in self.responses + self.sub_challenges)
        )


@dataclass(frozen=True)
class DlogStatement:
    y: int

    def fields(self, params):
        return (params.g, self.y)


@dataclass(frozen=True)
class EqStatement:
    """pk = g^sk and c2 / m = c1^sk, where m is the claimed plaintext element."""

    pk: int
    c1: int
    m: int
    c2: int

    def fields(self, params):
        return (params.g, self.pk, self.c1, self.m, self.c2)

    def bases(self, params):
        return params.g, self.pk, self.c1, params.div(self.c2, self.m)


@dataclass(frozen=True)
class OrStatement:
    """(c1, c2) encrypts g^0 or g^1 under pk."""

    pk: int
    c1: int
    c2: int
    binding: tuple = field(default=())

    def fields(self, params):
        return (params.g, self.pk, self.c1, self.c2) + tuple(self.binding)

    def branch(self, params, i: int):
        # log_g c1 = log_pk (c2 / g^i), witness r
        return params.g, self.c1, self.pk, params.div(self.c2, params.gpow(i))


def fs_challenge(params: GroupParams, mode, tag: int, statement_fields, commitments, context: bytes = b"") -> int:
    if FsMode.of(mode) is FsMode.STRONG:
        return params.hash_to_scalar(tag, context, *statement_fields, *commitments)
    return params.hash_to_scalar(tag, context, *commitments)


# -- the Chaum-Pedersen core --------------------------------------------------
# b1^z = t1 * y1^c  and  b2^z = t2 * y2^c


def _cp_holds(params, b1, y1, b2, y2, t1, t2, c, z) -> bool:
    return (
        params.pow(b1, z) == params.mul(t1, params.pow(y1, c))
        and params.pow(b2, z) == params.mul(t2, params.pow(y2, c))
    )


def _cp_simulate(params, b1, y1, b2, y2, c, z):
    t1 = params.div(params.pow(b1, z), params.pow(y1, c))
    t2 = params.div(params.pow(b2, z), params.pow(y2, c))
    return t1, t2


# -- Schnorr ------------------------------------------------------------------


def prove_dlog(params: GroupParams, x: int, mode, rng: Rng, context: bytes = b"", binding=()) -> Transcript:
    y = params.gpow(x)
    w = params.random_scalar(rng)
    t = params.gpow(w)
    c = fs_challenge(params, mode, TAG_DLOG, DlogStatement(y).fields(params) + tuple(binding), (t,), context)
    return Transcript("dlog", (t,), c, ((w + c * x) % params.q,))


def verify_dlog(params: GroupParams, y: int, tr: Transcript, mode, context: bytes = b"", binding=()) -> bool:
    try:
        if tr.kind != "dlog" or not tr.well_shaped(params) or not params.is_member(y):
            return False
        (t,), (z,) = tr.commitments, tr.responses
        c = fs_challenge(params, mode, TAG_DLOG, DlogStatement(y).fields(params) + tuple(binding), (t,), context)
        return c == tr.challenge and params.gpow(z) == params.mul(t, params.pow(y, c))
    except Exception:
        return False


def extract_dlog(params: GroupParams, a: Transcript, b: Transcript) -> int:
    """Special soundness: the witness from two transcripts sharing a commitment."""
    if a.commitments != b.commitments or a.challenge == b.challenge:
        raise ValueError("need equal commitments and distinct challenges")
    dz = (a.responses[0] - b.responses[0]) % params.q
    return dz * params.sinv((a.challenge - b.challenge) % params.q) % params.q


# -- equality of discrete logs (decryption proofs) ----------------------------


def prove_eq(params: GroupParams, sk: int, st: EqStatement, mode, rng: Rng, context: bytes = b"") -> Transcript:
    b1, _, b2, _ = st.bases(params)
    w = params.random_scalar(rng)
    t1, t2 = params.pow(b1, w), params.pow(b2, w)
    c = fs_challenge(params, mode, TAG_EQ, st.fields(params), (t1, t2), context)
    return Transcript("eq", (t1, t2), c, ((w + c * sk) % params.q,))


def eq_equations_hold(params: GroupParams, st: EqStatement, tr: Transcript) -> bool:
    """Only the two algebraic checks; the challenge is taken as given."""
    try:
        if tr.kind != "eq" or not tr.well_shaped(params):
            return False
        return _cp_holds(params, *st.bases(params), *tr.commitments, tr.challenge, tr.responses[0])
    except Exception:
        return False


def verify_eq(params: GroupParams, st: EqStatement, tr: Transcript, mode, context: bytes = b"") -> bool:
    try:
        if not all(params.is_member(x) for x in (st.pk, st.c1, st.m, st.c2)):
            return False
        if not eq_equations_hold(params, st, tr):
            return False
        return tr.challenge == fs_challenge(params, mode, TAG_EQ, st.fields(params), tr.commitments, context)
    except Exception:
        return False


def simulate_eq(params: GroupParams, st: EqStatement, challenge: int, rng: Rng) -> Transcript:
    """Transcript for ``challenge`` that satisfies both equations, true or not."""
    z = params.random_scalar(rng)
    t1, t2 = _cp_simulate(params, *st.bases(params), challenge, z)
    return Transcript("eq", (t1, t2), challenge % params.q, (z,))


# -- disjunctive proof: ciphertext encrypts 0 or 1 ----------------------------


def or_commitments_for(params, st: OrStatement, real: int, w: int, c_sim: int, z_sim: int, r: int | None = None):
    """The four commitments (a0, b0, a1, b1) with branch ``real`` honest.

    Given the witness r the simulated branch is computed with the fixed
    bases g and pk only: a = g^(z - r*c) and b = pk^(z - r*c) * g^(-(real - j)*c)
    are the simulator's values whenever (c1, c2) encrypts g^real with r.
    """
    q = params.q
    coms = [None, None]
    coms[real] = (params.gpow(w), params.pow(st.pk, w))
    j = 1 - real
    if r is None:
        coms[j] = _cp_simulate(params, *st.branch(params, j), c_sim, z_sim)
    else:
        e = (z_sim - r * c_sim) % q
        coms[j] = (params.gpow(e), params.mul(params.pow(st.pk, e), params.gpow(-(real - j) * c_sim % q)))
    return coms[0] + coms[1]


def prove_or_branch(params, st: OrStatement, real: int, r: int, mode, rng: Rng, context: bytes = b"") -> Transcript:
    """Run the OR prover treating branch ``real`` as the true one.

    Coins are drawn in the fixed order (w, c_sim, z_sim).  If the ciphertext
    does not encrypt g^real the output will not verify.
    """
    if real not in (0, 1):
        raise ValueError("branch must be 0 or 1")
    q = params.q
    w = params.random_scalar(rng)
    c_sim = params.random_scalar(rng)
    z_sim = params.random_scalar(rng)
    coms = or_commitments_for(params, st, real, w, c_sim, z_sim, r)
    c = fs_challenge(params, mode, TAG_OR, st.fields(params), coms, context)
    c_real = (c - c_sim) % q
    z_real = (w + c_real * r) % q
    subs = [0, 0]
    zs = [0, 0]
    subs[real], subs[1 - real] = c_real, c_sim
    zs[real], zs[1 - real] = z_real, z_sim
    return Transcript("or", tuple(coms), c, tuple(zs), tuple(subs))


def prove_or(params, pk, c1, c2, bit: int, r: int, mode, rng: Rng, context: bytes = b"", binding=()) -> Transcript:
    if bit not in (0, 1):
        raise ValueError("the disjunctive proof covers plaintexts 0 and 1 only")
    return prove_or_branch(params, OrStatement(pk, c1, c2, tuple(binding)), bit, r, mode, rng, context)


def or_equations_hold(params, st: OrStatement, tr: Transcript) -> bool:
    try:
        if tr.kind != "or" or not tr.well_shaped(params):
            return False
        a0, b0, a1, b1 = tr.commitments
        (c0, c1), (z0, z1) = tr.sub_challenges, tr.responses
        return (
            (c0 + c1) % params.q == tr.challenge
            and _cp_holds(params, *st.branch(params, 0), a0, b0, c0, z0)
            and _cp_holds(params, *st.branch(params, 1), a1, b1, c1, z1)
        )
    except Exception:
        return False


def verify_or(params, pk, c1, c2, tr: Transcript, mode, context: bytes = b"", binding=()) -> bool:
    try:
        if not all(params.is_member(x) for x in (pk, c1, c2)):
            return False
        st = OrStatement(pk, c1, c2, tuple(binding))
        if tr.kind != "or" or not tr.well_shaped(params):
            return False
        if tr.challenge != fs_challenge(params, mode, TAG_OR, st.fields(params), tr.commitments, context):
            return False
        return or_equations_hold(params, st, tr)
    except Exception:
        return False


@dataclass(frozen=True)
class _Pair:
    c1: int
    c2: int


def verify_or_batch(params, items, mode, context: bytes = b"") -> bool:
    """Verify several OR proofs at once.

    ``items`` holds (statement, transcript, parts) triples.  ``parts`` is an
    optional list of ciphertexts, already checked to be group members, whose
    product is the statement's ciphertext; when given, the exponentiations land on the parts and merge
    with the other proofs over them.  Challenges are checked exactly.  The
    group equations are combined with hashed 64-bit weights into a single
    product check, which a false equation passes with probability about
    2^-64.
    """
    try:
        items = list(items)
        fields = []
        for st, tr, parts in items:
            if not all(params.is_member(x) for x in (st.pk, st.c1, st.c2)):
                return False
            if tr.kind != "or" or not tr.well_shaped(params):
                return False
            if tr.challenge != fs_challenge(params, mode, TAG_OR, st.fields(params), tr.commitments, context):
                return False
            if (tr.sub_challenges[0] + tr.sub_challenges[1]) % params.q != tr.challenge:
                return False
            fields += [st.pk, st.c1, st.c2, *tr.commitments, *tr.responses, *tr.sub_challenges]
        weights = iter(derive_weights(TAG_OR, b"batch", 4 * len(items), *fields))
        q = params.q
        lhs: dict[int, int] = {}  # fixed bases g and pk
        rhs: dict[int, int] = {}  # full-size exponents on ciphertext parts
        short = []  # (commitment, weight)
        g_exp = 0
        for st, tr, parts in items:
            pk_exp = 0
            c1_exp = c2_exp = 0
            for i in (0, 1):
                alpha, beta = next(weights), next(weights)
                a, b = tr.commitments[2 * i], tr.commitments[2 * i + 1]
                c, z = tr.sub_challenges[i], tr.responses[i]
                # g^z = a * c1^c  and  pk^z * g^(i*c) = b * c2^c
                g_exp += alpha * z + beta * i * c
                pk_exp += beta * z
                c1_exp += alpha * c
                c2_exp += beta * c
                short += [(a, alpha), (b, beta)]
            lhs[st.pk] = lhs.get(st.pk, 0) + pk_exp
            for ct in parts if parts is not None else [_Pair(st.c1, st.c2)]:
                rhs[ct.c1] = rhs.get(ct.c1, 0) + c1_exp
                rhs[ct.c2] = rhs.get(ct.c2, 0) + c2_exp
        lhs[params.g] = lhs.get(params.g, 0) + g_exp
        left = params.mul(*(params.pow(base, e % q) for base, e in lhs.items()))
        right = params.mul(
            *(params.pow(base, e % q) for base, e in rhs.items()),
            *(int(gmpy2.powmod(t, w, params.p)) for t, w in short),
        )
        return left == right
    except Exception:
        return False

