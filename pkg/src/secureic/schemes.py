"""One-shot encoder/decoder constructions for the deterministic channel.

A scheme places, per transmitter, message bits and jamming bits on distinct
input levels (every other level is zero). Receiver k recovers its message as
fixed XOR combinations of its output levels. Two constructions are provided:

* ``wocj_scheme``: data on the least significant levels that the unintended
  receiver never sees; no jamming.
* ``cj_scheme``: symmetric cooperative-jamming layouts for interference
  ratios in (2/3, 1) and (1, 2).
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

from .detchannel import BitWord, DetChannelParams, channel_output_many

# exhaustive placement search is only attempted up to this width
SEARCH_MAX_Q = 8
# construction-time enumeration audit is run up to this many input bits
AUDIT_AT_BUILD_MAX_BITS = 12


class LengthMismatch(ValueError):
    """Message or jam tuple length does not match the scheme."""


class UnsupportedParameters(ValueError):
    """No cooperative-jamming layout is available for the requested (md, mc)."""


class InvalidScheme(ValueError):
    """Layout or read map violates the scheme invariants."""


@dataclass(frozen=True, order=True)
class BitRole:
    kind: str  # "zero" | "msg" | "jam"
    user: int = 0
    index: int = 0

    def __post_init__(self) -> None:
        if self.kind == "zero":
            if self.user or self.index:
                raise ValueError("zero role carries no user/index")
        elif self.kind in ("msg", "jam"):
            if self.user not in (1, 2) or self.index < 1:
                raise ValueError(f"bad role {self.kind}({self.user}, {self.index})")
        else:
            raise ValueError(f"unknown role kind {self.kind!r}")

    @classmethod
    def message(cls, user: int, index: int) -> "BitRole":
        return cls("msg", user, index)

    @classmethod
    def jam(cls, user: int, index: int) -> "BitRole":
        return cls("jam", user, index)

    @classmethod
    def parse(cls, text: str) -> "BitRole":
        if text == "0":
            return ZERO
        kind = {"m": "msg", "j": "jam"}.get(text[:1])
        if kind is None:
            raise ValueError(f"cannot parse role {text!r}")
        user, index = text[1:].split(".")
        return cls(kind, int(user), int(index))

    def __str__(self) -> str:
        if self.kind == "zero":
            return "0"
        return f"{self.kind[0]}{self.user}.{self.index}"


ZERO = BitRole("zero")

ReadMap = tuple[tuple[int, ...], ...]


@dataclass(frozen=True)
class OneShotScheme:
    """Bit layouts for both transmitters plus the receivers' XOR read maps.

    ``read_map{k}[i]`` lists the 1-based output positions of y_k whose XOR
    equals message bit i+1 of user k. A single position is a plain read; more
    than one position encodes a cancellation step.
    """

    params: DetChannelParams
    layout1: tuple[BitRole, ...]
    layout2: tuple[BitRole, ...]
    msg_bits1: int
    msg_bits2: int
    jam_bits1: int
    jam_bits2: int
    read_map1: ReadMap
    read_map2: ReadMap
    name: str = "custom"

    def __post_init__(self) -> None:
        q = self.params.q
        for k in (1, 2):
            layout = self.layout(k)
            if len(layout) != q:
                raise InvalidScheme(f"layout{k} has {len(layout)} entries, q={q}")
            for kind, count in (("msg", self.msg_bits(k)), ("jam", self.jam_bits(k))):
                found = sorted(r.index for r in layout if r.kind == kind)
                if any(r.user != k for r in layout if r.kind == kind):
                    raise InvalidScheme(f"layout{k} carries another user's {kind} bit")
                if found != list(range(1, count + 1)):
                    raise InvalidScheme(f"layout{k} {kind} indices {found} != 1..{count}")
            rm = self.read_map(k)
            if len(rm) != self.msg_bits(k):
                raise InvalidScheme(f"read_map{k} has {len(rm)} entries, expected {self.msg_bits(k)}")
            for positions in rm:
                if not positions or any(not 1 <= j <= q for j in positions):
                    raise InvalidScheme(f"read_map{k} references positions outside 1..{q}")

    def layout(self, user: int) -> tuple[BitRole, ...]:
        return self.layout1 if user == 1 else self.layout2

    def msg_bits(self, user: int) -> int:
        return self.msg_bits1 if user == 1 else self.msg_bits2

    def jam_bits(self, user: int) -> int:
        return self.jam_bits1 if user == 1 else self.jam_bits2

    def read_map(self, user: int) -> ReadMap:
        return self.read_map1 if user == 1 else self.read_map2

    @property
    def rates(self) -> tuple[int, int]:
        return self.msg_bits1, self.msg_bits2

    @property
    def sum_rate(self) -> int:
        return self.msg_bits1 + self.msg_bits2

    @property
    def total_input_bits(self) -> int:
        return self.msg_bits1 + self.msg_bits2 + self.jam_bits1 + self.jam_bits2

    def positions(self, user: int, kind: str) -> tuple[int, ...]:
        """1-based input positions of the user's `kind` bits, ordered by bit index."""
        pairs = sorted((r.index, pos) for pos, r in enumerate(self.layout(user), 1) if r.kind == kind)
        return tuple(pos for _, pos in pairs)

    def to_dict(self) -> dict:
        return {
            "scheme": self.name,
            "params": self.params.as_dict(),
            "layout1": [str(r) for r in self.layout1],
            "layout2": [str(r) for r in self.layout2],
            "msg_bits1": self.msg_bits1,
            "msg_bits2": self.msg_bits2,
            "jam_bits1": self.jam_bits1,
            "jam_bits2": self.jam_bits2,
            "read_map1": [list(p) for p in self.read_map1],
            "read_map2": [list(p) for p in self.read_map2],
            "rates": list(self.rates),
        }

    def to_json(self, **kwargs) -> str:
        return json.dumps(self.to_dict(), **kwargs)

    @classmethod
    def from_dict(cls, d: dict) -> "OneShotScheme":
        p = d["params"]
        return cls(
            params=DetChannelParams(p["m11"], p["m12"], p["m21"], p["m22"]),
            layout1=tuple(BitRole.parse(s) for s in d["layout1"]),
            layout2=tuple(BitRole.parse(s) for s in d["layout2"]),
            msg_bits1=d["msg_bits1"],
            msg_bits2=d["msg_bits2"],
            jam_bits1=d["jam_bits1"],
            jam_bits2=d["jam_bits2"],
            read_map1=tuple(tuple(x) for x in d["read_map1"]),
            read_map2=tuple(tuple(x) for x in d["read_map2"]),
            name=d.get("scheme", "custom"),
        )

    @classmethod
    def from_json(cls, text: str) -> "OneShotScheme":
        return cls.from_dict(json.loads(text))


# ---------------------------------------------------------------- encode/decode

def _check_len(name: str, bits: Sequence[int], n: int) -> None:
    if len(bits) != n:
        raise LengthMismatch(f"{name} has {len(bits)} bits, scheme expects {n}")


def _place(s: OneShotScheme, user: int, w: Sequence[int], r: Sequence[int]) -> BitWord:
    q = s.params.q
    value = 0
    for pos, role in enumerate(s.layout(user), 1):
        if role.kind == "msg":
            bit = w[role.index - 1]
        elif role.kind == "jam":
            bit = r[role.index - 1]
        else:
            continue
        if bit not in (0, 1):
            raise ValueError(f"bits must be 0 or 1, got {bit!r}")
        value |= int(bit) << (q - pos)
    return BitWord(q, value)


def encode(
    s: OneShotScheme,
    w1: Sequence[int],
    w2: Sequence[int],
    r1: Sequence[int] = (),
    r2: Sequence[int] = (),
) -> tuple[BitWord, BitWord]:
    """Substitute message and jam bits into the layouts; Zero levels stay 0."""
    _check_len("w1", w1, s.msg_bits1)
    _check_len("w2", w2, s.msg_bits2)
    _check_len("r1", r1, s.jam_bits1)
    _check_len("r2", r2, s.jam_bits2)
    return _place(s, 1, w1, r1), _place(s, 2, w2, r2)


def decode(s: OneShotScheme, y: BitWord, receiver: int) -> tuple[int, ...]:
    if y.width != s.params.q:
        raise ValueError(f"output width {y.width} != q={s.params.q}")
    out = []
    for positions in s.read_map(receiver):
        bit = 0
        for j in positions:
            bit ^= y.bit(j)
        out.append(bit)
    return tuple(out)


def encode_many(s: OneShotScheme, user: int, w: np.ndarray, r: np.ndarray) -> np.ndarray:
    """Vectorised encoder. `w` and `r` hold packed tuples, bit 1 in the MSB."""
    q = s.params.q
    w = np.asarray(w, dtype=np.uint64)
    r = np.asarray(r, dtype=np.uint64)
    x = np.zeros(np.broadcast(w, r).shape, dtype=np.uint64)
    nw, nr = s.msg_bits(user), s.jam_bits(user)
    for pos, role in enumerate(s.layout(user), 1):
        if role.kind == "zero":
            continue
        src, n = (w, nw) if role.kind == "msg" else (r, nr)
        bit = (src >> np.uint64(n - role.index)) & np.uint64(1)
        x |= bit << np.uint64(q - pos)
    return x


def decode_many(s: OneShotScheme, y: np.ndarray, receiver: int) -> np.ndarray:
    q = s.params.q
    y = np.asarray(y, dtype=np.uint64)
    n = s.msg_bits(receiver)
    w = np.zeros_like(y)
    for i, positions in enumerate(s.read_map(receiver), 1):
        bit = np.zeros_like(y)
        for j in positions:
            bit ^= (y >> np.uint64(q - j)) & np.uint64(1)
        w |= bit << np.uint64(n - i)
    return w


def run_many(s: OneShotScheme, w1, w2, r1, r2) -> dict[str, np.ndarray]:
    """Encode, transmit and decode a batch; returns every intermediate word."""
    x1 = encode_many(s, 1, w1, r1)
    x2 = encode_many(s, 2, w2, r2)
    y1 = channel_output_many(s.params, x1, x2, 1)
    y2 = channel_output_many(s.params, x1, x2, 2)
    return {
        "w1": np.asarray(w1, dtype=np.uint64),
        "w2": np.asarray(w2, dtype=np.uint64),
        "x1": x1,
        "x2": x2,
        "y1": y1,
        "y2": y2,
        "w1_hat": decode_many(s, y1, 1),
        "w2_hat": decode_many(s, y2, 2),
    }


# -------------------------------------------------------------- GF(2) algebra
#
# Every output level is a linear form in the independent uniform input bits
# (w1, r1, w2, r2); a form is an int bitmask over those variables.

def _variable_masks(layouts, counts) -> dict[tuple[str, int, int], int]:
    masks = {}
    bit = 0
    for user in (1, 2):
        nmsg, njam = counts[user]
        for kind, n in (("msg", nmsg), ("jam", njam)):
            for i in range(1, n + 1):
                masks[(kind, user, i)] = 1 << bit
                bit += 1
    return masks


def _output_forms(p: DetChannelParams, layouts, masks) -> dict[int, list[int]]:
    q = p.q
    forms = {}
    for receiver in (1, 2):
        a, b = p.strengths(receiver)
        rows = []
        for j in range(1, q + 1):
            f = 0
            for user, shift in ((1, q - a), (2, q - b)):
                pos = j - shift
                if 1 <= pos <= q:
                    role = layouts[user][pos - 1]
                    if role.kind != "zero":
                        f ^= masks[(role.kind, role.user, role.index)]
            rows.append(f)
        forms[receiver] = rows
    return forms


def gf2_rank(vectors) -> int:
    basis: list[int] = []
    for v in vectors:
        for b in basis:
            v = min(v, v ^ b)
        if v:
            basis.append(v)
    return len(basis)


def _solve_combination(rows: Sequence[int], target: int) -> tuple[int, ...] | None:
    """1-based indices of `rows` whose XOR equals `target`, or None."""
    basis: list[tuple[int, int]] = []  # (pivot-reduced vector, combination mask)
    for i, v in enumerate(rows):
        combo = 1 << i
        for b, c in basis:
            if v ^ b < v:
                v, combo = v ^ b, combo ^ c
        if v:
            basis.append((v, combo))
    v, combo = target, 0
    for b, c in basis:
        if v ^ b < v:
            v, combo = v ^ b, combo ^ c
    if v:
        return None
    return tuple(i + 1 for i in range(len(rows)) if combo >> i & 1)


@dataclass(frozen=True)
class AlgebraicCheck:
    """Exact leakage (bits) and decodability from GF(2) ranks."""

    leakage_1to2: int
    leakage_2to1: int
    decodable1: bool
    decodable2: bool

    @property
    def ok(self) -> bool:
        return not self.leakage_1to2 and not self.leakage_2to1 and self.decodable1 and self.decodable2


def _check_layouts(p, layouts, counts) -> AlgebraicCheck:
    masks = _variable_masks(layouts, counts)
    forms = _output_forms(p, layouts, masks)
    wmask = {
        u: sum(m for (kind, user, _), m in masks.items() if kind == "msg" and user == u) for u in (1, 2)
    }

    def info(receiver, user):
        rows = forms[receiver]
        return gf2_rank(rows) - gf2_rank([f & ~wmask[user] for f in rows])

    return AlgebraicCheck(
        leakage_1to2=info(2, 1),
        leakage_2to1=info(1, 2),
        decodable1=info(1, 1) == counts[1][0],
        decodable2=info(2, 2) == counts[2][0],
    )


def algebraic_check(s: OneShotScheme) -> AlgebraicCheck:
    """I(w1;y2), I(w2;y1) and zero-error decodability via rank arguments.

    With uniform independent inputs, I(w;y) = rank(y) - rank(y | w fixed),
    so this is an exact, enumeration-free counterpart of the audit.
    """
    layouts = {1: s.layout1, 2: s.layout2}
    counts = {1: (s.msg_bits1, s.jam_bits1), 2: (s.msg_bits2, s.jam_bits2)}
    return _check_layouts(s.params, layouts, counts)


def _build(p: DetChannelParams, layouts, counts, name: str) -> OneShotScheme:
    masks = _variable_masks(layouts, counts)
    forms = _output_forms(p, layouts, masks)
    read_maps = {}
    for k in (1, 2):
        rm = []
        for i in range(1, counts[k][0] + 1):
            combo = _solve_combination(forms[k], masks[("msg", k, i)])
            if combo is None:
                raise InvalidScheme(f"message bit {i} of user {k} is not recoverable from y{k}")
            rm.append(combo)
        read_maps[k] = tuple(rm)
    return OneShotScheme(
        params=p,
        layout1=tuple(layouts[1]),
        layout2=tuple(layouts[2]),
        msg_bits1=counts[1][0],
        msg_bits2=counts[2][0],
        jam_bits1=counts[1][1],
        jam_bits2=counts[2][1],
        read_map1=read_maps[1],
        read_map2=read_maps[2],
        name=name,
    )


def _layout_from_positions(q: int, user: int, msg_pos: Sequence[int], jam_pos: Sequence[int]):
    """Roles from 0-based positions; bit indices follow significance."""
    layout = [ZERO] * q
    for i, pos in enumerate(sorted(msg_pos), 1):
        layout[pos] = BitRole.message(user, i)
    for j, pos in enumerate(sorted(jam_pos), 1):
        if layout[pos] != ZERO:
            raise InvalidScheme(f"position {pos + 1} assigned twice")
        layout[pos] = BitRole.jam(user, j)
    return layout


# ------------------------------------------------------------------- WoCJ

def wocj_scheme(p: DetChannelParams) -> OneShotScheme:
    """Private data on the (m_kk - m_lk)^+ least significant levels of x_k."""
    q = p.q
    layouts = {}
    counts = {}
    for k, direct, cross in ((1, p.m11, p.m21), (2, p.m22, p.m12)):
        # levels cross+1 .. direct (1-based) reach receiver k but not receiver l
        msg_pos = range(cross, direct)
        layouts[k] = _layout_from_positions(q, k, msg_pos, ())
        counts[k] = (max(direct - cross, 0), 0)
    return _build(p, layouts, counts, "wocj")


# --------------------------------------------------------- cooperative jamming

def cj_regime(md: int, mc: int) -> int:
    """Regime label 1..4 for alpha in (2/3,3/4], (3/4,1), (1,3/2), [3/2,2)."""
    if md <= 0 or mc <= 0:
        raise UnsupportedParameters(f"md and mc must be positive, got ({md}, {mc})")
    a = Fraction(mc, md)
    if Fraction(2, 3) < a <= Fraction(3, 4):
        return 1
    if Fraction(3, 4) < a < 1:
        return 2
    if 1 < a < Fraction(3, 2):
        return 3
    if Fraction(3, 2) <= a < 2:
        return 4
    raise UnsupportedParameters(f"alpha = {a} lies outside (2/3, 1) U (1, 2)")


def cj_role_counts(md: int, mc: int) -> tuple[int, int]:
    """(private, common) message bits per user for the regime of (md, mc)."""
    regime = cj_regime(md, mc)
    if regime == 1:
        return md - mc, 3 * mc - 2 * md
    if regime in (2, 3):
        if mc % 3:
            raise UnsupportedParameters(f"regime needs mc/3 common bits; mc={mc} is not divisible by 3")
        return (md - mc if regime == 2 else 0), mc // 3
    return 0, 2 * md - mc


def _parametric_positions(md: int, mc: int) -> tuple[list[int], list[int]] | None:
    """0-based (message, jam) positions of the symmetric layout, or None.

    Each common bit at level i is masked at the eavesdropper by the partner's
    jam bit on the level that lands on top of it; the jam bits in turn land on
    zero levels at their own receiver.
    """
    regime = cj_regime(md, mc)
    private, common = cj_role_counts(md, mc)
    if regime == 1:
        d = md - mc
        msg = list(range(common)) + list(range(mc, md))
        jam = list(range(d, d + common))
        return msg, jam
    if regime == 2:
        d = md - mc
        if mc % (3 * d):
            return None
        blocks = range(0, mc, 3 * d)
        msg = [b + i for b in blocks for i in range(d)] + list(range(mc, md))
        jam = [b + d + i for b in blocks for i in range(d)]
        return msg, jam
    if regime == 3:
        e = mc - md
        if mc % (3 * e):
            return None
        blocks = range(0, mc, 3 * e)
        msg = [b + e + i for b in blocks for i in range(e)]
        jam = [b + i for b in blocks for i in range(e)]
        return msg, jam
    e = mc - md
    return list(range(e, md)), list(range(common))


def _symmetric_candidate(p, msg, jam) -> tuple[dict, dict]:
    layouts = {k: _layout_from_positions(p.q, k, msg, jam) for k in (1, 2)}
    counts = {k: (len(msg), len(jam)) for k in (1, 2)}
    return layouts, counts


def search_symmetric_layout(md: int, mc: int, msg_bits: int) -> tuple[list[int], list[int]] | None:
    """Exhaustive search over symmetric one-hot placements (q <= SEARCH_MAX_Q)."""
    p = DetChannelParams.symmetric(md, mc)
    q = p.q
    if q > SEARCH_MAX_Q:
        return None
    for njam in range(0, q - msg_bits + 1):
        for msg in itertools.combinations(range(q), msg_bits):
            rest = [i for i in range(q) if i not in msg]
            for jam in itertools.combinations(rest, njam):
                layouts, counts = _symmetric_candidate(p, msg, jam)
                if _check_layouts(p, layouts, counts).ok:
                    return list(msg), list(jam)
    return None


def _validate(s: OneShotScheme) -> bool:
    if not algebraic_check(s).ok:
        return False
    if s.total_input_bits <= AUDIT_AT_BUILD_MAX_BITS:
        from .audit import audit_scheme

        report = audit_scheme(s)
        return report.passed
    return True


def cj_scheme(md: int, mc: int) -> OneShotScheme:
    """Symmetric cooperative-jamming scheme for (md, mc).

    The returned layout is validated (zero leakage, zero decoding error)
    before it is handed out. Bit placements are one valid realisation of the
    role counts, not necessarily a figure-exact copy of any published drawing.
    """
    for name, v in (("md", md), ("mc", mc)):
        if isinstance(v, bool) or int(v) != v:
            raise UnsupportedParameters(f"{name} must be an integer, got {v!r}")
    md, mc = int(md), int(mc)
    private, common = cj_role_counts(md, mc)
    p = DetChannelParams.symmetric(md, mc)
    msg_bits = private + common

    placement = _parametric_positions(md, mc)
    if placement is not None:
        s = _build(p, *_symmetric_candidate(p, *placement), name="cj")
        if _validate(s):
            return s
    placement = search_symmetric_layout(md, mc, msg_bits)
    if placement is not None:
        s = _build(p, *_symmetric_candidate(p, *placement), name="cj")
        if _validate(s):
            return s
    raise UnsupportedParameters(
        f"no validated one-shot layout with {msg_bits} message bits per user for (md, mc) = ({md}, {mc})"
    )
