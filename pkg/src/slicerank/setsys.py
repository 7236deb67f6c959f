"""Set families and their sunflower/capset predicates.

Subsets of {1,...,n} are bit vectors in {0,1}^n; the mod-D setting works
with coordinate tuples in (Z/DZ)^n.  A distinct triple is a sunflower in
the binary setting iff no coordinate shows exactly two ones, and in the
mod-D setting iff every coordinate is all-equal or all-distinct (i.e. no
coordinate has exactly two equal entries).  Everything here is an immutable
value; all operations are pure.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Sequence

BINARY = "binary"
MOD = "mod-d"


class FamilyFormatError(ValueError):
    """Raised when a family text file cannot be parsed."""


# ---------------------------------------------------------------------------
# vectors


@dataclass(frozen=True)
class SubsetVector:
    """A subset of {1,...,n} as a packed bit vector (bit i-1 <-> element i)."""

    n: int
    bits: int

    def __post_init__(self):
        if self.n < 0:
            raise ValueError("ground-set size must be nonnegative")
        if not 0 <= self.bits < (1 << self.n):
            raise ValueError(f"bit vector out of range for n={self.n}")

    @classmethod
    def from_coords(cls, coords: Sequence[int]) -> "SubsetVector":
        bits = 0
        for i, c in enumerate(coords):
            if c not in (0, 1):
                raise ValueError("binary coordinates must be 0 or 1")
            if c:
                bits |= 1 << i
        return cls(len(coords), bits)

    @classmethod
    def from_support(cls, n: int, elements: Iterable[int]) -> "SubsetVector":
        bits = 0
        for e in elements:
            if not 1 <= e <= n:
                raise ValueError(f"element {e} outside 1..{n}")
            bits |= 1 << (e - 1)
        return cls(n, bits)

    @property
    def weight(self) -> int:
        return self.bits.bit_count()

    def coords(self) -> tuple[int, ...]:
        return tuple((self.bits >> i) & 1 for i in range(self.n))

    def support(self) -> tuple[int, ...]:
        return tuple(i + 1 for i in range(self.n) if (self.bits >> i) & 1)

    def intersection(self, other: "SubsetVector") -> "SubsetVector":
        if self.n != other.n:
            raise ValueError("mismatched ground-set sizes")
        return SubsetVector(self.n, self.bits & other.bits)

    def to_line(self) -> str:
        return "".join(str(c) for c in self.coords())


@dataclass(frozen=True)
class DVector:
    """A point of (Z/DZ)^n."""

    n: int
    D: int
    coords: tuple[int, ...]

    def __post_init__(self):
        if self.D < 2:
            raise ValueError("alphabet size must be at least 2")
        if len(self.coords) != self.n:
            raise ValueError("coordinate count must equal n")
        if any(not 0 <= c < self.D for c in self.coords):
            raise ValueError(f"coordinates must lie in [0, {self.D})")

    def to_line(self) -> str:
        return ",".join(str(c) for c in self.coords)


def _key(v) -> tuple[int, ...]:
    return v.coords() if isinstance(v, SubsetVector) else v.coords


# ---------------------------------------------------------------------------
# families


@dataclass(frozen=True)
class Family:
    """A finite family of pairwise-distinct vectors, stored sorted.

    Duplicate members are rejected outright: every sunflower notion here
    quantifies over distinct sets, so a multiset family is never meaningful.
    """

    setting: str
    n: int
    D: int | None
    members: tuple

    def __post_init__(self):
        if self.setting not in (BINARY, MOD):
            raise ValueError(f"unknown setting {self.setting!r}")
        if self.setting == BINARY and self.D is not None:
            raise ValueError("binary families carry no alphabet size")
        if self.setting == MOD and (self.D is None or self.D < 2):
            raise ValueError("mod-D families need D >= 2")
        seen = set()
        for m in self.members:
            if self.setting == BINARY:
                if not isinstance(m, SubsetVector) or m.n != self.n:
                    raise ValueError("members must be SubsetVectors of equal n")
            else:
                if not isinstance(m, DVector) or m.n != self.n or m.D != self.D:
                    raise ValueError("members must be DVectors of equal n and D")
            k = _key(m)
            if k in seen:
                raise ValueError(f"duplicate member {m}")
            seen.add(k)
        object.__setattr__(self, "members", tuple(sorted(self.members, key=_key)))

    @classmethod
    def of(cls, members: Sequence, n: int | None = None, D: int | None = None) -> "Family":
        """Build a family, inferring the setting from the member type."""
        members = tuple(members)
        if not members:
            if n is None:
                raise ValueError("an empty family needs an explicit n")
            return cls(MOD if D is not None else BINARY, n, D, ())
        if isinstance(members[0], SubsetVector):
            return cls(BINARY, members[0].n, None, members)
        return cls(MOD, members[0].n, members[0].D, members)

    def __len__(self) -> int:
        return len(self.members)

    def __iter__(self):
        return iter(self.members)

    def to_text(self) -> str:
        return "".join(m.to_line() + "\n" for m in self.members)


def parse_family(
    text: str, setting: str | None = None, D: int | None = None, n: int | None = None
) -> Family:
    """Parse the family text format: one member per line, binary members as
    0/1 strings, mod-D members as comma-separated digits; '#' starts a
    comment and blank lines are ignored.

    Unless given, the setting is inferred: an explicit D or a comma in some
    member means mod-D (single-coordinate mod-D files therefore need an
    explicit D), otherwise binary.  For mod-D input without an explicit D
    the alphabet size is taken as max(coordinate) + 1, but never below 3.
    """
    rows: list[tuple[int, str]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if line:
            rows.append((lineno, line))
    if not rows:
        if setting is None:
            setting = MOD if D is not None else BINARY
        return Family(setting, n or 0, D if setting == MOD else None, ())

    if setting is None:
        if D is not None or any("," in line for _, line in rows):
            setting = MOD
        else:
            setting = BINARY

    members = []
    if setting == BINARY:
        for lineno, line in rows:
            if set(line) - {"0", "1"}:
                raise FamilyFormatError(f"line {lineno}: expected a 0/1 string, got {line!r}")
            members.append(SubsetVector.from_coords([int(c) for c in line]))
    else:
        coord_rows = []
        for lineno, line in rows:
            try:
                coords = tuple(int(p.strip()) for p in line.split(","))
            except ValueError:
                raise FamilyFormatError(
                    f"line {lineno}: expected comma-separated digits, got {line!r}"
                ) from None
            if any(c < 0 for c in coords):
                raise FamilyFormatError(f"line {lineno}: negative coordinate")
            coord_rows.append((lineno, coords))
        if D is None:
            D = max(3, 1 + max(max(c) for _, c in coord_rows))
        for lineno, coords in coord_rows:
            if any(c >= D for c in coords):
                raise FamilyFormatError(f"line {lineno}: coordinate >= D={D}")
            members.append(DVector(len(coords), D, coords))
    try:
        return Family.of(members)
    except ValueError as exc:
        raise FamilyFormatError(str(exc)) from None


# ---------------------------------------------------------------------------
# sunflower predicates


def is_sunflower(sets: Sequence[SubsetVector]) -> bool:
    """True iff the k >= 2 distinct subsets have all pairwise intersections
    equal (the common core)."""
    if len(sets) < 2:
        raise ValueError("a sunflower needs at least two sets")
    n = sets[0].n
    if any(s.n != n for s in sets):
        raise ValueError("mismatched ground-set sizes")
    if len({s.bits for s in sets}) != len(sets):
        raise ValueError("sunflower members must be distinct")
    core = sets[0].bits & sets[1].bits
    return all(a.bits & b.bits == core for a, b in itertools.combinations(sets, 2))


def triple_is_sunflower(x, y, z) -> bool:
    """Coordinate test for a distinct triple.

    Binary: sunflower iff no coordinate has exactly two ones.  Mod-D:
    sunflower iff every coordinate is all-equal or all-distinct.
    """
    if isinstance(x, SubsetVector):
        if x.n != y.n or x.n != z.n:
            raise ValueError("mismatched dimensions")
        if x == y or y == z or x == z:
            raise ValueError("triple members must be pairwise distinct")
        pairs = (x.bits & y.bits) | (y.bits & z.bits) | (x.bits & z.bits)
        return pairs & ~(x.bits & y.bits & z.bits) == 0
    if x.n != y.n or x.n != z.n or x.D != y.D or x.D != z.D:
        raise ValueError("mismatched dimensions")
    if x == y or y == z or x == z:
        raise ValueError("triple members must be pairwise distinct")
    for a, b, c in zip(x.coords, y.coords, z.coords):
        equal = (a == b) + (b == c) + (a == c)
        if equal == 1:
            return False
    return True


def find_sunflower(family: Family):
    """Lexicographically least sunflower triple in the family, or None."""
    for triple in itertools.combinations(family.members, 3):
        if triple_is_sunflower(*triple):
            return triple
    return None


def is_sunflower_free(family: Family) -> bool:
    return find_sunflower(family) is None


def layer_split(family: Family) -> dict[int, Family]:
    """Partition a binary family by weight; constant weight makes each layer
    an antichain (no member properly contains another)."""
    if family.setting != BINARY:
        raise ValueError("layer_split applies to binary families")
    layers: dict[int, list] = {}
    for m in family.members:
        layers.setdefault(m.weight, []).append(m)
    return {w: Family(BINARY, family.n, None, tuple(ms)) for w, ms in sorted(layers.items())}


# ---------------------------------------------------------------------------
# capsets


def find_progression(family: Family):
    """Lexicographically least distinct triple with x + y + z = 0 mod 3
    (equivalently a three-term arithmetic progression), or None."""
    if family.setting != MOD or family.D != 3:
        raise ValueError("capset predicates require the mod-3 setting")
    for x, y, z in itertools.combinations(family.members, 3):
        if all((a + b + c) % 3 == 0 for a, b, c in zip(x.coords, y.coords, z.coords)):
            return (x, y, z)
    return None


def is_capset(family: Family) -> bool:
    return find_progression(family) is None


# ---------------------------------------------------------------------------
# the pair encoding {0,1}^(2n) <-> {0,1,2,3}^n

_PAIR_TO_SYMBOL = {(0, 0): 0, (1, 0): 1, (0, 1): 2, (1, 1): 3}
_SYMBOL_TO_PAIR = {v: k for k, v in _PAIR_TO_SYMBOL.items()}


@dataclass(frozen=True)
class EncodedFamily:
    """A binary family over 2n coordinates re-read over the alphabet
    {0,1,2,3}, one symbol per consecutive coordinate pair."""

    n: int
    members: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        seen = set()
        for m in self.members:
            if len(m) != self.n or any(s not in (0, 1, 2, 3) for s in m):
                raise ValueError("encoded members must be {0,1,2,3}^n tuples")
            if m in seen:
                raise ValueError("duplicate encoded member")
            seen.add(m)
        object.__setattr__(self, "members", tuple(sorted(self.members)))

    def decode(self) -> Family:
        vecs = []
        for m in self.members:
            coords: list[int] = []
            for s in m:
                coords.extend(_SYMBOL_TO_PAIR[s])
            vecs.append(SubsetVector.from_coords(coords))
        return Family(BINARY, 2 * self.n, None, tuple(vecs))


def pair_encode(family: Family) -> EncodedFamily:
    """Encode a binary family over 2n coordinates into {0,1,2,3}^n."""
    if family.setting != BINARY:
        raise ValueError("pair_encode applies to binary families")
    if family.n % 2:
        raise ValueError("pair_encode needs an even number of coordinates")
    half = family.n // 2
    encoded = []
    for m in family.members:
        coords = m.coords()
        encoded.append(tuple(_PAIR_TO_SYMBOL[coords[2 * i], coords[2 * i + 1]] for i in range(half)))
    return EncodedFamily(half, tuple(encoded))


def layer_extract(encoded: EncodedFamily, x) -> Family:
    """Members whose 3-symbols sit exactly at the support of x, with those
    coordinates deleted and the rest read as F_3 values."""
    if isinstance(x, SubsetVector):
        xc = x.coords()
    else:
        xc = tuple(x)
    if len(xc) != encoded.n:
        raise ValueError("selector dimension mismatch")
    if any(c not in (0, 1) for c in xc):
        raise ValueError("selector must be a 0/1 vector")
    picked = []
    for m in encoded.members:
        if all((s == 3) == (c == 1) for s, c in zip(m, xc)):
            rest = tuple(s for s, c in zip(m, xc) if c == 0)
            picked.append(DVector(len(rest), 3, rest))
    return Family(MOD, encoded.n - sum(xc), 3, tuple(picked))
