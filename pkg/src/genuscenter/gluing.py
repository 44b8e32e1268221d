"""Admissible gluings, orbit bookkeeping, and surface classification.

A gluing of rank n is a fixed-point-free involution of {1, ..., 2n}.  It
presents an open surface: a disk grows 2n boundary legs, leg ends are
glued in pairs with the surface orientation preserved, and the boundary
is removed.  The classification below models the glued disk as a single
4n-gon whose sides alternate leg-sides and gap-sides.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .errors import GluingFormatError

__all__ = [
    "Gluing",
    "OrbitInfo",
    "SurfaceType",
    "enumerate_adm",
    "orbit_info",
    "comm_case",
    "sigma_gk",
    "surface_type",
    "parse_cycles",
]


@dataclass(frozen=True)
class Gluing:
    """Fixed-point-free involution on {1, ..., 2n}, stored as a pair map."""

    n: int
    pairing: tuple[int, ...]  # pairing[i-1] = sigma(i)

    def __post_init__(self):
        if len(self.pairing) != 2 * self.n:
            raise GluingFormatError(
                f"pairing has {len(self.pairing)} entries for rank {self.n}"
            )
        for i in range(1, 2 * self.n + 1):
            j = self(i)
            if not 1 <= j <= 2 * self.n:
                raise GluingFormatError(f"sigma({i}) = {j} out of range")
            if j == i:
                raise GluingFormatError(f"sigma fixes {i}")
            if self(j) != i:
                raise GluingFormatError(f"sigma is not an involution at {i}")

    def __call__(self, i: int) -> int:
        return self.pairing[i - 1]

    @staticmethod
    def from_pairs(pairs) -> "Gluing":
        pairs = [tuple(p) for p in pairs]
        size = 2 * len(pairs)
        mapping = [0] * size
        seen = set()
        for a, b in pairs:
            for v in (a, b):
                if v in seen:
                    raise GluingFormatError(f"index {v} appears twice")
                seen.add(v)
            if not (1 <= a <= size and 1 <= b <= size):
                raise GluingFormatError(f"pair ({a} {b}) out of range for {size} legs")
            mapping[a - 1] = b
            mapping[b - 1] = a
        return Gluing(len(pairs), tuple(mapping))

    def pairs(self) -> list[tuple[int, int]]:
        """Orbits as (low, high), sorted by low member."""
        return sorted((i, self(i)) for i in range(1, 2 * self.n + 1) if i < self(i))

    def orbits(self) -> list["OrbitInfo"]:
        return [OrbitInfo(low=a, high=b) for a, b in self.pairs()]

    def cycle_string(self) -> str:
        if self.n == 0:
            return "()"
        return "".join(f"({a} {b})" for a, b in self.pairs())

    def to_json(self) -> dict:
        return {"n": self.n, "pairs": [list(p) for p in self.pairs()]}

    @staticmethod
    def from_json(obj) -> "Gluing":
        g = Gluing.from_pairs(obj["pairs"])
        if g.n != obj.get("n", g.n):
            raise GluingFormatError("declared rank disagrees with pair list")
        return g

    def __str__(self):
        return self.cycle_string()


@dataclass(frozen=True)
class OrbitInfo:
    low: int
    high: int

    def __post_init__(self):
        if not self.low < self.high:
            raise GluingFormatError(f"orbit ({self.low},{self.high}) not ordered")

    @property
    def orbit(self) -> frozenset:
        return frozenset((self.low, self.high))


@dataclass(frozen=True)
class SurfaceType:
    genus: int
    punctures: int

    @property
    def euler(self) -> int:
        return 2 - 2 * self.genus - self.punctures


def enumerate_adm(n: int) -> list[Gluing]:
    """All fixed-point-free involutions of S_2n; (2n-1)!! of them."""
    out: list[Gluing] = []

    def rec(remaining: tuple[int, ...], acc):
        if not remaining:
            out.append(Gluing.from_pairs(acc))
            return
        first = remaining[0]
        rest = remaining[1:]
        for k, partner in enumerate(rest):
            rec(rest[:k] + rest[k + 1 :], acc + [(first, partner)])

    rec(tuple(range(1, 2 * n + 1)), [])
    return out


def orbit_info(sigma: Gluing, i: int) -> OrbitInfo:
    if not 1 <= i <= 2 * sigma.n:
        raise IndexError(f"index {i} out of range for rank {sigma.n}")
    j = sigma(i)
    return OrbitInfo(low=min(i, j), high=max(i, j))


def comm_case(sigma: Gluing, oi: OrbitInfo, oj: OrbitInfo) -> int:
    """1 disjoint, 2 interleaved, 3 nested, after ordering by low member."""
    if oi.orbit == oj.orbit:
        raise ValueError("comm_case needs two distinct orbits")
    a, b = sorted((oi, oj), key=lambda o: o.low)
    if a.high < b.low:
        return 1
    if a.high < b.high:
        return 2
    return 3


def sigma_gk(g: int, k: int) -> Gluing:
    """The standard gluing presenting a genus-g surface with k punctures."""
    if g < 0 or k < 1:
        raise ValueError("need g >= 0 and k >= 1")
    pairs = []
    for h in range(g):
        base = 4 * h
        pairs.append((base + 1, base + 3))
        pairs.append((base + 2, base + 4))
    for p in range(k - 1):
        base = 4 * g + 2 * p
        pairs.append((base + 1, base + 2))
    return Gluing.from_pairs(pairs)


def surface_type(sigma: Gluing) -> SurfaceType:
    """Classify the glued surface via its one-cell CW structure.

    The 4n-gon reads L1 G1 L2 G2 ... L2n G2n around the boundary; leg-side
    Li is identified with L_sigma(i) reversed.  Punctures are traced along
    gap-sides; the Euler characteristic comes from corner-orbit counting.
    The two computations are cross-checked against chi = 2 - 2g - k.
    """
    n = sigma.n
    if n == 0:
        return SurfaceType(genus=0, punctures=1)

    # Boundary circles: walking gap i, the next gap is sigma(i+1).
    def next_gap(i: int) -> int:
        return sigma(i % (2 * n) + 1)

    seen = set()
    punctures = 0
    for start in range(1, 2 * n + 1):
        if start in seen:
            continue
        punctures += 1
        cur = start
        while cur not in seen:
            seen.add(cur)
            cur = next_gap(cur)

    # Corners: 4n of them, c(2i-1) before leg i, c(2i) after leg i (both
    # endpoints of leg-side i).  Gluing Li to Lj reversed identifies
    # head(Li) ~ tail(Lj) and tail(Li) ~ head(Lj).
    parent = list(range(4 * n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(x, y):
        parent[find(x)] = find(y)

    for i in range(1, 2 * n + 1):
        j = sigma(i)
        tail_i, head_i = 2 * (i - 1), 2 * (i - 1) + 1
        tail_j, head_j = 2 * (j - 1), 2 * (j - 1) + 1
        union(head_i, tail_j)
        union(tail_i, head_j)
    vertices = len({find(x) for x in range(4 * n)})

    # One face, 2n gap-edges plus n glued leg-edges.
    chi = vertices - 3 * n + 1
    genus2 = 2 - punctures - chi
    if genus2 < 0 or genus2 % 2:
        raise AssertionError(
            f"inconsistent classification for {sigma}: chi={chi}, k={punctures}"
        )
    return SurfaceType(genus=genus2 // 2, punctures=punctures)


_CYCLE_RE = re.compile(r"\(\s*(\d+)[\s,]+(\d+)\s*\)")


def parse_cycles(text: str) -> Gluing:
    """Parse cycle notation like ``(1 3)(2 4)``; whitespace-insensitive."""
    s = text.strip()
    if s in ("", "()"):
        return Gluing(0, ())
    stripped = _CYCLE_RE.sub("", s)
    if stripped.strip():
        raise GluingFormatError(
            f"could not parse {text!r} as a product of transpositions"
        )
    pairs = [(int(a), int(b)) for a, b in _CYCLE_RE.findall(s)]
    labels = sorted(v for p in pairs for v in p)
    if labels != list(range(1, len(labels) + 1)):
        raise GluingFormatError(
            f"legs must be exactly 1..2n; got {labels} in {text!r}"
        )
    return Gluing.from_pairs(pairs)
