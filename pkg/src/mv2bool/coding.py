"""Integer-to-Boolean codings: Summing, Van Ham, Gray, and level-permuted
variants of all three.

A coding decodes a Boolean support profile to a level in 0..L; decoding
is a partial surjection.  Summing reads the number of set bits, Van Ham
accepts only ones-prefix profiles, and Gray reads the reflected binary
value (bit 1 is the most significant).  Gray profiles decoding above L
are excluded from the domain rather than clamped.

Permuted codings relabel levels after the base decode.  They may break
the zero property (all-zero profile decodes to 0) and neighbourhood
preservation, so they carry explicit queries for both.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Mapping

from .core import BState, MVNetwork, SupportMap
from .errors import MarkerCoverageError, SpecificationError

BASE_CODINGS = ("summing", "vanham", "gray")

Profile = tuple[int, ...]


@dataclass(frozen=True)
class Coding:
    kind: str
    permutation: tuple[int, ...] | None = None

    def __post_init__(self):
        if self.kind not in BASE_CODINGS:
            raise SpecificationError(
                f"unknown coding {self.kind!r}; expected one of {BASE_CODINGS}"
            )
        if self.permutation is not None:
            perm = tuple(self.permutation)
            if sorted(perm) != list(range(len(perm))):
                raise SpecificationError(
                    f"not a level permutation: {self.permutation}"
                )
            object.__setattr__(self, "permutation", perm)

    @staticmethod
    def of(name: str, permutation=None) -> "Coding":
        return Coding(name, tuple(permutation) if permutation else None)

    @property
    def is_permuted(self) -> bool:
        return self.permutation is not None

    def support_size(self, max_level: int) -> int:
        if max_level < 1:
            raise SpecificationError("max level must be >= 1")
        if self.kind == "gray":
            return max(1, (max_level + 1 - 1).bit_length())
        return max_level

    def describe(self) -> str:
        if self.is_permuted:
            return f"{self.kind}[{','.join(map(str, self.permutation))}]"
        return self.kind


def _base_decode(kind: str, size: int, profile: Profile) -> int | None:
    if kind == "summing":
        return sum(profile)
    if kind == "vanham":
        ones = sum(profile)
        if profile != (1,) * ones + (0,) * (size - ones):
            return None
        return ones
    # gray: bit 1 is the most significant
    value = 0
    acc = 0
    for k, bit in enumerate(profile, start=1):
        acc ^= bit
        value += acc << (size - k)
    return value


@lru_cache(maxsize=None)
def _tables(coding: Coding, max_level: int):
    """Per (coding, L): decode table over all profiles and preimages."""
    size = coding.support_size(max_level)
    decode_of: dict[Profile, int | None] = {}
    pre: dict[int, list[Profile]] = {l: [] for l in range(max_level + 1)}
    for profile in itertools.product((0, 1), repeat=size):
        value = _base_decode(coding.kind, size, profile)
        if value is not None and value > max_level:
            value = None
        if value is not None and coding.permutation is not None:
            value = coding.permutation[value]
        decode_of[profile] = value
        if value is not None:
            pre[value].append(profile)
    return size, decode_of, {l: tuple(v) for l, v in pre.items()}


def decode(coding: Coding, max_level: int, profile: Profile) -> int | None:
    """Level encoded by ``profile``, or None when it is not a code."""
    size, table, _ = _tables(coding, max_level)
    profile = tuple(profile)
    if len(profile) != size:
        raise SpecificationError(
            f"profile arity {len(profile)} != support size {size} "
            f"for {coding.describe()} with max level {max_level}"
        )
    return table[profile]


def preimage(coding: Coding, max_level: int, level: int) -> tuple[Profile, ...]:
    """All profiles coding ``level``, in lexicographic profile order."""
    if not 0 <= level <= max_level:
        raise SpecificationError(
            f"level {level} out of range 0..{max_level}"
        )
    _, _, pre = _tables(coding, max_level)
    return pre[level]


def domain(coding: Coding, max_level: int) -> tuple[Profile, ...]:
    """All profiles that decode, in lexicographic order."""
    _, table, _ = _tables(coding, max_level)
    return tuple(p for p, v in table.items() if v is not None)


def zero_maps_to_zero(coding: Coding, max_level: int) -> bool:
    size = coding.support_size(max_level)
    return decode(coding, max_level, (0,) * size) == 0


def decode_state(
    coding: Coding, supports: SupportMap, w: Mapping[str, int]
) -> dict[str, int] | None:
    """Decode a full Boolean state to an integer state, or None when any
    support sub-profile is outside the coding's domain."""
    out = {}
    for var, names in supports.supports.items():
        profile = tuple(w[n] for n in names)
        level = decode(coding, supports.max_levels[var], profile)
        if level is None:
            return None
        out[var] = level
    return out


def admissible_region(
    coding: Coding, supports: SupportMap
) -> Callable[[Mapping[str, int]], bool]:
    """Predicate over Boolean states: true iff every support decodes."""

    def admits(w: Mapping[str, int]) -> bool:
        return decode_state(coding, supports, w) is not None

    return admits


def build_support_map(net: MVNetwork, coding: Coding) -> SupportMap:
    """Support variables named ``<var>_<k>`` with k counted from 1."""
    supports = {}
    for v in net.variables:
        size = coding.support_size(v.max_level)
        supports[v.name] = tuple(f"{v.name}_{k}" for k in range(1, size + 1))
    return SupportMap(supports, net.max_levels)


# ---------------------------------------------------------------------------
# Neighbourhood preservation


@dataclass(frozen=True)
class NeighbourhoodReport:
    ok: bool
    variable: str | None = None
    clause: int | None = None
    detail: tuple | None = None

    def __bool__(self) -> bool:
        return self.ok


def is_neighbourhood_preserving(
    coding: Coding, net: MVNetwork
) -> NeighbourhoodReport:
    """Exhaustively check that distance-1 integer states admit distance-1
    codes, and that distance-1 codes decode to distance-1 levels.

    Codes decode support by support, so the two clauses reduce to the
    same conditions checked per variable: a global pair at distance 1
    differs in exactly one variable (or one bit of one support).
    """
    for v in net.variables:
        L = v.max_level
        for level in range(L):
            pairs = (
                (a, b)
                for a in preimage(coding, L, level)
                for b in preimage(coding, L, level + 1)
            )
            if not any(_hamming(a, b) == 1 for a, b in pairs):
                return NeighbourhoodReport(
                    False, v.name, 1, (level, level + 1)
                )
        codes = domain(coding, L)
        for a, b in itertools.combinations(codes, 2):
            if _hamming(a, b) == 1:
                da = decode(coding, L, a)
                db = decode(coding, L, b)
                if abs(da - db) != 1:
                    return NeighbourhoodReport(False, v.name, 2, (a, b, da, db))
    return NeighbourhoodReport(True)


def _hamming(a: Profile, b: Profile) -> int:
    return sum(x != y for x, y in zip(a, b))


# ---------------------------------------------------------------------------
# Markers of sign


def _marker_domain(coding: Coding, max_level: int) -> tuple[Profile, ...]:
    """Domain over which the marker monotonicity condition is enumerated.

    The condition is a property of the code itself, so base codes are
    enumerated at full support capacity: the whole cube for Summing and
    Gray (Gray levels up to 2^size - 1, ignoring the level cap), the
    ones-prefix set for Van Ham.  Permuted codings have no meaning above
    the cap and fall back to the capped domain.
    """
    if coding.is_permuted:
        return domain(coding, max_level)
    size = coding.support_size(max_level)
    if coding.kind == "vanham":
        return tuple((1,) * l + (0,) * (size - l) for l in range(size + 1))
    return tuple(itertools.product((0, 1), repeat=size))


def _marker_decode(coding: Coding, max_level: int, profile: Profile) -> int | None:
    if coding.is_permuted:
        return decode(coding, max_level, profile)
    size = coding.support_size(max_level)
    return _base_decode(coding.kind, size, profile)


def marker_bits(coding: Coding, max_level: int) -> tuple[int, ...]:
    """1-based support indices whose value-raise never lowers the decoded
    level: for every in-domain profile, setting the bit to 1 either
    leaves the domain (skipped) or yields a level >= the original."""
    size = coding.support_size(max_level)
    dom = _marker_domain(coding, max_level)
    values = {p: _marker_decode(coding, max_level, p) for p in dom}
    bits = []
    for k in range(size):
        ok = True
        for profile in dom:
            raised = profile[:k] + (1,) + profile[k + 1 :]
            if raised not in values:
                continue  # substitution leaves the code's domain
            if values[profile] > values[raised]:
                ok = False
                break
        if ok:
            bits.append(k + 1)
    return tuple(bits)


def markers(
    coding: Coding, supports: SupportMap
) -> frozenset[str]:
    """Support variables acting as markers of sign, found by enumerating
    the monotonicity condition on each support's code.

    Raises MarkerCoverageError when some variable ends up with no marker
    (possible for permuted codings only).
    """
    found: set[str] = set()
    uncovered = []
    for var, names in supports.supports.items():
        bits = marker_bits(coding, supports.max_levels[var])
        if not bits:
            uncovered.append(var)
        found.update(names[k - 1] for k in bits)
    if uncovered:
        raise MarkerCoverageError(uncovered, found)
    return frozenset(found)


def theorem_markers(coding: Coding, supports: SupportMap) -> frozenset[str]:
    """Closed-form marker sets of the base codings: every support
    variable for Summing and Van Ham, the index-1 (most significant)
    variable for Gray."""
    if coding.is_permuted:
        raise SpecificationError("no closed-form markers for permuted codings")
    if coding.kind == "gray":
        return frozenset(names[0] for names in supports.supports.values())
    return frozenset(supports.bool_names)
