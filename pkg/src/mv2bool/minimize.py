"""Exact two-level minimization of small Boolean formulas.

Prime implicants are generated Quine-McCluskey style on bitmask cubes;
a minimum cover is then selected by essential-prime extraction followed
by branch and bound.  Ties are broken deterministically: fewest terms,
then fewest literals, then the lexicographically least term sequence.

Assignments outside an optional care set are treated as don't-cares.
When no care set is given every assignment is a care point, so the
result is equivalent to the input everywhere.
"""

from __future__ import annotations

import itertools
import warnings
from typing import Callable, Mapping, Sequence

from .core import BoolFormula, Dnf, Term

MAX_EXACT_VARIABLES = 16


class MinimizationSkipped(UserWarning):
    """Formula too wide for exact minimization; left unminimized."""


Cube = tuple[int, int]  # (care mask over variables, values on cared bits)


def _cube_covers(cube: Cube, assignment: int) -> bool:
    mask, value = cube
    return (assignment & mask) == value


def _cube_term(cube: Cube, names: Sequence[str]) -> Term:
    mask, value = cube
    n = len(names)
    lits = []
    for i, name in enumerate(names):
        bit = 1 << (n - 1 - i)  # first name is the most significant bit
        if mask & bit:
            lits.append((name, bool(value & bit)))
    return tuple(sorted(lits, key=lambda l: (l[0], 0 if l[1] else 1)))


def _prime_implicants(n: int, on: frozenset[int], dc: frozenset[int]) -> list[Cube]:
    full = (1 << n) - 1
    current = {(full, m) for m in on | dc}
    primes: set[Cube] = set()
    while current:
        merged: set[Cube] = set()
        used: set[Cube] = set()
        by_mask: dict[int, list[Cube]] = {}
        for cube in current:
            by_mask.setdefault(cube[0], []).append(cube)
        for mask, cubes in by_mask.items():
            values = {c[1] for c in cubes}
            for value in values:
                for i in range(n):
                    bit = 1 << i
                    if not mask & bit:
                        continue
                    if value & bit:
                        continue  # handle each pair once, from the 0 side
                    if value | bit in values:
                        merged.add((mask & ~bit, value))
                        used.add((mask, value))
                        used.add((mask, value | bit))
        primes |= current - used
        current = merged
    # keep primes covering at least one required assignment
    return sorted(p for p in primes if any(_cube_covers(p, m) for m in on))


def _term_sort_key(term: Term):
    return tuple((name, 0 if positive else 1) for name, positive in term)


def _cover_key(cubes: Sequence[Cube], names: Sequence[str]):
    terms = sorted((_cube_term(c, names) for c in cubes), key=_term_sort_key)
    literals = sum(len(t) for t in terms)
    return (len(terms), literals, tuple(_term_sort_key(t) for t in terms))


def _min_cover(
    primes: list[Cube], on: frozenset[int], names: Sequence[str]
) -> list[Cube]:
    coverage = {m: frozenset(i for i, p in enumerate(primes) if _cube_covers(p, m))
                for m in on}

    chosen: set[int] = set()
    remaining = set(on)
    while True:  # essential primes: sole cover of some assignment
        essentials = {
            next(iter(coverage[m]))
            for m in remaining
            if len(coverage[m]) == 1
        }
        new = essentials - chosen
        if not new:
            break
        chosen |= new
        remaining = {
            m for m in remaining if not coverage[m] & chosen
        }

    best: list[int] | None = None
    best_key = None

    def search(todo: list[int], picked: list[int]):
        nonlocal best, best_key
        key_bound = len(chosen) + len(picked)
        if best is not None and key_bound > len(best):
            return
        if not todo:
            candidate = sorted(chosen | set(picked))
            key = _cover_key([primes[i] for i in candidate], names)
            if best_key is None or key < best_key:
                best, best_key = candidate, key
            return
        # branch on the hardest remaining assignment
        target = min(todo, key=lambda m: len(coverage[m]))
        for i in sorted(coverage[target]):
            if i in picked:
                continue
            rest = [m for m in todo if i not in coverage[m]]
            search(rest, picked + [i])

    search(sorted(remaining), [])
    assert best is not None  # every on-assignment has a covering prime
    return [primes[i] for i in best]


def minimize(
    formula: BoolFormula,
    care_set: Callable[[Mapping[str, int]], bool] | None = None,
) -> BoolFormula:
    """Minimal DNF equivalent to ``formula`` on the care set.

    Variables not occurring in the formula are ignored.  Beyond
    MAX_EXACT_VARIABLES variables the input is returned unminimized and
    a MinimizationSkipped warning is emitted.
    """
    names = sorted(formula.variables())
    n = len(names)
    if n == 0:
        return BoolFormula.true() if formula.evaluate({}) else BoolFormula.false()
    if n > MAX_EXACT_VARIABLES:
        warnings.warn(
            f"{n} variables exceed the exact minimization bound "
            f"{MAX_EXACT_VARIABLES}; returning the canonical DNF",
            MinimizationSkipped,
        )
        return BoolFormula.from_dnf(formula.dnf)

    on = set()
    dc = set()
    for bits in itertools.product((0, 1), repeat=n):
        env = dict(zip(names, bits))
        value = 0
        for b in bits:
            value = (value << 1) | b
        if care_set is not None and not care_set(env):
            dc.add(value)
        elif formula.evaluate(env):
            on.add(value)

    if not on:
        return BoolFormula.false()
    if len(on) + len(dc) == 1 << n:
        return BoolFormula.true()

    primes = _prime_implicants(n, frozenset(on), frozenset(dc))
    cover = _min_cover(primes, frozenset(on), names)
    return BoolFormula.from_dnf(_cube_term(c, names) for c in cover)
