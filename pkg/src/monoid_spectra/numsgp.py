"""Numerical semigroups: exact membership, gaps, Frobenius number, and
enumeration of oversemigroups (finite, by gap-subset descent)."""

from __future__ import annotations

from functools import lru_cache
from math import gcd


class NumericalSemigroup:
    """Additive submonoid of N generated by positive integers with gcd 1."""

    def __init__(self, generators):
        gens = sorted(set(int(g) for g in generators))
        if not gens or any(g <= 0 for g in gens):
            raise ValueError("generators must be positive integers")
        g_all = 0
        for g in gens:
            g_all = gcd(g_all, g)
        if g_all != 1:
            raise ValueError("generators must have gcd 1")
        self.generators = tuple(gens)
        limit = gens[0] * gens[-1] + 1  # >= conductor
        reach = [False] * (limit + 1)
        reach[0] = True
        for i in range(1, limit + 1):
            reach[i] = any(i >= g and reach[i - g] for g in gens)
        self._reach = reach
        self._limit = limit
        gaps = [n for n in range(1, limit + 1) if not reach[n]]
        self.gaps = tuple(gaps)
        self.frobenius = gaps[-1] if gaps else -1
        self.conductor = self.frobenius + 1

    def contains(self, n: int) -> bool:
        if n < 0:
            return False
        if n > self._limit:
            return True
        return self._reach[n]

    def elements_upto(self, bound: int) -> list[int]:
        return [n for n in range(bound + 1) if self.contains(n)]

    def minimal_generators(self) -> tuple[int, ...]:
        m = self.generators[0]
        cands = [n for n in self.elements_upto(self.frobenius + m + 1) if n > 0]
        elems = set(cands)
        out = []
        for n in cands:
            if not any(a in elems and (n - a) in elems for a in range(1, n)):
                out.append(n)
        return tuple(out)

    def __eq__(self, other):
        return isinstance(other, NumericalSemigroup) and self._key() == other._key()

    def __hash__(self):
        return hash(self._key())

    def _key(self):
        return self.gaps

    def __repr__(self):
        return f"NumericalSemigroup{self.generators}"


def oversemigroups(sgp: NumericalSemigroup) -> list[NumericalSemigroup]:
    """All numerical semigroups containing `sgp`, found by filling gap subsets
    and keeping the closed ones.  Finite since the gap set is finite."""
    gaps = sgp.gaps
    if not gaps:
        return [sgp]
    frob = sgp.frobenius
    base = set(sgp.elements_upto(frob))
    out = []
    for mask in range(1 << len(gaps)):
        filled = {gaps[i] for i in range(len(gaps)) if mask >> i & 1}
        elems = base | filled
        small = sorted(e for e in elems if e > 0)
        closed = all(
            (a + b) > frob or (a + b) in elems for a in small for b in small if a <= b
        )
        if not closed:
            continue
        out.append(NumericalSemigroup(sorted(set(sgp.generators) | filled)))
    # dedupe (distinct masks give distinct gap sets, but be safe) and sort
    uniq = sorted(set(out), key=lambda s: (-len(s.gaps), s.gaps))
    return uniq


@lru_cache(maxsize=None)
def cached_semigroup(generators: tuple) -> NumericalSemigroup:
    return NumericalSemigroup(generators)
