"""Ideal systems on a monoid H: the closure axioms, the s-system, finitary
closure, r-ideals, prime r-ideals, spectrum/ideal-space subbases, the
non-primality witness sets O_{a,b} and principal-ultrafilter limit ideals."""

from __future__ import annotations

import itertools
import random

from .fintop import FiniteSpace
from .intgeom import UnsupportedRealization, cone_shape_2d, faces_2d
from .monoid import INF, Monoid, sort_key
from .report import Check


class IdealSystem:
    """Closure operator on subsets of H given by an oracle on finite subsets.

    ``closure(X)`` takes a frozenset of elements of H and returns an exact
    membership predicate for X_r."""

    def __init__(self, name, H: Monoid, closure, *, finitary=True,
                 laws_verified=False):
        self.name = name
        self.H = H
        self._closure = closure
        self.finitary = finitary
        self.laws_verified = laws_verified

    def closure(self, X):
        return self._closure(frozenset(X))

    def member(self, X, g) -> bool:
        return self.closure(X)(g)


def s_system(H: Monoid) -> IdealSystem:
    """The s-system: X_s = XH for nonempty X and {0} for X = empty set."""
    ctx = H.context
    zero = ctx.zero

    def closure(X):
        xs = tuple(sorted(X, key=sort_key))

        def member(g):
            if g is INF or g == zero:
                return True
            if not xs:
                return False
            for x in xs:
                if x is INF or x == zero:
                    continue
                if H.contains(ctx.op(ctx.inv(x), g)):
                    return True
            return False

        return member

    return IdealSystem("s", H, closure, finitary=True, laws_verified=True)


def finitary_of(r: IdealSystem) -> IdealSystem:
    """The finitary companion: closure of finite X is the union of closures of
    its subsets (idempotent on already-finitary systems)."""

    def closure(X):
        xs = tuple(sorted(X, key=sort_key))
        subsets = [frozenset(c) for n in range(len(xs) + 1)
                   for c in itertools.combinations(xs, n)]
        preds = [r.closure(E) for E in subsets]

        def member(g):
            return any(p(g) for p in preds)

        return member

    return IdealSystem(f"{r.name}_fin", r.H, closure, finitary=True)


class RIdeal:
    """An r-ideal given by a finite generator list; membership is exact."""

    def __init__(self, system: IdealSystem, generators):
        self.system = system
        self.generators = tuple(sorted(set(generators), key=sort_key))
        self._member = system.closure(self.generators)

    def contains(self, g) -> bool:
        return self._member(g)

    def equals(self, other: "RIdeal") -> bool:
        """Mutual generator membership; exact because closures are exact."""
        return (all(other.contains(g) for g in self.generators)
                and all(self.contains(g) for g in other.generators))

    def is_subset_window(self, other: "RIdeal", window) -> bool:
        return all(other.contains(g) for g in window if self.contains(g))

    def elements_window(self, window):
        return [g for g in window if self.contains(g)]

    def __repr__(self):
        return f"RIdeal{self.generators}"


class SpecPoint:
    """A prime r-ideal together with the window its certificate was scanned on."""

    def __init__(self, ideal: RIdeal, window_bound: int, name=""):
        self.ideal = ideal
        self.window_bound = window_bound
        self.name = name

    def contains(self, g):
        return self.ideal.contains(g)

    def __repr__(self):
        return f"SpecPoint({self.name or self.ideal})"


def is_prime(I: RIdeal, window) -> bool:
    """No a, b outside I (within the window) multiply into I.  The improper
    ideal is rejected."""
    H = I.system.H
    if I.contains(H.one):
        return False
    members = [g for g in window if H.contains(g)]
    outside = [g for g in members if not I.contains(g)]
    for a in outside:
        for b in outside:
            if I.contains(H.op(a, b)):
                return False
    return True


def enumerate_primes(H: Monoid, bound: int = 10, system: IdealSystem | None = None):
    """All prime s-ideals of H.  Numerical: the zero ideal and the maximal
    ideal.  Affine: one prime per face of the generated cone.  Finite: the
    zero ideal only."""
    r = system if system is not None else s_system(H)
    window = H.context.window(bound)
    out = []
    if H.kind == "numerical":
        out.append(SpecPoint(RIdeal(r, ()), bound, name="P_zero"))
        out.append(SpecPoint(RIdeal(r, H.generators), bound, name="P_max"))
    elif H.kind == "affine":
        if H.dim > 2:
            raise UnsupportedRealization("prime enumeration needs dimension <= 2")
        gens2 = H.generators if H.dim == 2 else tuple((g[0], 0) for g in H.generators)
        if H.dim == 1:
            faces = [frozenset(gens2), frozenset()] if all(
                g[0] >= 0 for g in gens2) else [frozenset(gens2)]
        else:
            faces = faces_2d(gens2)
        back = {(g[0], 0): g for g in H.generators} if H.dim == 1 else None
        for face in faces:
            if H.dim == 1:
                gens = tuple(back[f] for f in face) if face else ()
                outside = tuple(g for g in H.generators if g not in gens)
            else:
                outside = tuple(g for g in H.generators if g not in face)
            ideal = RIdeal(r, outside)
            name = "P_zero" if not outside else (
                "P_max" if len(outside) == len(set(H.generators)) else
                f"P_face{sorted(face)}")
            out.append(SpecPoint(ideal, bound, name=name))
    elif H.kind == "finite":
        out.append(SpecPoint(RIdeal(r, ()), bound, name="P_zero"))
    else:
        raise UnsupportedRealization(H.kind)
    for p in out:
        if not is_prime(p.ideal, window):
            raise AssertionError(f"enumerated ideal {p} failed the prime recheck")
    # dedupe (a face may coincide with another at degenerate cones)
    uniq = []
    for p in out:
        if not any(p.ideal.equals(q.ideal) for q in uniq):
            uniq.append(p)
    uniq.sort(key=lambda p: tuple(sort_key(g) for g in p.ideal.generators))
    return uniq


def spec_subbasis(H: Monoid, primes, bound: int = 10) -> FiniteSpace:
    """The Zariski space on primes with subbasis the principal opens D_r(f)."""
    window = [g for g in H.context.window(bound) if H.contains(g)]
    labels = [p.name or repr(p.ideal) for p in primes]
    subbasis = []
    names = []
    for f in window:
        subbasis.append(frozenset(i for i, p in enumerate(primes)
                                  if not p.contains(f)))
        names.append(f"D({f})")
    return FiniteSpace(labels, subbasis, subbasis_names=names)


def closed_set(primes, X) -> frozenset:
    """V_r(X): indices of primes containing every element of X."""
    return frozenset(i for i, p in enumerate(primes)
                     if all(p.contains(x) for x in X))


def signature_window(H: Monoid, bound: int):
    """Window on which distinct enumerated ideals provably differ: for
    numerical H an ideal with minimum <= bound is pinned down by its elements
    up to bound + 2 * Frobenius + max generator."""
    if H.kind == "numerical":
        frob = max(H.sgp.frobenius, 0)
        ext = bound + 2 * frob + max(H.generators) + 2
        return [n for n in H.sgp.elements_upto(ext)] + [INF]
    return H.context.window(bound)


def enumerate_ideals(H: Monoid, system: IdealSystem, bound: int):
    """All s-ideals whose minimal nonabsorbing element is <= bound.

    Numerical kind: an ideal with minimum m is generated by its elements in
    [m, m + Frobenius], so generator sets below bound + Frobenius suffice.
    The improper ideal H (minimum = identity) and the zero ideal {0} are
    included.  Affine kind is rejected (infinite antichains)."""
    r = system
    if H.kind == "finite":
        zero = RIdeal(r, ())
        whole = RIdeal(r, (H.one,))
        return [zero, whole]
    if H.kind != "numerical":
        raise UnsupportedRealization("ideal enumeration needs numerical or finite kind")
    frob = max(H.sgp.frobenius, 0)
    universe = [n for n in H.sgp.elements_upto(bound + frob) if n > 0]
    sig_window = signature_window(H, bound)
    seen = {}
    out = []

    def add(ideal):
        sig = frozenset(x for x in sig_window if ideal.contains(x))
        key = (sig, ideal.contains(INF))
        if key not in seen:
            seen[key] = ideal
            out.append(ideal)

    add(RIdeal(r, ()))          # the zero ideal {0}
    add(RIdeal(r, (H.one,)))    # the improper ideal H
    for n in range(1, len(universe) + 1):
        for comb in itertools.combinations(universe, n):
            if min(comb) > bound:
                continue
            add(RIdeal(r, comb))
    out.sort(key=lambda I: tuple(sort_key(g) for g in I.generators))
    return out


def ideal_space_subbasis(ideals, H: Monoid, bound: int = 10) -> FiniteSpace:
    """The space on a finite ideal list with subbasis U_r(x) = {I : x not in I},
    with x running over the signature window so listed ideals separate."""
    window = [g for g in signature_window(H, bound) if H.contains(g)]
    labels = [repr(I) for I in ideals]
    subbasis = []
    names = []
    for x in window:
        subbasis.append(frozenset(i for i, I in enumerate(ideals)
                                  if not I.contains(x)))
        names.append(f"U({x})")
    return FiniteSpace(labels, subbasis, subbasis_names=names)


def o_set(a, b, ideals, H: Monoid):
    """O_{a,b}: ideals avoiding a and b but containing ab; primes never lie in
    any O_{a,b}."""
    ab = H.op(a, b)
    return [I for I in ideals
            if not I.contains(a) and not I.contains(b) and I.contains(ab)]


def ultrafilter_limit_ideal(ideals, principal_at: RIdeal, window):
    """The limit ideal {y : U_r(y) not in the ultrafilter}; at the principal
    ultrafilter generated by a listed ideal this is that ideal itself.

    Evaluated literally through the subbasis sets, then matched back into the
    ideal list by pointwise agreement on the window."""

    def in_limit(y):
        u_y = [I for I in ideals if not I.contains(y)]
        return principal_at not in u_y  # principal ultrafilter evaluation

    matches = [I for I in ideals
               if all(in_limit(y) == I.contains(y) for y in window)]
    if len(matches) != 1:
        raise AssertionError("limit ideal did not match a unique listed ideal")
    return matches[0]


# -- axiom checking ---------------------------------------------------------

def check_ideal_axioms(r: IdealSystem, H: Monoid, bound: int = 10,
                       sample_budget: int = 500, seed: int = 0,
                       max_subset_size: int = 3):
    """Per-axiom verdicts for Id1-Id4 with counterexamples on failure.

    Exhaustive over all subsets of the window universe up to
    ``max_subset_size`` when that universe has at most 12 elements, sampled
    (seeded) otherwise."""
    ctx = H.context
    universe = [g for g in ctx.window(bound) if H.contains(g)]
    exhaustive = len(universe) <= 13
    if exhaustive:
        subsets = [frozenset(c) for n in range(max_subset_size + 1)
                   for c in itertools.combinations(universe, n)]
    else:
        rng = random.Random(seed)
        subsets = [frozenset()]
        for _ in range(sample_budget):
            n = rng.randint(1, max_subset_size)
            subsets.append(frozenset(rng.sample(universe, min(n, len(universe)))))
        subsets = list(dict.fromkeys(subsets))
    if exhaustive:
        id2_subsets, id3_subsets = subsets, subsets
        id3_scalars, id3_points = universe, universe
    else:
        # cap the quadratic and cubic scans on big windows
        rng = random.Random(seed + 1)
        id2_subsets = subsets[:60]
        id3_subsets = subsets[:40]
        id3_scalars = rng.sample(universe, min(12, len(universe)))
        id3_points = rng.sample(universe, min(40, len(universe)))
    checks = []

    # Id1: X u {0} subset of X_r
    witness = None
    count = 0
    for X in subsets:
        pred = r.closure(X)
        count += 1
        for g in list(X) + [ctx.zero]:
            if not pred(g):
                witness = {"X": sorted(map(repr, X)), "g": repr(g)}
                break
        if witness:
            break
    checks.append(Check("Id1", witness is None, witness=witness,
                        exhaustive=exhaustive, n=count))

    # Id2: X subset of Y_r implies X_r subset of Y_r (inclusion on the window)
    witness = None
    count = 0
    for X in id2_subsets:
        x_pred = None
        for Y in id2_subsets:
            y_pred = r.closure(Y)
            if not all(y_pred(x) for x in X):
                continue
            count += 1
            if x_pred is None:
                x_pred = r.closure(X)
            bad = next((g for g in universe
                        if x_pred(g) and not y_pred(g)), None)
            if bad is not None:
                witness = {"X": sorted(map(repr, X)), "Y": sorted(map(repr, Y)),
                           "g": repr(bad)}
                break
        if witness:
            break
    checks.append(Check("Id2", witness is None, witness=witness,
                        exhaustive=exhaustive, n=count))

    # Id3: c*X_r == (cX)_r pointwise on the window.  X_r always contains 0,
    # so 0*X_r = {0}; for nonzero c multiplication is invertible in G.
    witness = None
    count = 0
    for X in id3_subsets:
        pred = r.closure(X)
        for c in id3_scalars:
            count += 1
            c_zero = (c is INF or c == ctx.zero)
            rhs_pred = r.closure(frozenset(ctx.op(c, x) for x in X))
            for g in id3_points:
                if c_zero:
                    lhs = (g is INF or g == ctx.zero)
                else:
                    lhs = pred(ctx.op(ctx.inv(c), g))
                if lhs != rhs_pred(g):
                    witness = {"X": sorted(map(repr, X)), "c": repr(c), "g": repr(g)}
                    break
            if witness:
                break
        if witness:
            break
    checks.append(Check("Id3", witness is None, witness=witness,
                        exhaustive=exhaustive, n=count))

    # Id4: cH subset of {c}_r on the window
    witness = None
    count = 0
    for c in universe:
        pred = r.closure(frozenset([c]))
        count += 1
        for h in universe:
            if not pred(ctx.op(c, h)):
                witness = {"c": repr(c), "h": repr(h)}
                break
        if witness:
            break
    checks.append(Check("Id4", witness is None, witness=witness,
                        exhaustive=exhaustive, n=count))
    return checks
