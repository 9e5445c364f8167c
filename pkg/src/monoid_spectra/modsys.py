"""Module systems on the quotient groupoid G: closure oracles on finite
subsets of G, the product-with-overmonoid-intersection construction, meets,
the finitary map, subbasis membership for the system space, finite-witness
extraction and a falsifier for finitariness of parameterized families."""

from __future__ import annotations

import itertools
import json
import random

from .fintop import FiniteSpace
from .monoid import INF, Monoid, Overmonoid, ParseError, monoid_from_json, sort_key
from .report import Check


class ModuleSystem:
    """Closure operator A -> A_r on finite subsets of G.

    ``closure(A)`` takes a frozenset and returns an exact membership predicate
    for A_r.  ``family`` is set when the system arose from a Delta family, so
    the finitariness falsifier can reach the symbolic description."""

    def __init__(self, name, context, closure, *, finitary=None,
                 idempotent=None, family=None):
        self.name = name
        self.context = context
        self._closure = closure
        self.finitary = finitary
        self.idempotent = idempotent
        self.family = family

    def closure(self, A):
        return self._closure(frozenset(A))

    def member(self, A, g) -> bool:
        return self.closure(A)(g)

    def __repr__(self):
        return f"ModuleSystem({self.name})"


def _nonzero(ctx, A):
    return tuple(sorted((a for a in A if a is not INF and a != ctx.zero),
                        key=sort_key))


def example16(H: Monoid) -> ModuleSystem:
    """A_r = G when 0 is in A, otherwise AH with 0 adjoined.  Satisfies Id1,
    M2, Id3 and M4 but not Id2."""
    ctx = H.context
    zero = ctx.zero

    def closure(A):
        has_zero = any(a is INF or a == zero for a in A)
        xs = _nonzero(ctx, A)

        def member(g):
            if has_zero:
                return ctx.contains(g)
            if g is INF or g == zero:
                return True
            return any(H.contains(ctx.op(ctx.inv(a), g)) for a in xs)

        return member

    return ModuleSystem("example16", ctx, closure, finitary=True,
                        idempotent=False)


class DeltaFamily:
    """Either a finite list of overmonoids or a parameterized family k -> S_k.

    A parameterized family carries a truncation default ``kmax``, an optional
    monotonicity declaration ("decreasing" means S_1 >= S_2 >= ...) and an
    optional limit overmonoid equal to the intersection of all members; the
    declarations are trusted for evaluation but rechecked pointwise by
    ``check_family``."""

    def __init__(self, members=None, *, member_fn=None, kmax=None,
                 monotone=None, limit=None, name="Delta"):
        self.members = list(members) if members is not None else None
        self.member_fn = member_fn
        self.kmax = kmax
        self.monotone = monotone
        self.limit = limit
        self.name = name
        if self.members is not None:
            if not self.members:
                raise ValueError("a Delta family must be nonempty")
        elif member_fn is None:
            raise ValueError("a Delta family needs members or a member rule")

    @property
    def finite(self):
        return self.members is not None

    def member(self, k) -> Overmonoid:
        if self.finite:
            return self.members[k]
        return self.member_fn(k)

    def truncated(self, k) -> list:
        if self.finite:
            return list(self.members)
        return [self.member_fn(i) for i in range(1, k + 1)]


def r_delta(delta: DeltaFamily, ctx, truncate=None) -> ModuleSystem:
    """The system A -> intersection over S in Delta of SA.

    For finite A and finite Delta this is exact: g is in A_r iff for every S
    some nonzero a in A has a^{-1} g in S.  A parameterized decreasing family
    with a declared limit L = intersection of the S_k is also exact, since a
    witness a for S_k works for every smaller index, so a single a must land
    in L.  Otherwise evaluation is truncated at ``truncate`` (or the family's
    kmax) and the resulting system is only a bounded upper approximation."""
    exact = True
    if delta.finite:
        mems = delta.truncated(0)
    elif truncate is None and delta.monotone == "decreasing" and delta.limit is not None:
        mems = [delta.limit]
    else:
        k = truncate if truncate is not None else delta.kmax
        if k is None:
            raise ValueError("parameterized family needs a truncation or a limit")
        mems = delta.truncated(k)
        exact = False
    zero = ctx.zero

    def closure(A):
        xs = _nonzero(ctx, A)

        def member(g):
            if g is INF or g == zero:
                return True
            if not xs:
                return False
            return all(any(S.contains(ctx.op(ctx.inv(a), g)) for a in xs)
                       for S in mems)

        return member

    name = f"r_{delta.name}" + ("" if exact else f"|k<={len(mems)}")
    return ModuleSystem(name, ctx, closure, idempotent=True,
                        finitary=delta.finite or None, family=delta)


def iota(S: Overmonoid, name=None) -> ModuleSystem:
    """The system of the singleton family {S}: A -> SA (with 0)."""
    r = r_delta(DeltaFamily([S], name=name or (S.name or "S")), S.context)
    r.finitary = True
    return r


def meet(systems) -> ModuleSystem:
    """Pointwise intersection of closures; the infimum for the coarser-than
    order."""
    systems = list(systems)
    if not systems:
        raise ValueError("meet of an empty list")
    ctx = systems[0].context

    def closure(A):
        preds = [r.closure(A) for r in systems]

        def member(g):
            return all(p(g) for p in preds)

        return member

    name = "^".join(r.name for r in systems)
    return ModuleSystem(f"meet({name})", ctx, closure)


def phi(r: ModuleSystem) -> ModuleSystem:
    """Finitary interior: closure of A is the union of closures of the finite
    subsets of A.  Idempotent, and the identity exactly on finitary systems."""

    def closure(A):
        xs = tuple(sorted(A, key=sort_key))
        preds = [r.closure(frozenset(c)) for n in range(len(xs) + 1)
                 for c in itertools.combinations(xs, n)]

        def member(g):
            return any(p(g) for p in preds)

        return member

    return ModuleSystem(f"phi({r.name})", r.context, closure, finitary=True)


# -- axiom checking ----------------------------------------------------------

def _sample_subsets(universe, *, exhaustive_limit=12, max_subset_size=3,
                    sample_budget=300, seed=0):
    if len(universe) <= exhaustive_limit:
        subs = [frozenset(c) for n in range(max_subset_size + 1)
                for c in itertools.combinations(universe, n)]
        return subs, True
    rng = random.Random(seed)
    subs = [frozenset()]
    for _ in range(sample_budget):
        n = rng.randint(1, max_subset_size)
        subs.append(frozenset(rng.sample(universe, min(n, len(universe)))))
    return list(dict.fromkeys(subs)), False


def check_module_axioms(r: ModuleSystem, H, bound: int = 4,
                        sample_budget: int = 300, seed: int = 0,
                        max_subset_size: int = 3):
    """Id1 / M2 / Id3 / M4 verdicts on windowed data.  Subsets range over the
    G-window (not only H), since module systems act on the groupoid."""
    ctx = r.context
    universe = ctx.window(bound)
    h_members = [g for g in universe if H.contains(g)
                 and g is not INF and g != ctx.zero]
    nonzero = [g for g in universe if g is not INF and g != ctx.zero]
    subsets, exhaustive = _sample_subsets(
        universe, max_subset_size=max_subset_size,
        sample_budget=sample_budget, seed=seed)
    if exhaustive:
        id3_subsets, id3_scalars, id3_points = subsets, nonzero, universe
        m4_scalars = h_members
    else:
        # cap the cubic Id3 scan and the M4 translator set on big windows
        rng = random.Random(seed + 1)
        id3_subsets = subsets[:40]
        id3_scalars = sorted(rng.sample(nonzero, min(12, len(nonzero))),
                             key=sort_key)
        id3_points = sorted(rng.sample(universe, min(40, len(universe))),
                            key=sort_key)
        m4_scalars = sorted(rng.sample(h_members, min(12, len(h_members))),
                            key=sort_key) if h_members else []
    checks = []

    # Id1: A u {0} subset of A_r
    witness = None
    count = 0
    for A in subsets:
        pred = r.closure(A)
        count += 1
        for g in list(A) + [ctx.zero]:
            if not pred(g):
                witness = {"A": sorted(map(repr, A)), "g": repr(g)}
                break
        if witness:
            break
    checks.append(Check("Id1", witness is None, witness=witness,
                        exhaustive=exhaustive, n=count))

    # M2: A subset of B implies A_r subset of B_r on the window
    witness = None
    count = 0
    for A in subsets:
        pred_a = r.closure(A)
        for B in subsets:
            if not A <= B or A == B:
                continue
            count += 1
            pred_b = r.closure(B)
            bad = next((g for g in universe if pred_a(g) and not pred_b(g)), None)
            if bad is not None:
                witness = {"A": sorted(map(repr, A)), "B": sorted(map(repr, B)),
                           "g": repr(bad)}
                break
        if witness:
            break
    checks.append(Check("M2", witness is None, witness=witness,
                        exhaustive=exhaustive, n=count))

    # Id3: c A_r = (cA)_r for nonzero c; multiplication by c is invertible
    witness = None
    count = 0
    for A in id3_subsets:
        pred = r.closure(A)
        for c in id3_scalars:
            count += 1
            rhs = r.closure(frozenset(ctx.op(c, a) for a in A))
            for g in id3_points:
                lhs = (g is INF or g == ctx.zero) or pred(ctx.op(ctx.inv(c), g))
                if lhs != rhs(g):
                    witness = {"A": sorted(map(repr, A)), "c": repr(c),
                               "g": repr(g)}
                    break
            if witness:
                break
        if witness:
            break
    checks.append(Check("Id3", witness is None, witness=witness,
                        exhaustive=exhaustive, n=count))

    # M4: H A_r = A_r; the inclusion A_r subset of H A_r is free since 1 in H
    witness = None
    count = 0
    for A in subsets:
        pred = r.closure(A)
        count += 1
        for g in (universe if exhaustive else id3_points):
            if not pred(g):
                continue
            for h in m4_scalars:
                if not pred(ctx.op(h, g)):
                    witness = {"A": sorted(map(repr, A)), "h": repr(h),
                               "g": repr(g)}
                    break
            if witness:
                break
        if witness:
            break
    checks.append(Check("M4", witness is None, witness=witness,
                        exhaustive=exhaustive, n=count))
    return checks


def check_id2(r: ModuleSystem, bound: int = 4, sample_budget: int = 200,
              seed: int = 0, max_subset_size: int = 2):
    """Id2: A subset of B_r implies A_r subset of B_r.  Returns the verdict
    with a counterexample when it fails."""
    ctx = r.context
    universe = ctx.window(bound)
    subsets, exhaustive = _sample_subsets(
        universe, max_subset_size=max_subset_size,
        sample_budget=sample_budget, seed=seed)
    witness = None
    count = 0
    for B in subsets:
        pred_b = r.closure(B)
        for A in subsets:
            if not all(pred_b(a) for a in A):
                continue
            count += 1
            pred_a = r.closure(A)
            bad = next((g for g in universe if pred_a(g) and not pred_b(g)), None)
            if bad is not None:
                witness = {"A": sorted(map(repr, A)), "B": sorted(map(repr, B)),
                           "g": repr(bad)}
                break
        if witness:
            break
    return Check("Id2", witness is None, witness=witness,
                 exhaustive=exhaustive, n=count)


def check_idempotent(r: ModuleSystem, bound: int = 4, sample_budget: int = 200,
                     seed: int = 0, max_subset_size: int = 2):
    """(A_r)_r = A_r tested through the window slice of A_r.  The slice is a
    subset of A_r, so its closure sits inside (A_r)_r; any point of it outside
    A_r is an honest counterexample, and agreement on all samples is reported
    as a bounded pass."""
    ctx = r.context
    universe = ctx.window(bound)
    subsets, exhaustive = _sample_subsets(
        universe, max_subset_size=max_subset_size,
        sample_budget=sample_budget, seed=seed)
    witness = None
    count = 0
    for A in subsets:
        pred = r.closure(A)
        slice_ = frozenset(g for g in universe if pred(g))
        pred2 = r.closure(slice_)
        count += 1
        bad = next((g for g in universe if pred2(g) and not pred(g)), None)
        if bad is not None:
            witness = {"A": sorted(map(repr, A)), "g": repr(bad)}
            break
    return Check("idempotent", witness is None, witness=witness,
                 exhaustive=False, n=count, bound=bound,
                 detail="window slice approximation")


def is_finitary(r: ModuleSystem, bound: int = 4, sample_budget: int = 200,
                seed: int = 0, kmax: int = 6) -> Check:
    """Bounded finitariness verdict: r agrees with phi(r) on sampled finite
    sets, and no symbolic counterexample exists in an attached parameterized
    family up to index kmax."""
    ctx = r.context
    universe = ctx.window(bound)
    subsets, _ = _sample_subsets(universe, sample_budget=sample_budget,
                                 seed=seed)
    fin = phi(r)
    count = 0
    for A in subsets:
        pred = r.closure(A)
        pred_f = fin.closure(A)
        count += 1
        bad = next((g for g in universe if pred(g) != pred_f(g)), None)
        if bad is not None:
            return Check("finitary", False,
                         witness={"A": sorted(map(repr, A)), "g": repr(bad)},
                         exhaustive=False, n=count, bound=bound)
    if r.family is not None and not r.family.finite:
        found = falsify_finitary(r.family, ctx, kmax)
        if found is not None:
            return Check("finitary", False, witness=found,
                         exhaustive=False, n=count, bound=kmax)
    return Check("finitary", True, exhaustive=False, n=count, bound=bound)


# -- the system space --------------------------------------------------------

def subbasis_membership(r: ModuleSystem, S, g=None) -> bool:
    """r in U_S iff 1 in S_r; the variant U_{S,g} asks g in S_r instead."""
    S = frozenset(S)
    if not S:
        raise ValueError("U_S is defined for nonempty S only")
    target = r.context.one if g is None else g
    return r.member(S, target)


def witness_pool(ctx, bound: int = 4, seed: int = 0, n_random: int = 100,
                 max_random: int = 4, include_zero: bool = False):
    """Deterministic pool of finite subsets of the G-window: all subsets of
    size <= 2 plus seeded random subsets of size <= max_random."""
    window = ctx.window(bound)
    if not include_zero:
        window = [g for g in window if g is not INF and g != ctx.zero]
    pool = [frozenset(c) for n in (1, 2)
            for c in itertools.combinations(window, n)]
    rng = random.Random(seed)
    for _ in range(n_random):
        n = rng.randint(1, max_random)
        pool.append(frozenset(rng.sample(window, min(n, len(window)))))
    return list(dict.fromkeys(pool))


class SystemSpace:
    """A curated finite carrier of module systems with the subbasis U_S
    evaluated over a witness pool of finite subsets."""

    def __init__(self, systems, pool):
        self.systems = list(systems)
        self.pool = list(pool)

    def space(self) -> FiniteSpace:
        labels = [r.name for r in self.systems]
        subbasis = []
        names = []
        for S in self.pool:
            subbasis.append(frozenset(
                i for i, r in enumerate(self.systems)
                if subbasis_membership(r, S)))
            names.append("U_" + "{" + ",".join(map(repr, sorted(S, key=sort_key))) + "}")
        return FiniteSpace(labels, subbasis, subbasis_names=names)

    def t0_witnesses(self):
        """For each pair of carrier systems, some pool set S with exactly one
        of them in U_S; None marks an undistinguished pair."""
        out = {}
        for i, j in itertools.combinations(range(len(self.systems)), 2):
            found = None
            for S in self.pool:
                if (subbasis_membership(self.systems[i], S)
                        != subbasis_membership(self.systems[j], S)):
                    found = S
                    break
            out[(i, j)] = found
        return out


def ultrafilter_limit_system(systems, principal_index: int) -> ModuleSystem:
    """S -> {g : U_{S,g} in the ultrafilter}, evaluated literally over the
    carrier for the principal ultrafilter at the given member."""
    systems = list(systems)
    r0 = systems[principal_index]

    def closure(A):
        def member(g):
            large = [i for i, r in enumerate(systems) if r.member(A, g)]
            return principal_index in large

        return member

    return ModuleSystem(f"limit@{r0.name}", r0.context, closure)


# -- finite witnesses and the finitariness falsifier -------------------------

def extract_finite_witness(delta: DeltaFamily, ctx, A, x):
    """For x in A_{r_Delta} (finite Delta), pick for each S some a in A with
    x in aS; the picks form an F with x in F_{r_Delta} and |F| <= |Delta|."""
    if not delta.finite:
        raise ValueError("finite witness extraction needs a finite family")
    xs = _nonzero(ctx, A)
    picks = []
    for S in delta.members:
        a = next((a for a in xs if S.contains(ctx.op(ctx.inv(a), x))), None)
        if a is None:
            raise ValueError("x is not in the closure of A")
        picks.append(a)
    F = frozenset(picks)
    if not r_delta(delta, ctx).member(F, x):
        raise AssertionError("extracted witness failed the recheck")
    return F


def falsify_finitary(delta: DeltaFamily, ctx, kmax: int = 6, bound: int = 6):
    """Search for the non-finitariness certificate of a parameterized family:
    elements x_k in S_k missed by every earlier member.  On success the set
    A = {x_k^{-1}} has the identity in its closure over indices <= kmax while
    no finite part over indices <= kmax - 1 does; returns the witness record,
    or None when no certificate exists up to kmax."""
    if delta.finite:
        return None
    window = [g for g in ctx.window(bound) if g is not INF and g != ctx.zero]
    members = [delta.member(k) for k in range(1, kmax + 1)]
    xs = []
    for k in range(1, kmax + 1):
        S_k = members[k - 1]
        later = members[k:]
        x = next((g for g in window
                  if S_k.contains(g) and not any(S.contains(g) for S in later)),
                 None)
        if x is None:
            return None
        xs.append(x)
    A = frozenset(ctx.inv(x) for x in xs)
    target = ctx.one
    truncated = r_delta(delta, ctx, truncate=kmax)
    if not truncated.member(A, target):
        return None
    F = frozenset(ctx.inv(x) for x in xs[:kmax - 1])
    if truncated.member(F, target):
        return None
    return {"A": sorted(map(repr, A)), "target": repr(target),
            "separating_index": kmax}


def meet_finite_witness(systems, A, x):
    """For finitary systems r_i and x in A_{meet}, a finite E as the union of
    per-system finite witnesses E^{(r_i)} found by size-ordered search."""
    systems = list(systems)
    xs = tuple(sorted(A, key=sort_key))
    union = set()
    for r in systems:
        if r.finitary is False:
            raise ValueError(f"{r.name} is not finitary")
        found = None
        for n in range(len(xs) + 1):
            for comb in itertools.combinations(xs, n):
                if r.member(frozenset(comb), x):
                    found = comb
                    break
            if found is not None:
                break
        if found is None:
            raise ValueError("x is not in the closure of A")
        union.update(found)
    E = frozenset(union)
    if not meet(systems).member(E, x):
        raise AssertionError("combined witness failed the recheck")
    return E


# -- the overmonoid embedding ------------------------------------------------

def embedding_checks(overmonoids, ctx, bound: int = 4, seed: int = 0,
                     n_sets: int = 40):
    """The map S -> r_{{S}} on a finite overmonoid carrier: injectivity (the
    closure of {1} recovers S), the preimage law for U_A, and the image law
    for U(x)."""
    overmonoids = list(overmonoids)
    systems = [iota(S) for S in overmonoids]
    window = [g for g in ctx.window(bound) if g is not INF and g != ctx.zero]
    rng = random.Random(seed)
    checks = []

    # injectivity: the closure of the identity is S itself
    witness = None
    count = 0
    for S, r in zip(overmonoids, systems):
        pred = r.closure(frozenset([ctx.one]))
        count += 1
        bad = next((g for g in window if pred(g) != S.contains(g)), None)
        if bad is not None:
            witness = {"S": repr(S), "g": repr(bad)}
            break
    checks.append(Check("iota-recovers-S", witness is None, witness=witness,
                        exhaustive=False, n=count, bound=bound))

    witness = None
    if witness is None:
        reprs = []
        for r in systems:
            pred = r.closure(frozenset([ctx.one]))
            reprs.append(frozenset(g for g in window if pred(g)))
        if len(set(reprs)) != len(reprs):
            i = next(i for i in range(len(reprs)) for j in range(i)
                     if reprs[i] == reprs[j])
            witness = {"S": repr(overmonoids[i])}
    checks.append(Check("iota-injective", witness is None, witness=witness,
                        exhaustive=False, n=len(systems), bound=bound))

    # preimage law: 1 in A_{r_{{S}}} iff some a in A has a^{-1} in S
    witness = None
    count = 0
    sets = [frozenset(rng.sample(window, rng.randint(1, 3)))
            for _ in range(n_sets)]
    for A in sets:
        count += 1
        for S, r in zip(overmonoids, systems):
            left = subbasis_membership(r, A)
            right = any(S.contains(ctx.inv(a)) for a in A)
            if left != right:
                witness = {"A": sorted(map(repr, A)), "S": repr(S)}
                break
        if witness:
            break
    checks.append(Check("preimage-law", witness is None, witness=witness,
                        exhaustive=False, n=count, bound=bound))

    # image law: S contains x iff 1 in ({x^{-1}})_{r_{{S}}}
    witness = None
    count = 0
    for x in window:
        count += 1
        for S, r in zip(overmonoids, systems):
            left = S.contains(x)
            right = subbasis_membership(r, frozenset([ctx.inv(x)]))
            if left != right:
                witness = {"x": repr(x), "S": repr(S)}
                break
        if witness:
            break
    checks.append(Check("image-law", witness is None, witness=witness,
                        exhaustive=False, n=count, bound=bound))
    return checks


# -- family description files ------------------------------------------------

def _scaled_ray(ray, k):
    """Index-k generator of an adjoin-ray family: the negative part of the ray
    stays fixed and the positive part is scaled by k."""
    return tuple(c if c < 0 else k * c for c in ray)


def family_from_json(text: str):
    """Parse a family description: {"family": "adjoin-ray", "base": ...,
    "ray": [...], "scale": "k"}.  The base is a monoid object or an
    "affine:x,y;x,y" shorthand.  Returns (base monoid, DeltaFamily)."""
    try:
        data = json.loads(text)
    except json.JSONDecodeError as e:
        raise ParseError(f"invalid JSON: {e.msg}", line=e.lineno) from e
    if not isinstance(data, dict):
        raise ParseError("top-level value must be an object")
    if data.get("family") != "adjoin-ray":
        raise ParseError("family must be 'adjoin-ray'", field="family")
    base = data.get("base")
    if isinstance(base, str) and base.startswith("affine:"):
        gens = [[int(c) for c in v.split(",")] for v in base[7:].split(";")]
        H = Monoid.affine(gens)
    elif isinstance(base, dict):
        H = monoid_from_json(json.dumps(base))
        if H.kind != "affine":
            raise ParseError("base must be an affine monoid", field="base")
    else:
        raise ParseError("expected a monoid object or affine shorthand",
                         field="base")
    ray = data.get("ray")
    if (not isinstance(ray, list) or len(ray) != H.dim
            or not all(isinstance(c, int) for c in ray)):
        raise ParseError(f"expected an integer vector of length {H.dim}",
                         field="ray")
    if data.get("scale") != "k":
        raise ParseError("scale must be 'k'", field="scale")
    ctx = H.context
    base_over = Overmonoid(ctx, gens=H.generators, name="base")

    def member_fn(k):
        return Overmonoid(ctx, gens=H.generators + (_scaled_ray(ray, k),),
                          name=f"S_{k}")

    delta = DeltaFamily(member_fn=member_fn, kmax=6, monotone="decreasing",
                        limit=base_over, name="adjoin-ray")
    return H, delta


def family_from_file(path):
    with open(path, "r", encoding="utf-8") as fh:
        return family_from_json(fh.read())


def check_family(delta: DeltaFamily, ctx, bound: int = 4, kmax: int = 6):
    """Pointwise recheck of a parameterized family's declarations: members
    decrease along the index and the declared limit sits inside every
    member."""
    checks = []
    if delta.finite:
        return checks
    window = [g for g in ctx.window(bound) if g is not INF]
    witness = None
    count = 0
    if delta.monotone == "decreasing":
        for k in range(1, kmax):
            S_k, S_next = delta.member(k), delta.member(k + 1)
            for g in window:
                count += 1
                if S_next.contains(g) and not S_k.contains(g):
                    witness = {"k": k, "g": repr(g)}
                    break
            if witness:
                break
        checks.append(Check("family-decreasing", witness is None,
                            witness=witness, exhaustive=False, n=count,
                            bound=bound))
    if delta.limit is not None:
        witness = None
        count = 0
        for k in range(1, kmax + 1):
            S_k = delta.member(k)
            for g in window:
                count += 1
                if delta.limit.contains(g) and not S_k.contains(g):
                    witness = {"k": k, "g": repr(g)}
                    break
            if witness:
                break
        checks.append(Check("family-limit-lower-bound", witness is None,
                            witness=witness, exhaustive=False, n=count,
                            bound=bound))
    return checks
