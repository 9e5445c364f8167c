"""Command line verification suites.

Each suite binds a named claim to executable checks over a monoid read from a
JSON description file.  Exit codes: 0 all checks pass, 1 a check failed,
2 input could not be parsed, 3 the realization is unsupported for the suite.
"""

from __future__ import annotations

import argparse
import os
import random
import sys

from .fintop import homeomorphic, poset_dot
from .idealsys import (check_ideal_axioms, enumerate_ideals, enumerate_primes,
                       ideal_space_subbasis, o_set, is_prime, s_system,
                       signature_window, spec_subbasis,
                       ultrafilter_limit_ideal)
from .intgeom import UnsupportedRealization
from .modsys import (DeltaFamily, SystemSpace, check_family, check_id2,
                     check_idempotent, check_module_axioms, example16,
                     extract_finite_witness, falsify_finitary,
                     family_from_file, embedding_checks, iota, is_finitary,
                     meet, meet_finite_witness, r_delta,
                     ultrafilter_limit_system, witness_pool)
from .monoid import INF, ParseError, as_overmonoid, localize, monoid_from_file
from .report import Check, SuiteReport
from .valuation import (b_complement_law, delta, delta_dot, delta_laws,
                        enumerate_overmonoids, enumerate_zar, is_s_pruefer,
                        is_valuation, overmonoid_space, surjectivity_witness,
                        ultrafilter_limit_valuation)

SUITES = ("axioms", "spec", "ideals", "zar", "pruefer", "pronconst",
          "main1", "main2", "prop1", "prop2", "corollaries")

CLAIMS = {
    "axioms": "the s-system satisfies the closure axioms Id1-Id4",
    "spec": "prime s-ideals form a T0, sober, spectral-at-finite-scale space",
    "ideals": "bounded s-ideals are closed under the monoid action and "
              "separated by the U(x) subbasis",
    "zar": "the valuation carrier is T0 and spectral at finite scale, and "
           "principal ultrafilter limits fix its points",
    "pruefer": "the domination map is continuous and surjective, and a "
               "homeomorphism on instances whose localizations are valuations",
    "pronconst": "an s-ideal is prime exactly when it avoids every O_{a,b}, "
                 "and principal ultrafilter limits fix ideals",
    "main1": "module systems satisfy Id1/M2/Id3/M4, the system carrier is "
             "T0 under U_S, and principal ultrafilter limits fix systems",
    "main2": "intersection systems of finite families are finitary with "
             "extractable witnesses; parameterized families can fail "
             "finitariness with a certificate",
    "prop1": "the overmonoid carrier embeds into the system carrier "
             "compatibly with both subbases",
    "prop2": "meets of finitary systems are finitary with combined finite "
             "witnesses",
    "corollaries": "intersection systems are idempotent and finitary on "
                   "bounded samples",
}


def _curated_overmonoids(H, bound):
    """Finite overmonoid carrier: all overmonoids for numerical H, the
    localizations at the enumerated primes otherwise."""
    if H.kind == "numerical":
        return enumerate_overmonoids(H)
    out = [as_overmonoid(H, name="H")]
    for P in enumerate_primes(H, bound):
        if P.ideal.contains(H.one):
            continue
        loc = localize(H, P.ideal)
        loc.name = f"H_{P.name}"
        if not any(all(loc.contains(g) == S.contains(g)
                       for g in H.context.window(bound))
                   for S in out):
            out.append(loc)
    return out


def _curated_systems(H, bound):
    systems = [iota(S) for S in _curated_overmonoids(H, bound)]
    systems.append(example16(H))
    return systems


def _space_checks(space, bound, prefix=""):
    return [
        Check(prefix + "t0", space.is_t0(), witness=None if space.is_t0()
              else {"profiles": "coincide"}, exhaustive=False, bound=bound),
        Check(prefix + "sober", space.is_sober(),
              witness=None if space.is_sober() else {"closed": "no generic"},
              exhaustive=False, bound=bound),
        Check(prefix + "spectral", space.is_spectral_finite(),
              witness=None if space.is_spectral_finite() else {"t0": False},
              exhaustive=False, bound=bound),
    ]


# -- suites -------------------------------------------------------------------

def suite_axioms(H, bound, seed):
    rep = SuiteReport("axioms", CLAIMS["axioms"], seed=seed, bound=bound)
    rep.extend(check_ideal_axioms(s_system(H), H, bound=bound, seed=seed),
               prefix="AXIOM")
    return rep, None


def suite_spec(H, bound, seed):
    rep = SuiteReport("spec", CLAIMS["spec"], seed=seed, bound=bound)
    primes = enumerate_primes(H, bound)
    rep.add(Check("primes-enumerated", True, exhaustive=False,
                  n=len(primes), bound=bound,
                  detail=" ".join(p.name for p in primes)))
    space = spec_subbasis(H, primes, bound)
    rep.extend(_space_checks(space, bound))
    return rep, poset_dot(space, name="spec")


def suite_ideals(H, bound, seed):
    rep = SuiteReport("ideals", CLAIMS["ideals"], seed=seed, bound=bound)
    r = s_system(H)
    ideals = enumerate_ideals(H, r, bound)
    rep.add(Check("ideals-enumerated", True, exhaustive=False,
                  n=len(ideals), bound=bound))
    ctx = H.context
    window = [g for g in ctx.window(bound) if H.contains(g)]
    witness = None
    for I in ideals:
        for g in window:
            if not I.contains(g):
                continue
            for h in H.generators:
                if not I.contains(ctx.op(g, h)):
                    witness = {"I": repr(I), "g": repr(g), "h": repr(h)}
                    break
            if witness:
                break
        if witness:
            break
    rep.add(Check("ideals-absorb-action", witness is None, witness=witness,
                  exhaustive=False, n=len(ideals), bound=bound))
    space = ideal_space_subbasis(ideals, H, bound)
    rep.extend(_space_checks(space, bound))
    return rep, poset_dot(space, name="ideals")


def suite_pronconst(H, bound, seed):
    rep = SuiteReport("pronconst", CLAIMS["pronconst"], seed=seed, bound=bound)
    r = s_system(H)
    ideals = enumerate_ideals(H, r, bound)
    ctx = H.context
    window = [g for g in ctx.window(2 * bound) if H.contains(g)]
    pairs = [(a, b) for a in window for b in window
             if a is not INF and a != ctx.zero
             and b is not INF and b != ctx.zero]
    in_some_o = set()
    for a, b in pairs:
        for I in o_set(a, b, ideals, H):
            in_some_o.add(id(I))
    witness = None
    flagged = []
    for I in ideals:
        if I.contains(H.one):
            continue  # the improper ideal is outside the equivalence
        prime = is_prime(I, window)
        avoids = id(I) not in in_some_o
        if prime != avoids:
            witness = {"I": repr(I), "prime": prime, "avoids-O": avoids}
            break
        if avoids:
            flagged.append(repr(I))
    rep.add(Check("prime-iff-no-O", witness is None, witness=witness,
                  exhaustive=False, n=len(ideals), bound=2 * bound,
                  detail="flagged: " + "; ".join(flagged)))
    small = [g for g in signature_window(H, bound) if H.contains(g)]
    witness = None
    for I in ideals:
        if ultrafilter_limit_ideal(ideals, I, small) is not I:
            witness = {"I": repr(I)}
            break
    rep.add(Check("principal-limit-identity", witness is None,
                  witness=witness, exhaustive=False, n=len(ideals),
                  bound=bound))
    space = ideal_space_subbasis(ideals, H, bound)
    rep.add(Check("ideal-space-t0", space.is_t0(),
                  witness=None if space.is_t0() else {"profiles": "coincide"},
                  exhaustive=False, n=space.n, bound=bound))
    return rep, None


def suite_zar(H, bound, seed):
    rep = SuiteReport("zar", CLAIMS["zar"], seed=seed, bound=bound)
    descriptors = enumerate_zar(H, bound=bound)
    carrier = [v.to_overmonoid() for v in descriptors]
    rep.add(Check("zar-enumerated", True, exhaustive=False,
                  n=len(carrier), bound=bound,
                  detail=" ".join(V.name for V in carrier)))
    for V in carrier:
        rep.add(Check(f"contains-H[{V.name}]",
                      all(V.contains(g) for g in H.generators),
                      witness={"V": V.name}
                      if not all(V.contains(g) for g in H.generators) else None,
                      exhaustive=True))
        rep.add(is_valuation(V, bound))
    rep.add(b_complement_law(carrier, H.context, bound))
    space = overmonoid_space(carrier, H.context, bound)
    rep.extend(_space_checks(space, bound))
    witness = None
    for i, V in enumerate(carrier):
        if ultrafilter_limit_valuation(carrier, i, H.context, bound) is not V:
            witness = {"V": V.name}
            break
    rep.add(Check("principal-limit-identity", witness is None,
                  witness=witness, exhaustive=False, n=len(carrier),
                  bound=bound))
    return rep, poset_dot(space, name="zar")


def suite_pruefer(H, bound, seed):
    rep = SuiteReport("pruefer", CLAIMS["pruefer"], seed=seed, bound=bound)
    primes = enumerate_primes(H, bound)
    carrier = [v.to_overmonoid() for v in enumerate_zar(H, bound=bound)]
    images = [delta(H, V, primes, bound) for V in carrier]
    rep.add(Check("delta-total", True, exhaustive=False, n=len(carrier),
                  bound=bound,
                  detail="; ".join(f"{V.name}->{P.name}"
                                   for V, P in zip(carrier, images))))
    witness = None
    for P in primes:
        try:
            surjectivity_witness(H, P, bound=bound)
        except ValueError:
            witness = {"P": P.name}
            break
    rep.add(Check("delta-surjective", witness is None, witness=witness,
                  exhaustive=False, n=len(primes), bound=bound))
    rep.extend(delta_laws(H, bound=bound))
    sp = is_s_pruefer(H, bound)
    rep.add(Check("s-pruefer-instance", True, exhaustive=False, bound=bound,
                  detail="PASS" if sp.ok
                  else f"FAIL {sp.witness} (homeomorphism not claimed)"))
    if sp.ok:
        zar_space = overmonoid_space(carrier, H.context, bound)
        spec_space = spec_subbasis(H, primes, bound)
        injective = len({id(P) for P in images}) == len(images)
        rep.add(Check("delta-injective", injective,
                      witness=None if injective else {"images": "collide"},
                      exhaustive=False, n=len(carrier), bound=bound))
        iso = homeomorphic(zar_space, spec_space)
        rep.add(Check("delta-homeomorphism", iso is not None,
                      witness=None if iso is not None
                      else {"posets": "not isomorphic"},
                      exhaustive=False, n=zar_space.n, bound=bound))
    else:
        pair = next(((i, j) for i in range(len(images))
                     for j in range(i + 1, len(images))
                     if images[i] is images[j]), None)
        rep.add(Check("delta-injectivity-instance", True,
                      exhaustive=False, n=len(carrier), bound=bound,
                      detail="injective on this carrier" if pair is None else
                      f"not injective: {carrier[pair[0]].name} and "
                      f"{carrier[pair[1]].name} map to {images[pair[0]].name}"))
    return rep, delta_dot(H, bound=bound)


def suite_main1(H, bound, seed):
    rep = SuiteReport("main1", CLAIMS["main1"], seed=seed, bound=bound)
    ctx = H.context
    systems = _curated_systems(H, bound)
    for r in systems:
        checks = check_module_axioms(r, H, bound=bound, seed=seed)
        for c in checks:
            c.name = f"{r.name}:{c.name}"
        rep.extend(checks, prefix="AXIOM")

    e16 = example16(H)
    window = ctx.window(bound)
    proper = any(not H.contains(g) for g in window)
    pred1 = e16.closure(frozenset([ctx.one]))
    ok_h = all(pred1(g) == H.contains(g) for g in window)
    slice_ = frozenset(g for g in window if pred1(g))
    pred2 = e16.closure(slice_)
    ok_g = all(pred2(g) for g in window)
    if proper:
        strict = any(pred2(g) and not pred1(g) for g in window)
        ok = ok_h and ok_g and strict
        rep.add(Check("example16-id2-counterexample", ok,
                      witness=None if ok else {"closure-of-identity": ok_h,
                                               "reclosure-full": ok_g,
                                               "strict": strict},
                      exhaustive=False, bound=bound,
                      detail="reclosing the closure of the identity fills G"))
        c = check_id2(e16, bound=min(bound, 4), sample_budget=80, seed=seed)
        rep.add(Check("example16-id2-fails", not c.ok,
                      witness=None if not c.ok
                      else {"expected": "an Id2 failure"},
                      exhaustive=False, n=c.n, bound=min(bound, 4)))
    else:
        rep.add(Check("example16-id2-counterexample", ok_h and ok_g,
                      witness=None if (ok_h and ok_g)
                      else {"closure-of-identity": ok_h,
                            "reclosure-full": ok_g},
                      exhaustive=False, bound=bound,
                      detail="H fills G on the window, so the Id2 gap is "
                             "vacuous here"))

    pool = witness_pool(ctx, bound=min(bound, 4), seed=seed,
                        include_zero=True)
    space = SystemSpace(systems, pool)
    pairs = space.t0_witnesses()
    missing = [k for k, v in pairs.items() if v is None]
    rep.add(Check("system-carrier-t0", not missing,
                  witness=None if not missing else
                  {"pair": f"{systems[missing[0][0]].name},"
                           f"{systems[missing[0][1]].name}"},
                  exhaustive=False, n=len(pairs), bound=min(bound, 4)))

    rng = random.Random(seed)
    g_window = [g for g in window if g is not INF and g != ctx.zero]
    probes = [(rng.choice(pool), rng.choice(g_window)) for _ in range(200)]
    witness = None
    count = 0
    for i, r in enumerate(systems):
        limit = ultrafilter_limit_system(systems, i)
        for S, g in probes:
            count += 1
            if limit.member(S, g) != r.member(S, g):
                witness = {"r": r.name, "S": sorted(map(repr, S)),
                           "g": repr(g)}
                break
        if witness:
            break
    rep.add(Check("principal-limit-identity", witness is None,
                  witness=witness, exhaustive=False, n=count, bound=bound))
    return rep, poset_dot(space.space(), name="systems")


def suite_main2(H, family, bound, seed):
    rep = SuiteReport("main2", CLAIMS["main2"], seed=seed, bound=bound)
    ctx = H.context
    overs = _curated_overmonoids(H, bound)
    rng = random.Random(seed)
    g_window = [g for g in ctx.window(min(bound, 4))
                if g is not INF and g != ctx.zero]
    witness = None
    done = 0
    attempts = 0
    while done < 100 and attempts < 2000 and witness is None:
        attempts += 1
        members = rng.sample(overs, rng.randint(1, len(overs)))
        delta_fam = DeltaFamily(members, name="sample")
        r = r_delta(delta_fam, ctx)
        A = frozenset(rng.sample(g_window, rng.randint(1, 3)))
        pred = r.closure(A)
        hits = [g for g in g_window if pred(g)]
        if not hits:
            continue
        x = rng.choice(hits)
        F = extract_finite_witness(delta_fam, ctx, A, x)
        if len(F) > len(members) or not r.member(F, x):
            witness = {"A": sorted(map(repr, A)), "x": repr(x),
                       "F": sorted(map(repr, F))}
            break
        done += 1
    ok = witness is None and done >= 100
    if not ok and witness is None:
        witness = {"instances": done, "attempts": attempts}
    rep.add(Check("finite-witness-extraction", ok, witness=witness,
                  exhaustive=False, n=done, bound=bound))
    if family is not None:
        base, delta_fam = family
        fam_ctx = base.context
        rep.extend(check_family(delta_fam, fam_ctx, bound=min(bound, 4)),
                   prefix="FAMILY")
        found = falsify_finitary(delta_fam, fam_ctx, kmax=6,
                                 bound=max(bound, 6))
        rep.add(Check("non-finitary-certificate", True, exhaustive=False,
                      bound=6,
                      detail=f"witness {found}" if found is not None
                      else "none up to index 6"))
    else:
        fin = is_finitary(r_delta(DeltaFamily(overs, name="carrier"), ctx),
                          bound=min(bound, 3), sample_budget=40, seed=seed)
        fin.name = "finite-family-finitary"
        rep.add(fin)
    return rep, None


def suite_prop1(H, bound, seed):
    rep = SuiteReport("prop1", CLAIMS["prop1"], seed=seed, bound=bound)
    overs = _curated_overmonoids(H, bound)
    rep.extend(embedding_checks(overs, H.context, bound=min(bound, 4),
                                seed=seed))
    return rep, None


def suite_prop2(H, bound, seed):
    rep = SuiteReport("prop2", CLAIMS["prop2"], seed=seed, bound=bound)
    ctx = H.context
    overs = _curated_overmonoids(H, bound)
    systems = [iota(S) for S in overs]
    rng = random.Random(seed)
    g_window = [g for g in ctx.window(min(bound, 4))
                if g is not INF and g != ctx.zero]
    witness = None
    done = 0
    attempts = 0
    while done < 50 and attempts < 1000 and witness is None:
        attempts += 1
        tau = rng.sample(systems, rng.randint(1, len(systems)))
        wedge = meet(tau)
        A = frozenset(rng.sample(g_window, rng.randint(1, 3)))
        pred = wedge.closure(A)
        hits = [g for g in g_window if pred(g)]
        if not hits:
            continue
        x = rng.choice(hits)
        E = meet_finite_witness(tau, A, x)
        if not (E <= A and wedge.member(E, x)):
            witness = {"A": sorted(map(repr, A)), "x": repr(x),
                       "E": sorted(map(repr, E))}
            break
        done += 1
    ok = witness is None and done >= 50
    if not ok and witness is None:
        witness = {"instances": done, "attempts": attempts}
    rep.add(Check("meet-finite-witness", ok, witness=witness,
                  exhaustive=False, n=done, bound=bound))

    # lower bound law: the meet closure sits inside every member closure
    witness = None
    count = 0
    wedge = meet(systems)
    for _ in range(40):
        A = frozenset(rng.sample(g_window, rng.randint(1, 3)))
        pred = wedge.closure(A)
        count += 1
        for r in systems:
            pr = r.closure(A)
            bad = next((g for g in g_window if pred(g) and not pr(g)), None)
            if bad is not None:
                witness = {"A": sorted(map(repr, A)), "r": r.name,
                           "g": repr(bad)}
                break
        if witness:
            break
    rep.add(Check("meet-lower-bound", witness is None, witness=witness,
                  exhaustive=False, n=count, bound=bound))
    return rep, None


def suite_corollaries(H, bound, seed):
    rep = SuiteReport("corollaries", CLAIMS["corollaries"], seed=seed,
                      bound=bound)
    ctx = H.context
    carriers = [("localizations", _curated_overmonoids(H, bound))]
    try:
        carriers.append(("zar", [v.to_overmonoid()
                                 for v in enumerate_zar(H, bound=bound)]))
    except UnsupportedRealization:
        pass
    small = min(bound, 3)
    for label, overs in carriers:
        r = r_delta(DeltaFamily(overs, name=label), ctx)
        fin = is_finitary(r, bound=small, sample_budget=40, seed=seed)
        fin.name = f"{label}:finitary"
        rep.add(fin)
        idem = check_idempotent(r, bound=small, sample_budget=30, seed=seed)
        idem.name = f"{label}:idempotent"
        rep.add(idem)
        id2 = check_id2(r, bound=small, sample_budget=60, seed=seed)
        id2.name = f"{label}:Id2"
        rep.add(id2)
    return rep, None


# -- entry point ----------------------------------------------------------------

def run_suite(suite, H, *, bound, seed, family=None):
    if suite == "main2":
        return suite_main2(H, family, bound, seed)
    fn = {
        "axioms": suite_axioms, "spec": suite_spec, "ideals": suite_ideals,
        "zar": suite_zar, "pruefer": suite_pruefer,
        "pronconst": suite_pronconst, "main1": suite_main1,
        "prop1": suite_prop1, "prop2": suite_prop2,
        "corollaries": suite_corollaries,
    }[suite]
    return fn(H, bound, seed)


def main(argv=None):
    parser = argparse.ArgumentParser(
        prog="monoid-spectra",
        description="verification suites for monoid spectra")
    sub = parser.add_subparsers(dest="command", required=True)
    v = sub.add_parser("verify", help="run a verification suite")
    v.add_argument("--suite", required=True, choices=SUITES)
    v.add_argument("--input", help="monoid description file (JSON)")
    v.add_argument("--family", help="family description file (JSON)")
    v.add_argument("--bound", type=int)
    v.add_argument("--seed", type=int)
    v.add_argument("--report", help="write the report to this path")
    v.add_argument("--dot", help="write a DOT drawing to this path")
    v.add_argument("--json", action="store_true",
                   help="emit the report as JSON")
    args = parser.parse_args(argv)

    seed = args.seed if args.seed is not None else int(
        os.environ.get("MONOID_SPECTRA_SEED", "0"))
    family = None
    try:
        if args.family:
            family = family_from_file(args.family)
        if args.input:
            H = monoid_from_file(args.input)
        elif args.suite == "main2" and family is not None:
            H = family[0]
        else:
            print("error: --input is required for this suite",
                  file=sys.stderr)
            return 2
        if args.bound is not None:
            if args.bound <= 0:
                print("error: --bound must be positive", file=sys.stderr)
                return 2
            bound = args.bound
        else:
            bound = 4 if H.kind == "affine" else 10
        report, dot = run_suite(args.suite, H, bound=bound, seed=seed,
                                family=family)
    except (ParseError, OSError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    except UnsupportedRealization as e:
        print(f"unsupported: {e}", file=sys.stderr)
        return 3

    body = report.json() if args.json else report.text()
    sys.stdout.write(body)
    if args.report:
        with open(args.report, "w", encoding="utf-8") as fh:
            fh.write(body)
    if args.dot:
        with open(args.dot, "w", encoding="utf-8") as fh:
            fh.write(dot if dot is not None else "digraph empty {\n}\n")
    return 0 if report.ok else 1


if __name__ == "__main__":
    sys.exit(main())
