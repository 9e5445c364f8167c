"""Monoids with an absorbing zero, their quotient groupoids, overmonoids,
adjunction, localization and fraction predicates.

Three realizations are supported:

* ``numerical``  -- an additive submonoid of N with gcd-1 generators; the
  quotient groupoid carrier is Z together with an absorbing element INF.
* ``affine``     -- the submonoid of Z^d generated by integer vectors; the
  carrier is the lattice they span, plus INF.
* ``finite``     -- a finite commutative cancellative monoid given by its
  Cayley table; off the zero it is a group, so it is its own groupoid.

The library speaks multiplicatively (op, one, zero) even though the numerical
and affine realizations are additive underneath: identity maps to 0 / the zero
vector and the absorbing zero maps to INF.
"""

from __future__ import annotations

import json
from math import gcd

from . import intgeom
from .intgeom import UnsupportedRealization
from .numsgp import NumericalSemigroup, cached_semigroup


class _Inf:
    """The absorbing zero adjoined to the additive carriers."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "INF"


INF = _Inf()


class CarrierMismatch(Exception):
    pass


class ParseError(Exception):
    def __init__(self, message, line=None, field=None):
        self.line = line
        self.field = field
        where = []
        if line is not None:
            where.append(f"line {line}")
        if field is not None:
            where.append(f"field '{field}'")
        suffix = f" ({', '.join(where)})" if where else ""
        super().__init__(message + suffix)


def sort_key(g):
    """Deterministic ordering: lexicographic on coordinates, INF last."""
    if g is INF:
        return (1,)
    if isinstance(g, tuple):
        return (0,) + g
    return (0, g)


class GroupoidContext:
    """Carrier of the quotient groupoid G: a group with absorbing zero."""

    def __init__(self, kind, *, dim=None, lattice_basis=None, table=None,
                 one=None, zero=None):
        self.kind = kind
        self.dim = dim
        self.lattice_basis = lattice_basis
        self.table = table
        if kind == "finite":
            self.one = one
            self.zero = zero
            n = len(table)
            inv = {}
            for a in range(n):
                if a == zero:
                    continue
                for b in range(n):
                    if table[a][b] == one:
                        inv[a] = b
                        break
            self._inv = inv
        elif kind == "int":
            self.one = 0
            self.zero = INF
        elif kind == "lattice":
            self.one = (0,) * dim
            self.zero = INF
        else:
            raise ValueError(f"unknown context kind {kind!r}")

    def contains(self, g) -> bool:
        if self.kind == "int":
            return g is INF or isinstance(g, int)
        if self.kind == "lattice":
            if g is INF:
                return True
            return (isinstance(g, tuple) and len(g) == self.dim
                    and all(isinstance(c, int) for c in g)
                    and intgeom.lattice_contains(self.lattice_basis, g))
        return isinstance(g, int) and 0 <= g < len(self.table)

    def _check(self, *els):
        for g in els:
            if not self.contains(g):
                raise CarrierMismatch(f"{g!r} is not in this carrier")

    def op(self, a, b):
        self._check(a, b)
        if self.kind == "finite":
            return self.table[a][b]
        if a is INF or b is INF:
            return INF
        if self.kind == "int":
            return a + b
        return tuple(x + y for x, y in zip(a, b))

    def inv(self, a):
        self._check(a)
        if a == self.zero or a is INF:
            raise ValueError("the absorbing zero has no inverse")
        if self.kind == "finite":
            return self._inv[a]
        if self.kind == "int":
            return -a
        return tuple(-c for c in a)

    def window(self, bound: int) -> list:
        """Deterministic finite slice of the carrier used for enumeration;
        membership queries stay exact, only enumerations are windowed."""
        if self.kind == "finite":
            return list(range(len(self.table)))
        if self.kind == "int":
            return list(range(-bound, bound + 1)) + [INF]
        pts = []

        def boxes(prefix, d):
            if d == self.dim:
                pts.append(tuple(prefix))
                return
            for c in range(-bound, bound + 1):
                boxes(prefix + [c], d + 1)

        boxes([], 0)
        out = [p for p in pts if intgeom.lattice_contains(self.lattice_basis, p)]
        out.sort(key=sort_key)
        return out + [INF]


class Monoid:
    """One of the three finitely presented realizations of a commutative
    cancellative monoid with identity and absorbing zero."""

    def __init__(self, kind, *, generators=None, dim=None, table=None,
                 one=None, zero=None):
        self.kind = kind
        if kind == "numerical":
            self.sgp = cached_semigroup(tuple(sorted(set(generators))))
            self.generators = tuple(self.sgp.generators)
            self.context = GroupoidContext("int")
        elif kind == "affine":
            gens = tuple(tuple(int(c) for c in g) for g in generators)
            if not gens:
                raise ValueError("affine monoid needs at least one generator")
            d = dim if dim is not None else len(gens[0])
            if any(len(g) != d for g in gens):
                raise ValueError("generator dimensions disagree")
            self.dim = d
            self.generators = gens
            basis = intgeom.hnf_rows(gens)
            self.context = GroupoidContext("lattice", dim=d, lattice_basis=basis)
        elif kind == "finite":
            self._validate_table(table, one, zero)
            self.table = table
            self.one_index = one
            self.zero_index = zero
            self.context = GroupoidContext("finite", table=table, one=one, zero=zero)
            self.generators = tuple(i for i in range(len(table)))
        else:
            raise ValueError(f"unknown monoid kind {kind!r}")

    @staticmethod
    def _validate_table(table, one, zero):
        n = len(table)
        if any(len(row) != n for row in table):
            raise ValueError("Cayley table must be square")
        if one == zero:
            raise ValueError("identity and zero must differ")
        for a in range(n):
            for b in range(n):
                if table[a][b] != table[b][a]:
                    raise ValueError(f"not commutative at ({a},{b})")
        for a in range(n):
            for b in range(n):
                for c in range(n):
                    if table[table[a][b]][c] != table[a][table[b][c]]:
                        raise ValueError(f"not associative at ({a},{b},{c})")
        for a in range(n):
            if table[one][a] != a:
                raise ValueError("declared identity is not neutral")
            if table[zero][a] != zero:
                raise ValueError("declared zero is not absorbing")
        for a in range(n):
            if a == zero:
                continue
            seen = set()
            for b in range(n):
                v = table[a][b]
                if v in seen:
                    raise ValueError(f"not cancellative: row {a} repeats {v}")
                seen.add(v)

    # -- constructors ------------------------------------------------------

    @classmethod
    def numerical(cls, generators):
        return cls("numerical", generators=generators)

    @classmethod
    def affine(cls, generators, dim=None):
        return cls("affine", generators=generators, dim=dim)

    @classmethod
    def finite(cls, table, one, zero):
        return cls("finite", table=table, one=one, zero=zero)

    @classmethod
    def cyclic_group_with_zero(cls, n):
        """Z/n with an absorbing zero adjoined; carrier indices 0..n, where
        index n is the absorbing zero and index 0 the identity."""
        size = n + 1
        table = [[0] * size for _ in range(size)]
        for a in range(size):
            for b in range(size):
                if a == n or b == n:
                    table[a][b] = n
                else:
                    table[a][b] = (a + b) % n
        return cls.finite(table, one=0, zero=n)

    # -- membership --------------------------------------------------------

    def contains(self, g) -> bool:
        if not self.context.contains(g):
            return False
        if g is INF:
            return True
        if self.kind == "numerical":
            return isinstance(g, int) and g >= 0 and self.sgp.contains(g)
        if self.kind == "affine":
            return intgeom.monoid_contains(self.generators, g)
        return True  # finite: H is the whole carrier

    def op(self, a, b):
        return self.context.op(a, b)

    @property
    def one(self):
        return self.context.one

    @property
    def zero(self):
        return self.context.zero

    def elements_window(self, bound: int) -> list:
        return [g for g in self.context.window(bound) if self.contains(g)]

    def __repr__(self):
        if self.kind == "numerical":
            return f"Monoid.numerical{self.generators}"
        if self.kind == "affine":
            return f"Monoid.affine{self.generators}"
        return f"Monoid.finite(n={len(self.table)})"


def quotient_groupoid(H: Monoid) -> GroupoidContext:
    """Carrier of fractions/differences of H.  Numerical monoids give Z plus
    INF, affine monoids the lattice spanned by their generators plus INF, and
    finite monoids are already groupoids."""
    return H.context


class Overmonoid:
    """Submonoid of G containing H, with exact decidable membership.

    Backed either by a generator list (membership derived exactly) or by a
    closed-form membership rule."""

    def __init__(self, context, gens=None, rule=None, name=""):
        self.context = context
        self.gens = tuple(gens) if gens is not None else None
        self.rule = rule
        self.name = name
        if gens is None and rule is None:
            raise ValueError("an overmonoid needs generators or a rule")
        self._derived = None

    def contains(self, g) -> bool:
        if not self.context.contains(g):
            return False
        if g is INF or g == self.context.zero:
            return True
        if self.rule is not None:
            return bool(self.rule(g))
        return self._derived_contains(g)

    def _derived_contains(self, g) -> bool:
        ctx = self.context
        if ctx.kind == "int":
            info = self._derived
            if info is None:
                finite_gens = [x for x in self.gens if x is not INF and x != 0]
                if any(x < 0 for x in finite_gens):
                    info = ("all", None)
                else:
                    info = ("sgp", cached_semigroup(tuple(sorted(set(finite_gens)))))
                self._derived = info
            tag, sgp = info
            if tag == "all":
                return True
            return g >= 0 and sgp.contains(g)
        if ctx.kind == "lattice":
            finite_gens = tuple(x for x in self.gens if x is not INF)
            return intgeom.monoid_contains(finite_gens, g)
        # finite: BFS closure of the generators
        if self._derived is None:
            closure = {ctx.one, ctx.zero}
            frontier = [x for x in self.gens]
            closure.update(frontier)
            while frontier:
                a = frontier.pop()
                for b in list(closure):
                    c = ctx.op(a, b)
                    if c not in closure:
                        closure.add(c)
                        frontier.append(c)
            self._derived = closure
        return g in self._derived

    def units_window(self, bound: int) -> list:
        ctx = self.context
        out = []
        for g in ctx.window(bound):
            if g is INF or g == ctx.zero:
                continue
            if self.contains(g) and self.contains(ctx.inv(g)):
                out.append(g)
        return out

    def is_local_window(self, bound: int) -> bool:
        """Nonunits form an ideal on the window (products checked when they
        stay inside the window)."""
        ctx = self.context
        units = set(map(repr, self.units_window(bound)))
        members = [g for g in ctx.window(bound) if self.contains(g)]
        window = set(map(repr, ctx.window(bound)))
        for n in members:
            if repr(n) in units or n == ctx.one:
                continue
            for h in members:
                prod = ctx.op(n, h)
                if repr(prod) in window and repr(prod) in units:
                    return False
        return True

    def check_closed_window(self, bound: int) -> bool:
        ctx = self.context
        members = [g for g in ctx.window(bound) if self.contains(g)]
        window = set(map(repr, ctx.window(bound)))
        for a in members:
            for b in members:
                c = ctx.op(a, b)
                if repr(c) in window and not self.contains(c):
                    return False
        return True

    def __repr__(self):
        return f"Overmonoid({self.name or self.gens})"


def as_overmonoid(H: Monoid, name="H") -> Overmonoid:
    return Overmonoid(H.context, gens=H.generators, name=name)


def adjoin(M: Overmonoid, x) -> Overmonoid:
    """Smallest submonoid of G containing M and x (generator-backed only)."""
    if M.gens is None:
        raise ValueError("adjoin needs a generator-backed overmonoid")
    M.context._check(x)
    if x is INF or x == M.context.zero:
        return M
    return Overmonoid(M.context, gens=M.gens + (x,), name=f"{M.name}[{x}]")


def localize(H: Monoid, P) -> Overmonoid:
    """Localization H_P at a prime s-ideal P: invert the generators of H that
    lie outside P.  Every element of H outside P is a product of such
    generators, so this is exact."""
    if P.contains(H.one):
        raise ValueError("cannot localize at an improper ideal")
    ctx = H.context
    extra = tuple(ctx.inv(g) for g in H.generators
                  if g != ctx.zero and g is not INF and not P.contains(g))
    return Overmonoid(ctx, gens=tuple(H.generators) + extra,
                      name=f"localization")


def fraction_ideal(H: Monoid, x):
    """The predicate of (H : x) = {h in H : h*x in H}; x must be nonzero."""
    ctx = H.context
    if x is INF or x == ctx.zero:
        raise ValueError("(H : x) is undefined for the absorbing zero")
    ctx._check(x)

    def member(h):
        if h is INF or h == ctx.zero:
            return True
        return H.contains(h) and H.contains(ctx.op(h, x))

    return member


# -- JSON description files ------------------------------------------------

def monoid_from_json(text: str) -> Monoid:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as e:
        raise ParseError(f"invalid JSON: {e.msg}", line=e.lineno) from e
    if not isinstance(data, dict):
        raise ParseError("top-level value must be an object")
    kind = data.get("kind")
    if kind == "numerical":
        gens = data.get("generators")
        if (not isinstance(gens, list) or not gens
                or not all(isinstance(g, int) and g > 0 for g in gens)):
            raise ParseError("expected a nonempty list of positive integers",
                             field="generators")
        g_all = 0
        for g in gens:
            g_all = gcd(g_all, g)
        if g_all != 1:
            raise ParseError("generators must have gcd 1", field="generators")
        return Monoid.numerical(gens)
    if kind == "affine":
        dim = data.get("dim")
        gens = data.get("generators")
        if not isinstance(dim, int) or dim < 1:
            raise ParseError("expected a positive integer", field="dim")
        if (not isinstance(gens, list) or not gens
                or not all(isinstance(g, list) and len(g) == dim
                           and all(isinstance(c, int) for c in g) for g in gens)):
            raise ParseError(f"expected a list of integer vectors of length {dim}",
                             field="generators")
        return Monoid.affine(gens, dim=dim)
    if kind == "finite":
        size = data.get("size")
        table = data.get("table")
        one = data.get("one")
        zero = data.get("zero")
        if not isinstance(size, int) or size < 2:
            raise ParseError("expected an integer >= 2", field="size")
        if (not isinstance(table, list) or len(table) != size
                or not all(isinstance(r, list) and len(r) == size
                           and all(isinstance(v, int) and 0 <= v < size for v in r)
                           for r in table)):
            raise ParseError(f"expected a {size}x{size} table of indices",
                             field="table")
        for name, idx in (("one", one), ("zero", zero)):
            if not isinstance(idx, int) or not 0 <= idx < size:
                raise ParseError("expected a valid element index", field=name)
        try:
            return Monoid.finite(table, one=one, zero=zero)
        except ValueError as e:
            raise ParseError(str(e), field="table") from e
    raise ParseError("kind must be one of numerical|affine|finite", field="kind")


def monoid_from_file(path) -> Monoid:
    with open(path, "r", encoding="utf-8") as fh:
        return monoid_from_json(fh.read())
