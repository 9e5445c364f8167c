import pytest

from monoid_spectra.monoid import (INF, Monoid, Overmonoid, ParseError, adjoin,
                                   as_overmonoid, fraction_ideal, localize,
                                   monoid_from_json, quotient_groupoid)


def test_numerical_membership_and_ops():
    H = Monoid.numerical([2, 3])
    assert H.contains(0) and H.contains(2) and H.contains(5)
    assert not H.contains(1)
    assert not H.contains(-2)
    assert H.contains(INF)
    assert H.op(2, 3) == 5
    assert H.op(2, INF) is INF
    assert H.one == 0 and H.zero is INF


def test_affine_membership():
    H = Monoid.affine([[1, 0], [0, 1]])
    assert H.contains((2, 3))
    assert not H.contains((-1, 0))
    assert H.contains(INF)
    assert H.op((1, 2), (3, 4)) == (4, 6)
    # lattice of the generators, not all of Z^2
    H2 = Monoid.affine([[2, 0], [0, 2]])
    assert not H2.contains((1, 0))
    assert not H2.context.contains((1, 0))
    assert H2.context.contains((2, -4))


def test_finite_monoid_is_group_with_zero():
    H = Monoid.cyclic_group_with_zero(3)
    assert H.one == 0 and H.zero == 3
    assert H.op(1, 2) == 0
    assert H.op(1, 3) == 3
    assert H.context.inv(2) == 1
    with pytest.raises(ValueError):
        H.context.inv(3)


def test_table_validation():
    # declared zero not absorbing
    with pytest.raises(ValueError):
        Monoid.finite([[0, 1], [1, 0]], one=1, zero=0)
    # identity equal to zero
    with pytest.raises(ValueError):
        Monoid.finite([[0, 0], [0, 0]], one=0, zero=0)
    # non-commutative
    with pytest.raises(ValueError):
        Monoid.finite([[0, 1, 2], [2, 1, 0], [1, 2, 0]], one=1, zero=2)
    # non-cancellative off the zero
    with pytest.raises(ValueError):
        Monoid.finite([[0, 1, 2], [1, 1, 2], [2, 2, 2]], one=0, zero=2)


def test_json_parse_errors_carry_fields():
    with pytest.raises(ParseError) as e:
        monoid_from_json('{"kind": "numerical", "generators": [2, 4]}')
    assert e.value.field == "generators"
    with pytest.raises(ParseError) as e:
        monoid_from_json('{"kind": "nope"}')
    assert e.value.field == "kind"
    with pytest.raises(ParseError) as e:
        monoid_from_json('{bad json')
    assert e.value.line is not None
    with pytest.raises(ParseError):
        monoid_from_json('{"kind": "affine", "dim": 0, "generators": []}')


def test_json_roundtrip():
    H = monoid_from_json('{"kind": "numerical", "generators": [3, 4, 5]}')
    assert H.kind == "numerical" and H.generators == (3, 4, 5)
    A = monoid_from_json(
        '{"kind": "affine", "dim": 2, "generators": [[1, 0], [0, 1]]}')
    assert A.contains((1, 1))


def test_window_is_deterministic_and_contains_inf():
    H = Monoid.numerical([2, 3])
    w = H.context.window(5)
    assert w == list(range(-5, 6)) + [INF]
    A = Monoid.affine([[1, 0], [0, 1]])
    w2 = A.context.window(2)
    assert w2[-1] is INF
    assert (0, 0) in w2 and (-2, 2) in w2
    assert w2 == A.context.window(2)


def test_overmonoid_membership_generator_backed():
    H = Monoid.numerical([2, 3])
    M = as_overmonoid(H)
    assert M.contains(2) and not M.contains(1)
    Z = Overmonoid(H.context, gens=(1, -1), name="Z")
    assert Z.contains(-7) and Z.contains(INF)
    assert M.units_window(6) == [0]
    assert Z.units_window(3) == [-3, -2, -1, 0, 1, 2, 3]


def test_adjoin():
    H = Monoid.affine([[1, 0], [0, 1]])
    M = adjoin(as_overmonoid(H), (-1, 1))
    assert M.contains((-2, 3))
    assert not M.contains((0, -1))
    assert adjoin(M, INF) is M


def test_localize_at_face_prime():
    from monoid_spectra.idealsys import enumerate_primes
    H = Monoid.affine([[1, 0], [0, 1]])
    primes = enumerate_primes(H, bound=4)
    by_name = {p.name: p for p in primes}
    face = next(p for n, p in by_name.items() if n.startswith("P_face"))
    L = localize(H, face)
    # inverting the generators off the prime frees one axis
    freed = [g for g in H.generators if not face.contains(g)]
    assert freed
    g = freed[0]
    assert L.contains(tuple(-c for c in g))
    assert L.check_closed_window(3)


def test_localize_rejects_improper():
    from monoid_spectra.idealsys import RIdeal, s_system
    H = Monoid.numerical([2, 3])
    improper = RIdeal(s_system(H), [0])
    with pytest.raises(ValueError):
        localize(H, improper)


def test_fraction_ideal_predicate():
    H = Monoid.numerical([2, 3])
    member = fraction_ideal(H, 1)  # (H : 1) = {h in H : h + 1 in H}
    assert member(2) and member(3)
    assert not member(0)  # 0 + 1 = 1 is a gap
    assert member(INF)
    with pytest.raises(ValueError):
        fraction_ideal(H, INF)


def test_quotient_groupoid_is_shared_context():
    H = Monoid.numerical([2, 3])
    assert quotient_groupoid(H) is H.context
    G = quotient_groupoid(H)
    assert G.contains(-5) and G.contains(INF)
