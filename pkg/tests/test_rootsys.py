"""Root systems generated by reflection closure, checked against classical data."""

import pytest

from liep import rootsys
from liep.errors import ContractError
from liep.rootsys import RootVec, WeightVec

ALL_TYPES = (
    [("A", n) for n in range(1, 9)]
    + [("B", n) for n in range(2, 9)]
    + [("C", n) for n in range(2, 9)]
    + [("D", n) for n in range(4, 9)]
    + [("E", 6), ("E", 7), ("E", 8), ("F", 4), ("G", 2)]
)


def classical_count(t, n):
    # textbook cardinalities, used only as an oracle for the closure
    if t == "A":
        return n * (n + 1)
    if t in "BC":
        return 2 * n * n
    if t == "D":
        return 2 * n * (n - 1)
    return {("E", 6): 72, ("E", 7): 126, ("E", 8): 240, ("F", 4): 48, ("G", 2): 12}[(t, n)]


@pytest.mark.parametrize("t,n", ALL_TYPES)
def test_closure_reproduces_classical_root_counts(t, n):
    rs = rootsys.build(t, n)
    assert len(rs.roots) == classical_count(t, n)
    assert len(rs.positive_roots) * 2 == len(rs.roots)


@pytest.mark.parametrize("t,n", ALL_TYPES)
def test_roots_have_uniform_sign_and_negatives(t, n):
    rs = rootsys.build(t, n)
    for a in rs.roots:
        assert all(c >= 0 for c in a.coords) or all(c <= 0 for c in a.coords)
        assert rs.is_root(-a)


@pytest.mark.parametrize("t,n", ALL_TYPES)
def test_closed_under_simple_reflections(t, n):
    rs = rootsys.build(t, n)
    for a in rs.roots:
        for i in range(1, n + 1):
            assert rs.is_root(rs.reflect(a, i))


@pytest.mark.parametrize("t,n", ALL_TYPES)
def test_coxeter_number_three_routes_agree(t, n):
    rs = rootsys.build(t, n)
    a = rootsys.coxeter_via_marks(rs)
    b = rootsys.coxeter_via_rho(rs)
    c = rootsys.coxeter_via_element(rs)
    assert a == b == c == rs.coxeter_number


@pytest.mark.parametrize(
    "t,n,h",
    [("A", 1, 2), ("A", 4, 5), ("A", 7, 8), ("B", 2, 4), ("B", 5, 10), ("C", 3, 6),
     ("D", 4, 6), ("D", 6, 10), ("E", 6, 12), ("E", 7, 18), ("E", 8, 30),
     ("F", 4, 12), ("G", 2, 6)],
)
def test_named_coxeter_numbers(t, n, h):
    assert rootsys.coxeter_via_marks(rootsys.build(t, n)) == h


def test_highest_root_marks():
    assert rootsys.build("G", 2).marks == (3, 2)
    assert rootsys.build("F", 4).marks == (2, 3, 4, 2)
    assert rootsys.build("E", 8).marks == (2, 3, 4, 6, 5, 4, 3, 2)
    assert rootsys.build("A", 5).marks == (1, 1, 1, 1, 1)
    assert rootsys.build("B", 4).marks == (1, 2, 2, 2)
    assert rootsys.build("C", 4).marks == (2, 2, 2, 1)
    assert rootsys.build("D", 5).marks == (1, 2, 2, 1, 1)


@pytest.mark.parametrize("t,n", ALL_TYPES)
def test_top_height_is_coxeter_minus_one(t, n):
    rs = rootsys.build(t, n)
    top = max(rootsys.root_height(rs, a) for a in rs.positive_roots)
    assert top == rs.coxeter_number - 1
    assert rootsys.root_height(rs, rs.highest_root) == top


def test_root_height_examples():
    rs = rootsys.build("A", 3)
    assert rootsys.root_height(rs, rs.highest_root) == 3
    assert rootsys.root_height(rs, rs.simple_root(2)) == 1
    g2 = rootsys.build("G", 2)
    assert rootsys.root_height(g2, -g2.highest_root) == -5


def test_root_height_rejects_non_roots():
    rs = rootsys.build("A", 2)
    with pytest.raises(ContractError):
        rootsys.root_height(rs, RootVec((2, 0)))


@pytest.mark.parametrize(
    "bad", [("D", 3), ("D", 2), ("A", 0), ("A", -1), ("B", 1), ("C", 1),
            ("E", 5), ("E", 9), ("F", 3), ("G", 3), ("H", 2), ("AB", 2)]
)
def test_invalid_type_rank_rejected(bad):
    with pytest.raises(ValueError):
        rootsys.build(*bad)


def test_d4_is_accepted_even_though_d3_is_not():
    assert len(rootsys.build("D", 4).roots) == 24


def test_good_primes():
    e8 = rootsys.build("E", 8)
    assert not rootsys.is_good_prime(e8, 2)
    assert not rootsys.is_good_prime(e8, 3)
    assert not rootsys.is_good_prime(e8, 5)
    assert rootsys.is_good_prime(e8, 7)
    g2 = rootsys.build("G", 2)
    assert not rootsys.is_good_prime(g2, 3)
    assert rootsys.is_good_prime(g2, 5)
    for n in range(1, 7):
        assert rootsys.is_good_prime(rootsys.build("A", n), 2)  # all primes good in type A


def test_good_prime_requires_primality():
    rs = rootsys.build("B", 3)
    for bad in (1, 4, 6, 9, -3, 0):
        with pytest.raises(ValueError):
            rootsys.is_good_prime(rs, bad)


def test_parabolic_degrees_example():
    rs = rootsys.build("A", 3)
    degrees, top = rootsys.parabolic_degrees(rs, {1, 3})
    got = {a.coords: d for a, d in degrees.items()}
    assert got == {(0, 1, 0): 1, (0, 1, 1): 1, (1, 1, 0): 1, (1, 1, 1): 1}
    assert top == 1


def test_parabolic_full_subset_empty_map():
    rs = rootsys.build("B", 3)
    degrees, top = rootsys.parabolic_degrees(rs, {1, 2, 3})
    assert degrees == {} and top == 0


def test_parabolic_empty_subset_degrees_are_heights():
    rs = rootsys.build("C", 3)
    degrees, top = rootsys.parabolic_degrees(rs, ())
    assert top == rs.coxeter_number - 1
    for a, d in degrees.items():
        assert d == sum(a.coords)


@pytest.mark.parametrize("t,n", [("A", 4), ("B", 3), ("C", 4), ("D", 5), ("F", 4), ("G", 2), ("E", 6)])
def test_maximal_parabolic_top_degree_is_the_mark(t, n):
    rs = rootsys.build(t, n)
    for i in range(1, n + 1):
        subset = [j for j in range(1, n + 1) if j != i]
        _, top = rootsys.parabolic_degrees(rs, subset)
        assert top == rs.marks[i - 1]


def test_parabolic_rejects_out_of_range_indices():
    rs = rootsys.build("A", 2)
    with pytest.raises(ValueError):
        rootsys.parabolic_degrees(rs, {0})
    with pytest.raises(ValueError):
        rootsys.parabolic_degrees(rs, {3})


@pytest.mark.parametrize("t,n", [("A", 2), ("A", 3), ("B", 2), ("B", 3), ("C", 3), ("G", 2), ("F", 4), ("D", 4)])
def test_full_positive_set_degrees_are_heights(t, n):
    rs = rootsys.build(t, n)
    degrees = rootsys.closed_subset_degrees(rs, rs.positive_roots)
    for a, d in degrees.items():
        assert d == sum(a.coords)


def test_closed_subset_singleton():
    rs = rootsys.build("G", 2)
    assert rootsys.closed_subset_degrees(rs, [rs.highest_root]) == {rs.highest_root: 1}


def test_closed_subset_highest_root_degree_in_g2():
    rs = rootsys.build("G", 2)
    assert rootsys.closed_subset_degrees(rs, rs.positive_roots)[rs.highest_root] == 5


def test_closed_subset_rejects_open_sets():
    rs = rootsys.build("A", 2)
    # {a1, a2} misses a1 + a2, which is a root
    with pytest.raises(ContractError):
        rootsys.closed_subset_degrees(rs, [rs.simple_root(1), rs.simple_root(2)])


def test_closed_subset_rejects_negative_roots():
    rs = rootsys.build("A", 2)
    with pytest.raises(ContractError):
        rootsys.closed_subset_degrees(rs, [-rs.simple_root(1)])


def test_upper_set_degrees():
    # roots of height >= 2 in A3 form a closed subset; theta = a1+a2+a3 splits
    # into at most two members of it, never three
    rs = rootsys.build("A", 3)
    upper = [a for a in rs.positive_roots if sum(a.coords) >= 2]
    degrees = rootsys.closed_subset_degrees(rs, upper)
    assert degrees[rs.highest_root] == 1  # 1+1+1 needs height-1 parts, not available
    assert all(d == 1 for d in degrees.values())


@pytest.mark.parametrize("t,n", ALL_TYPES)
def test_fundamental_weights_are_dual_to_coroots(t, n):
    rs = rootsys.build(t, n)
    for i in range(1, n + 1):
        x = rootsys.weight_to_root_coords(rs, rootsys.fundamental_weight(rs, i))
        # <omega_i, alpha_j^vee> = delta_ij read back through the Cartan matrix
        for j in range(1, n + 1):
            pairing = sum(rs.cartan[j - 1][k] * x[k] for k in range(n))
            assert pairing == (1 if i == j else 0)


def test_weight_root_conversion_round_trip():
    rs = rootsys.build("F", 4)
    for a in rs.roots:
        w = WeightVec(rootsys.root_to_weight_coords(rs, a))
        back = rootsys.weight_to_root_coords(rs, w)
        assert tuple(back) == a.coords


def test_coroot_pairings():
    for t, n in [("B", 3), ("C", 3), ("G", 2), ("F", 4)]:
        rs = rootsys.build(t, n)
        for a in rs.roots:
            c = rs.coroot(a)
            # <alpha, alpha^vee> = 2 for every root
            pair = sum(rs.cartan[k][j] * c[k] * a.coords[j] for k in range(n) for j in range(n))
            assert pair == 2


def test_highest_coroot_differs_from_theta_coroot_outside_simply_laced():
    # in type C the dual system is type B, so the highest coroot is not theta's
    rs = rootsys.build("C", 3)
    high = max((rs.coroot(a) for a in rs.positive_roots), key=sum)
    assert high != rs.coroot(rs.highest_root)
    e6 = rootsys.build("E", 6)
    high6 = max((e6.coroot(a) for a in e6.positive_roots), key=sum)
    assert high6 == e6.coroot(e6.highest_root)


def test_serialization_schema():
    doc = rootsys.build("G", 2).to_json_dict()
    assert doc["type"] == "G" and doc["rank"] == 2
    assert doc["cartan_matrix"] == [[2, -3], [-1, 2]]
    assert doc["highest_root"] == [3, 2]
    assert doc["marks"] == [3, 2]
    assert doc["coxeter_number"] == 6
    assert doc["root_count"] == 12
    assert len(doc["roots"]) == 12 and len(doc["positive_roots"]) == 6
    assert doc["positive_roots"][0] in ([1, 0], [0, 1])


def test_build_is_cached():
    assert rootsys.build("E", 7) is rootsys.build("E", 7)
