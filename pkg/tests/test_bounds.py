from math import gcd

import pytest

from davkit import (
    GroupSpec,
    ValidationError,
    box_upper,
    chi,
    davenport,
    diam,
    ground_bounds,
    group_davenport,
    hypercube_bounds,
    interval_davenport,
    parse_ground_set,
    product_bounds,
    square_upper,
)


class TestChiDiam:
    def test_chi_examples(self):
        assert chi(range(-2, 4)) == 5
        assert chi([-2, 4]) == 3
        assert chi([-5, -2, 3]) == 8

    def test_chi_is_integral_by_construction(self):
        for x in range(-6, 0):
            for y in range(1, 7):
                assert chi([x, y]) == (-x + y) // gcd(x, y)

    def test_chi_needs_both_signs(self):
        with pytest.raises(ValidationError):
            chi([1, 2])

    def test_diam(self):
        assert diam(range(-2, 5)) == 6
        assert diam([5]) == 0
        assert diam([-3, 7]) == 10


class TestIntervalDavenport:
    def test_coprime(self):
        r = interval_davenport(2, 3)
        assert r.exact and r.value == 5

    def test_symmetric(self):
        assert interval_davenport(3, 3).value == 5
        assert interval_davenport(1, 1).value == 2

    def test_non_coprime_meets_at_desk_scale(self):
        r = interval_davenport(2, 4)
        assert r.exact and r.value == 5

    def test_non_coprime_can_stay_bracketed(self):
        # both pairs summing to m+M-1 share a factor here, so chi < m+M-1
        r = interval_davenport(15, 21)
        assert not r.exact and (r.lower, r.upper) == (34, 35)

    def test_agrees_with_search_up_to_twelve(self):
        for m in range(1, 12):
            for M in range(1, 13 - m):
                report = interval_davenport(m, M)
                result = davenport(parse_ground_set(f"[-{m},{M}]"))
                assert result.exact
                assert report.exact, (m, M)
                assert report.value == result.lower, (m, M)


class TestBoxBounds:
    def test_box_upper(self):
        assert box_upper([5]) == 11
        assert box_upper([1, 1]) == 16
        assert box_upper([2, 2, 2]) == 1000

    def test_square_upper(self):
        assert square_upper(1, 1) == 15
        assert square_upper(1, 2) == 25
        assert square_upper(2, 2) == 45

    def test_hypercube(self):
        assert hypercube_bounds(1, 2).value == 4
        r = hypercube_bounds(2, 3)
        assert (r.lower, r.upper) == (27, 1000)
        r = hypercube_bounds(1, 3)
        assert (r.lower, r.upper) == (8, 125)
        r = hypercube_bounds(2, 2)
        assert (r.lower, r.upper) == (9, 45)
        assert hypercube_bounds(2, 1).value == 3


class TestGroupDavenport:
    def test_cyclic_is_order(self):
        assert group_davenport(GroupSpec((6,))).value == 6
        assert group_davenport(GroupSpec(())).value == 1

    def test_rank_two(self):
        assert group_davenport(GroupSpec((2, 2))).value == 3
        assert group_davenport(GroupSpec((2, 4))).value == 5

    def test_p_group(self):
        assert group_davenport(GroupSpec((3, 3, 3))).value == 7

    def test_general_bracket(self):
        r = group_davenport(GroupSpec((2, 2, 6)))
        assert not r.exact
        assert r.lower == 8 and r.upper == 14

    def test_search_matches_for_small_cyclic(self):
        for n in range(2, 9):
            want = group_davenport(GroupSpec((n,))).value
            got = davenport(parse_ground_set(f"C{n}x{{0}}")).lower
            assert want == got == n


class TestProductBounds:
    def test_cyclic_interval_exact(self):
        r = product_bounds(GroupSpec((2,)), parse_ground_set("[-1,1]"))
        assert r.exact and r.value == 4
        r = product_bounds(GroupSpec((5,)), parse_ground_set("[-3,3]"))
        assert r.exact and r.value == 25

    def test_square_bracket(self):
        r = product_bounds(GroupSpec((2,)), parse_ground_set("[-2,2]^2"))
        assert (r.lower, r.upper) == (18, 90)

    def test_non_cyclic_upper_only(self):
        r = product_bounds(GroupSpec((2, 2)), parse_ground_set("[-1,1]"))
        assert r.lower == 0 and r.upper == 6
        assert "cyclic-product-cube-lower" not in r.provenance


class TestGroundBounds:
    @pytest.mark.parametrize(
        "text,lower,upper",
        [
            ("[-2,3]", 5, 5),
            ("[-2,2]", 3, 3),
            ("{1,2}", 0, 0),
            ("{0,1,2}", 1, 1),
            ("{-2,3}", 5, 5),
            ("[-1,1]^2", 4, 4),
            ("C2x[-2,2]", 6, 6),
        ],
    )
    def test_shapes(self, text, lower, upper):
        r = ground_bounds(parse_ground_set(text))
        assert (r.lower, r.upper) == (lower, upper)

    def test_search_value_falls_inside_bracket(self):
        for text in ["[-2,3]", "[-3,3]", "{-3,1,2}", "C2x[-1,1]", "[-1,1]^2"]:
            report = ground_bounds(parse_ground_set(text))
            result = davenport(parse_ground_set(text))
            assert result.exact
            assert report.lower <= result.lower <= report.upper


def test_finite_shadow_of_the_asymptotic():
    # exact interval values at desk scale sit at m+M or m+M-1
    for m in range(1, 12):
        for M in range(1, 13 - m):
            value = davenport(parse_ground_set(f"[-{m},{M}]")).lower
            assert value in (m + M, m + M - 1)
