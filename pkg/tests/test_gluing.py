import pytest

from genuscenter.errors import GluingFormatError
from genuscenter.gluing import (
    Gluing,
    comm_case,
    enumerate_adm,
    orbit_info,
    parse_cycles,
    sigma_gk,
    surface_type,
)


def g(text):
    return parse_cycles(text)


class TestEnumerate:
    def test_counts(self):
        assert [len(enumerate_adm(n)) for n in range(5)] == [1, 1, 3, 15, 105]

    def test_n1_is_the_transposition(self):
        (only,) = enumerate_adm(1)
        assert only.pairs() == [(1, 2)]

    def test_no_duplicates_and_involutive(self):
        for n in range(5):
            seen = set()
            for sig in enumerate_adm(n):
                key = tuple(sig.pairing)
                assert key not in seen
                seen.add(key)
                for i in range(1, 2 * n + 1):
                    assert sig(sig(i)) == i and sig(i) != i


class TestOrbits:
    def test_orbit_examples(self):
        sig = g("(1 3)(2 4)")
        o1 = orbit_info(sig, 1)
        assert o1.orbit == frozenset({1, 3}) and o1.low == 1 and o1.high == 3
        o4 = orbit_info(sig, 4)
        assert o4.orbit == frozenset({2, 4}) and o4.low == 2
        assert orbit_info(g("(1 2)"), 2).orbit == frozenset({1, 2})

    def test_out_of_range(self):
        with pytest.raises(IndexError):
            orbit_info(g("(1 2)"), 3)

    def test_distinct_orbit_count(self):
        for sig in enumerate_adm(3):
            orbits = {orbit_info(sig, i).orbit for i in range(1, 7)}
            assert len(orbits) == 3


class TestCommCase:
    def test_three_cases(self):
        sig = g("(1 2)(3 4)")
        assert comm_case(sig, orbit_info(sig, 1), orbit_info(sig, 3)) == 1
        sig = g("(1 3)(2 4)")
        assert comm_case(sig, orbit_info(sig, 1), orbit_info(sig, 2)) == 2
        sig = g("(1 4)(2 3)")
        assert comm_case(sig, orbit_info(sig, 1), orbit_info(sig, 2)) == 3

    def test_symmetric_and_exclusive(self):
        for n in (2, 3, 4):
            for sig in enumerate_adm(n):
                orbits = sig.orbits()
                for a in range(len(orbits)):
                    for b in range(a + 1, len(orbits)):
                        c1 = comm_case(sig, orbits[a], orbits[b])
                        c2 = comm_case(sig, orbits[b], orbits[a])
                        assert c1 == c2 and c1 in (1, 2, 3)

    def test_identical_orbits_rejected(self):
        sig = g("(1 2)")
        with pytest.raises(ValueError):
            comm_case(sig, orbit_info(sig, 1), orbit_info(sig, 2))


class TestSigmaGK:
    def test_known_values(self):
        assert sigma_gk(1, 1).pairs() == [(1, 3), (2, 4)]
        assert sigma_gk(2, 1).pairs() == [(1, 3), (2, 4), (5, 7), (6, 8)]
        assert sigma_gk(0, 3).pairs() == [(1, 2), (3, 4)]
        assert sigma_gk(0, 1).n == 0

    def test_roundtrip(self):
        for genus in range(4):
            for punct in range(1, 4):
                st = surface_type(sigma_gk(genus, punct))
                assert (st.genus, st.punctures) == (genus, punct)


class TestSurfaceType:
    def test_paper_examples(self):
        assert surface_type(g("(1 2)")) == surface_type(sigma_gk(0, 2))
        st = surface_type(g("(1 2)"))
        assert (st.genus, st.punctures) == (0, 2)
        st = surface_type(g("(1 2)(3 4)"))
        assert (st.genus, st.punctures) == (0, 3)
        st = surface_type(g("(1 3)(2 4)"))
        assert (st.genus, st.punctures) == (1, 1)

    def test_disk(self):
        st = surface_type(Gluing(0, ()))
        assert (st.genus, st.punctures, st.euler) == (0, 1, 1)

    def test_euler_consistency_up_to_rank_4(self):
        for n in range(5):
            for sig in enumerate_adm(n):
                st = surface_type(sig)
                assert st.euler == 2 - 2 * st.genus - st.punctures
                assert st.genus >= 0 and st.punctures >= 1


class TestParser:
    def test_whitespace_insensitive(self):
        assert parse_cycles(" ( 1   3 ) (2,4) ").pairs() == [(1, 3), (2, 4)]

    def test_rejects_non_involution(self):
        with pytest.raises(GluingFormatError):
            parse_cycles("(1 2)(2 3)")
        with pytest.raises(GluingFormatError):
            parse_cycles("(1 1)")
        with pytest.raises(GluingFormatError):
            parse_cycles("(1 4)")  # gap in leg labels
        with pytest.raises(GluingFormatError):
            parse_cycles("(1 2 3)")

    def test_json_roundtrip(self):
        sig = parse_cycles("(1 3)(2 4)")
        assert Gluing.from_json(sig.to_json()) == sig
        assert sig.to_json() == {"n": 2, "pairs": [[1, 3], [2, 4]]}

    def test_format(self):
        assert parse_cycles("(2 4)(1 3)").cycle_string() == "(1 3)(2 4)"
