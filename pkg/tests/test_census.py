import csv
import io
import json
from math import gcd, prod

import pytest
from hypothesis import given
from hypothesis import strategies as st

from bipartite_maps.census import (
    CSV_COLUMNS,
    TABLE1_NOTES,
    census_range,
    census_report,
    load_table1,
    nu_constructive,
    nu_formula,
    nu_two_prime,
    table1_check,
    write_csv,
    write_json,
)
from bipartite_maps.errors import ContractError, ScaleError
from bipartite_maps.map_ops import chi_pairs, rho, sigma
from bipartite_maps.numthy import euler_phi, factorize
from bipartite_maps.primepower import prime_power_count


class TestNuFormula:
    @pytest.mark.parametrize("n,nu", [(1, 1), (2, 1), (6, 2), (9, 3), (8, 6), (64, 20), (90, 8), (105, 3)])
    def test_values(self, n, nu):
        assert nu_formula(n).total == nu

    def test_breakdown_keys(self):
        assert list(nu_formula(1).summands) == [None]
        assert sorted(nu_formula(90).summands.values()) == [1, 1, 3, 3]
        assert list(nu_formula(105).summands.values()) == [1, 2]

    @given(st.integers(1, 3000))
    def test_nilpotent_lower_bound(self, n):
        sylow = prod(prime_power_count(p, e) for p, e in factorize(n))
        assert nu_formula(n).total >= sylow

    @given(st.integers(1, 3000))
    def test_uniqueness(self, n):
        assert (nu_formula(n).total == 1) == (gcd(n, euler_phi(n)) == 1)

    @given(st.integers(1, 3000))
    def test_chiral_maps_pair_up(self, n):
        assert (nu_formula(n).total - rho(n)) % 2 == 0
        assert rho(n) >= sigma(n) >= 1


class TestNuTwoPrime:
    @pytest.mark.parametrize(
        "p1,d,p2,e",
        [(3, 1, 2, 1), (3, 2, 2, 1), (5, 1, 2, 3), (7, 2, 3, 1), (13, 1, 2, 4), (5, 2, 2, 5), (19, 1, 3, 2), (11, 1, 5, 1)],
    )
    def test_matches_general_formula(self, p1, d, p2, e):
        assert nu_two_prime(p1, d, p2, e) == nu_formula(p1**d * p2**e).total

    @pytest.mark.parametrize("p1,d,p2,e,nu", [(3, 1, 2, 1, 2), (5, 1, 2, 2, 6), (5, 1, 2, 3, 16), (17, 1, 2, 3, 20)])
    def test_examples(self, p1, d, p2, e, nu):
        assert nu_two_prime(p1, d, p2, e) == nu

    @pytest.mark.parametrize("args", [(2, 1, 3, 1), (3, 1, 5, 1), (4, 1, 3, 1), (3, 0, 2, 1), (3, 1, 3, 1)])
    def test_invalid(self, args):
        with pytest.raises(ContractError):
            nu_two_prime(*args)


class TestConstructive:
    @pytest.mark.parametrize("n", [1, 2, 6, 8, 12, 16, 18, 20, 21, 24, 36, 42])
    def test_agrees(self, n):
        assert nu_constructive(n) == nu_formula(n).total

    def test_budget(self):
        with pytest.raises(ScaleError):
            nu_constructive(61)
        assert nu_constructive(61, budget=61) == 1


class TestTable1:
    def test_all_match(self):
        report = table1_check()
        assert report.all_match and report.matches == 120

    def test_golden_values(self):
        golden = load_table1()
        assert len(golden) == 120 and golden[64] == 20 and golden[90] == 8

    def test_note_for_ninety(self):
        report = table1_check([90])
        assert report.rows[0].note == TABLE1_NOTES[90]
        assert "8" in report.rows[0].note

    def test_format(self):
        text = table1_check([1, 2, 3]).format()
        assert text.splitlines()[0] == "n,expected,computed,status,note"
        assert text.splitlines()[-1] == "# 3/3 match"

    def test_outside_table(self):
        with pytest.raises(ContractError):
            table1_check([121])


class TestCensusReport:
    def test_six(self):
        recs = census_report(6)
        assert [r.labelling for r in recs] == ["2^1:std;3^1:std", "2^1:std;3^1:std|2->3:2"]
        std, twist = recs
        assert (std.s, std.t, std.lam, std.genus, std.face_length) == (6, 1, 1, 10, 12)
        assert (twist.s, twist.t, twist.lam, twist.genus, twist.face_length) == (2, 3, 2, 4, 4)
        assert twist.reflexible and twist.self_petrie

    def test_nine(self):
        recs = census_report(9)
        chiral = [r for r in recs if not r.reflexible]
        assert len(chiral) == 2
        assert {r.mirror_partner for r in chiral} == {r.labelling for r in chiral}

    def test_four(self):
        recs = census_report(4)
        assert [r.genus for r in recs] == [3, 1]
        assert all(r.reflexible and r.self_petrie for r in recs)

    def test_budget(self):
        with pytest.raises(ScaleError):
            census_report(61)

    @pytest.mark.parametrize("n", [12, 24, 27, 30, 40, 45, 48, 56, 60])
    def test_sums(self, n):
        recs = census_report(n)
        assert len(recs) == nu_formula(n).total
        assert sum(r.reflexible for r in recs) == rho(n)
        assert sum(r.self_petrie for r in recs) == sigma(n)
        chiral = [r for r in recs if not r.reflexible]
        assert len(chiral) == 2 * chi_pairs(n)
        by_id = {r.labelling: r for r in recs}
        for r in chiral:
            assert r.mirror_partner != r.labelling
            assert by_id[r.mirror_partner].mirror_partner == r.labelling
            assert r.petrie_partner is None


class TestOutput:
    def test_csv(self):
        buf = io.StringIO(newline="")
        write_csv(census_range([6, 4]), buf)
        text = buf.getvalue()
        assert "\r" not in text
        rows = list(csv.reader(io.StringIO(text)))
        assert tuple(rows[0]) == CSV_COLUMNS
        assert [r[0] for r in rows[1:]] == ["4", "4", "6", "6"]
        assert rows[1][7] in ("true", "false")

    def test_empty_petrie_partner(self):
        buf = io.StringIO()
        write_csv(census_report(9), buf)
        lines = buf.getvalue().splitlines()
        assert any(line.endswith(",") for line in lines[1:])

    def test_json(self):
        buf = io.StringIO()
        write_json(census_report(6), buf)
        data = json.loads(buf.getvalue())
        assert data[1]["lambda"] == 2 and data[1]["reflexible"] is True
        assert list(data[0]) == list(CSV_COLUMNS)

    def test_jobs_deterministic(self):
        ns = range(20, 31)
        assert census_range(ns, jobs=1) == census_range(ns, jobs=3)
