from curvesplit.conjscan import (
    R7_FAMILIES,
    certify_unbalanced,
    classification7_spotcheck,
    scan_conjecture9,
    scan_record,
    search_min_product,
    summarize_scan,
)
from curvesplit.lattice import DivClass, NumType


class TestScan:
    def test_small_cap_all_balanced(self):
        # degrees <= 3 admit no even-degree all-odd exceptional type, and a
        # brute-force check of the short list gives gaps 0 or 1 throughout
        records, summary = scan_conjecture9(3, seed=5)
        assert summary["n_types"] == 4
        assert summary["n_semiadjoint"] == 0
        assert all(r.gap is None or r.gap <= 1 for r in records)
        assert summary["conjecture_consistent"]

    def test_mid_cap_includes_both_unbalanced_kinds(self):
        records, summary = scan_conjecture9(8, seed=5)
        by_type = {tuple(r.ntype.to_json()): r for r in records}
        asc = by_type[(4, 3, 1, 1, 1, 1, 1, 1, 1, 1)]
        non_asc = by_type[(8, 3, 3, 3, 3, 3, 3, 3, 1, 1)]
        assert asc.ascenzi and asc.gap == 2
        assert not non_asc.ascenzi and non_asc.gap == 2
        assert summary["proved_direction_violations"] == []

    def test_records_independent_of_enumeration_order(self):
        T = NumType(6, (3, 2, 2, 2, 2, 2, 2, 2, 0))
        a = scan_record(T, seed=9)
        b = scan_record(T, seed=9)
        assert a == b

    def test_summary_flags_missing_semiadjoint_gap(self):
        records, _ = scan_conjecture9(4, seed=5)
        summary = summarize_scan(records)
        assert summary["n_errors"] == 0
        assert summary["max_gap"] is not None


class TestCertify:
    def test_flagship_certificate(self, points9):
        cert = certify_unbalanced(DivClass(8, (3, 3, 3, 3, 3, 3, 3, 1, 1)), points9, seed=2)
        assert cert is not None
        assert cert.a_class == (3, 1, 1, 1, 1, 1, 1, 1, 0, 0)
        assert cert.h1_a == 0 and cert.le_a == 1 and cert.h0_residual == 0
        assert cert.computed.a == 3
        assert cert.product_bound == 3
        assert cert.valid

    def test_second_known_certificate(self, points9):
        cert = certify_unbalanced(DivClass(12, (5, 5, 5, 5, 3, 3, 3, 3, 3)), points9, seed=2)
        assert cert is not None and cert.valid
        assert cert.a_class == (5, 2, 2, 2, 2, 1, 1, 1, 1, 1)
        assert cert.computed.a == 5

    def test_odd_degree_has_none(self, points9):
        assert certify_unbalanced(DivClass(5, (2, 2, 2, 2, 2, 2, 1, 1, 0)), points9, seed=2) is None


class TestSearch:
    def test_ascenzi_pencil_witness(self, points9):
        # for the unbalanced Ascenzi type, L - E_1 qualifies and attains d - m_1
        E = DivClass(4, (3, 1, 1, 1, 1, 1, 1, 1, 1))
        res = search_min_product(E, points9, dA_max=3)
        assert res is not None
        assert res.product == 1
        assert res.witness == (1, 1, 0, 0, 0, 0, 0, 0, 0, 0)

    def test_flagship_minimum(self, points9):
        E = DivClass(8, (3, 3, 3, 3, 3, 3, 3, 1, 1))
        res = search_min_product(E, points9, dA_max=5)
        assert res is not None
        assert res.product == 3
        assert res.witness == (3, 1, 1, 1, 1, 1, 1, 1, 0, 0)

    def test_compare_against_computed_a(self, points9):
        E = DivClass(8, (3, 3, 3, 3, 3, 3, 3, 1, 1))
        res = search_min_product(E, points9, dA_max=4, compare_seed=7)
        assert res is not None and res.computed_a == 3 == res.product


class TestSpotcheck:
    def test_table_has_57_rows(self):
        assert len(R7_FAMILIES) == 57
        orbits = {f.orbit for f in R7_FAMILIES}
        assert orbits == {"E7", "H0+dH1", "H2+dH1", "2H0", "H1"}

    def test_never_ascenzi_family_gap_grows(self):
        fam = next(f for f in R7_FAMILIES if f.base == (8, 3, 3, 3, 3, 3, 3, 3))
        rows = classification7_spotcheck(fam, range(3), seed=13)
        assert [r.computed_gap for r in rows] == [2, 3, 4]
        assert all(r.ok for r in rows)

    def test_absolute_value_family(self):
        fam = next(
            f
            for f in R7_FAMILIES
            if f.base == (5, 2, 2, 2, 2, 2, 2, 0) and f.step == (5, 2, 2, 2, 2, 2, 2, 1)
        )
        rows = classification7_spotcheck(fam, range(3), seed=13)
        assert [r.computed_gap for r in rows] == [1, 0, 1]
        assert all(r.ok for r in rows)

    def test_balanced_big_member(self):
        fam = next(f for f in R7_FAMILIES if f.base == (10, 4, 4, 4, 4, 4, 4, 0))
        rows = classification7_spotcheck(fam, range(3), seed=13)
        assert len(rows) == 1
        assert rows[0].computed_gap == 0 and rows[0].ok
