"""Acceptance suite: one test per criterion; the PASS/FAIL lines are repeated in the terminal summary."""

from odrcount import selftest, symfunc


def test_criterion_1_dynkin_table(acceptance_report):
    acceptance_report(selftest.dynkin_table())


def test_criterion_2_rank2_rank3_closed_forms(acceptance_report):
    acceptance_report(selftest.rank2_rank3_closed_forms())


def test_criterion_3_oracle_agreement(acceptance_report):
    acceptance_report(selftest.oracle_agreement())


def test_criterion_4_symfunc_route(acceptance_report, tmp_path, monkeypatch):
    # a cold table, so its construction counts against the budget
    monkeypatch.setattr(symfunc, "_TABLES", {})
    acceptance_report(selftest.symfunc_route(cache_dir=tmp_path))


def test_criterion_5_mixed_hodge_table(acceptance_report):
    acceptance_report(selftest.mixed_hodge_table())


def test_criterion_6_character_sums(acceptance_report):
    acceptance_report(selftest.character_sums())


def test_criterion_7_quiver_counts(acceptance_report):
    acceptance_report(selftest.quiver_counts())


def test_criterion_8_structural_properties(acceptance_report, tmp_path):
    acceptance_report(selftest.structural_properties(cache_dir=tmp_path))
