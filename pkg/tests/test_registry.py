import json

import pytest

from conway_table.exceptions import DuplicateFamilyError, RegistrySchemaError, UnknownFamilyError
from conway_table.registry import (
    FamilyRecord,
    FamilyRegistry,
    load,
    seed_counts,
    summary_frame,
    verify_all,
    verify_family,
)

SEED_COUNTS = {
    "0_1": 1,
    "2_1^2": 2,
    "3_1": 3,
    "4_1^2": 4,
    "4_1": 5,
    "5_1": 5,
    "5_2": 7,
    "5_1^2": 8,
    "6_2^1": 6,
    "6_1": 9,
    "6_2^2": 10,
    "6_3^2": 12,
    "6_2": 11,
    "6_3": 13,
    "6_1^3": 12,
    "C_2^3": 16,
}

MISPRINTED = {"c5-whitehead-2", "c5-whitehead-3", "c6-61-2"}

EXPLICIT_METRIC = (
    ["c6-621-1", "c6-621-2"]
    + [f"c6-61-{n}" for n in range(1, 5)]
    + [f"c6-622-{n}" for n in range(1, 4)]
    + [f"c6-632-{n}" for n in range(1, 7)]
    + [f"c6-62-{n}" for n in range(1, 9)]
    + [f"c6-63-{n}" for n in range(1, 11)]
    + ["c6-613-2", "c6-613-3"]
)
METRIC_LITERAL = "mat2(0, 1; 1, 0)"


def write_document(path, families):
    path.write_text(json.dumps({"schema_version": 1, "families": families}), encoding="utf-8")
    return path


def hopf_record(**overrides):
    data = {
        "id": "c2-test-1",
        "seed_label": "2_1^2",
        "conway_count": 2,
        "expressions": ["row2(1, a1) M col2(a2, 1)"],
        "expected_terms": {"value": 2, "provenance": "derived"},
    }
    data.update(overrides)
    return data


class TestLoading:
    def test_size(self, registry):
        assert len(registry) == 65
        assert registry.counts_by_conways() == {1: 1, 2: 1, 3: 2, 4: 5, 5: 12, 6: 44}

    def test_ids_are_unique_and_ordered(self, registry):
        ids = [r.id for r in registry]
        assert len(set(ids)) == len(ids)
        assert ids[0] == "c1-rational-1"
        assert ids[-1] == "c6-borromean-7"

    def test_get_and_contains(self, registry):
        assert "c3-trefoil-1" in registry
        assert registry.get("c3-trefoil-1").seed_label == "3_1"
        with pytest.raises(UnknownFamilyError):
            registry.get("c9-nothing-1")

    def test_unknown_id_is_also_a_key_error(self, registry):
        with pytest.raises(KeyError):
            registry.get("c9-nothing-1")

    def test_by_seed(self, registry):
        groups = registry.by_seed()
        assert set(groups) == set(SEED_COUNTS)
        assert len(groups["6_2"]) == 8
        assert len(groups["C_2^3"]) == 7

    def test_errata_documented(self, registry):
        corrected = {r.id for r in registry if r.errata}
        assert corrected == MISPRINTED
        for family_id in MISPRINTED:
            record = registry.get(family_id)
            assert record.as_printed != record.expressions

    def test_explicit_metric_kept_as_printed(self, registry):
        assert len(EXPLICIT_METRIC) == 35
        for record in registry:
            printed = record.as_printed[0]
            if record.id in EXPLICIT_METRIC:
                assert METRIC_LITERAL in printed, record.id
                assert " M " not in printed, record.id
                if record.id not in MISPRINTED:
                    assert printed.replace(METRIC_LITERAL, "M") == record.expressions[0]
                assert record.as_printed[1:] == record.expressions[1:]
            else:
                assert METRIC_LITERAL not in printed, record.id

    def test_record_round_trip(self, registry):
        for record in registry:
            assert FamilyRecord.from_dict(record.to_dict()) == record

    def test_bare_list_accepted(self, tmp_path):
        path = tmp_path / "families.json"
        path.write_text(json.dumps([hopf_record()]), encoding="utf-8")
        assert [r.id for r in load(path)] == ["c2-test-1"]


class TestSchemaErrors:
    def test_empty_file(self, tmp_path):
        path = tmp_path / "families.json"
        path.write_text("", encoding="utf-8")
        with pytest.raises(RegistrySchemaError) as info:
            load(path)
        assert info.value.field == "<document>"

    def test_missing_field(self, tmp_path):
        record = hopf_record()
        del record["expressions"]
        with pytest.raises(RegistrySchemaError) as info:
            load(write_document(tmp_path / "f.json", [record]))
        assert info.value.field == "expressions"
        assert info.value.index == 0

    def test_conway_count_mismatch(self, tmp_path):
        path = write_document(tmp_path / "f.json", [hopf_record(conway_count=3)])
        with pytest.raises(RegistrySchemaError) as info:
            load(path)
        assert info.value.field == "conway_count"

    def test_conway_count_range(self, tmp_path):
        with pytest.raises(RegistrySchemaError):
            load(write_document(tmp_path / "f.json", [hopf_record(conway_count=7)]))

    def test_duplicate_id(self, tmp_path):
        path = write_document(tmp_path / "f.json", [hopf_record(), hopf_record()])
        with pytest.raises(DuplicateFamilyError):
            load(path)

    def test_bad_provenance(self, tmp_path):
        record = hopf_record(expected_terms={"value": 2, "provenance": "folklore"})
        with pytest.raises(RegistrySchemaError) as info:
            load(write_document(tmp_path / "f.json", [record]))
        assert info.value.field == "expected_terms"

    def test_stated_count_must_be_published(self, tmp_path):
        record = hopf_record(expected_terms={"value": 2, "provenance": "paper"})
        with pytest.raises(RegistrySchemaError):
            load(write_document(tmp_path / "f.json", [record]))

    def test_unreadable_expression(self, tmp_path):
        record = hopf_record(expressions=["row2(1, a1) M col2(a2 1)"])
        with pytest.raises(RegistrySchemaError) as info:
            load(write_document(tmp_path / "f.json", [record]))
        assert info.value.field == "expressions"


class TestVerifyFamily:
    def test_trefoil(self, registry):
        report = verify_family(registry.get("c3-trefoil-1"))
        assert report.canonical.render() == "a1*a2 + a1*a3 + a2*a3"
        assert report.seed_count == 3
        assert report.seed_value == 3
        assert report.printed_match
        assert report.chain_agree
        assert report.oracle_agree is None
        assert report.passed

    def test_every_family_passes(self, registry, reports):
        failed = [family_id for family_id, report in reports.items() if not report.passed]
        assert failed == []
        assert all(r.multilinear_unit for r in reports.values())
        assert all(r.branches_agree for r in reports.values())

    def test_seed_value_equals_term_count(self, reports):
        assert len(reports) == 65
        for family_id, report in reports.items():
            expected = report.canonical.term_count()
            assert report.seed_value == report.seed_count == expected, family_id

    def test_seed_value_is_checked(self):
        record = FamilyRecord.from_dict(hopf_record(expressions=["row2(1, a1) M col2(2 a2, 1)"]))
        report = verify_family(record)
        assert report.multilinear_unit is False
        assert (report.seed_count, report.seed_value) == (2, 3)
        assert not report.passed

    def test_published_counts(self, reports):
        assert reports["c6-62-1"].seed_count == 11
        assert reports["c6-632-1"].seed_count == 12
        assert reports["c6-63-1"].seed_count == 13
        assert reports["c6-borromean-1"].seed_count == 16

    def test_one_count_per_seed(self, registry, reports):
        records = list(registry)
        found = seed_counts(records, [reports[r.id] for r in records])
        assert found == {label: (count,) for label, count in SEED_COUNTS.items()}

    def test_printed_functions(self, registry, reports):
        for record in registry:
            if record.printed_function is not None:
                assert reports[record.id].printed_match, record.id

    def test_with_oracle(self, registry):
        report = verify_family(registry.get("c5-whitehead-6"), oracle_trials=20, seed=3)
        assert report.oracle_agree
        assert report.passed

    def test_misprints_fail_as_printed(self, registry):
        reports = verify_all(list(registry), as_printed=True)
        failed = {r.family_id for r in reports if not r.passed}
        assert failed == MISPRINTED
        assert all(r.as_printed for r in reports)

    def test_explicit_metric_verifies_as_printed(self, registry):
        record = registry.get("c6-61-1")
        report = verify_family(record, as_printed=True)
        assert report.passed
        assert report.canonical == verify_family(record).canonical
        assert report.seed_count == 9

    def test_explicit_metric_with_two_metrics(self, registry):
        report = verify_family(registry.get("c6-613-2"), as_printed=True, oracle_trials=10)
        assert report.passed
        assert report.oracle_agree
        assert report.seed_count == 12

    def test_repeated_term_shows_as_mismatch(self, registry):
        report = verify_family(registry.get("c5-whitehead-2"), as_printed=True)
        assert not report.branches_agree
        assert len(report.mismatches) == 1

    def test_unbalanced_caption_is_a_problem(self, registry):
        report = verify_family(registry.get("c5-whitehead-3"), as_printed=True)
        assert report.problems
        assert report.problems[0].startswith("expression 1:")
        assert report.canonical is not None

    def test_unexpected_count(self):
        record = FamilyRecord.from_dict(
            hopf_record(expected_terms={"value": 3, "provenance": "derived"})
        )
        report = verify_family(record)
        assert report.expected_match is False
        assert not report.passed

    def test_report_dict(self, reports):
        data = reports["c2-rational-1"].to_dict()
        assert data["canonical"] == "1 + a1*a2"
        assert data["seed_count"] == 2
        assert data["seed_value"] == 2
        assert data["passed"] is True
        json.dumps(data)


class TestVerifyAll:
    def test_empty(self):
        assert verify_all([]) == []

    def test_threads_keep_order(self, registry):
        records = list(registry)[:20]
        assert verify_all(records, jobs=4) == verify_all(records, jobs=1)


class TestSummaryFrame:
    def test_columns_and_rows(self, registry, reports):
        records = list(registry)
        frame = summary_frame(records, [reports[r.id] for r in records])
        assert list(frame.columns) == ["id", "seed", "conways", "conway_number", "factorizations"]
        assert len(frame) == 65
        row = frame.set_index("id").loc["c3-trefoil-1"]
        assert (row["seed"], row["conways"], row["conway_number"]) == ("3_1", 3, 3)

    def test_registry_from_records(self, registry):
        assert len(FamilyRegistry(list(registry)[:3])) == 3
