import json
import math

import pytest

import dhtsp


def single_target(c1, c2):
    return dhtsp.Instance([[0, c1], [c1, 0]], [[0, c2], [c2, 0]])


def test_single_target_solve():
    result = dhtsp.solve(single_target(3, 1), trace=True)
    assert result["total"] == 2
    assert result["dual_objective"] == 2
    assert result["iterations"] == 2
    assert result["feasible"] is True
    assert result["tour2"] == [0, 1, 0]
    assert [e["case"] for e in result["trace"]] == ["E2", "E3"]
    assert result["trace"][0]["eps"] == [3, 1, None]


def test_exact_mode_reports_rationals():
    result = dhtsp.solve(single_target(1, 5), exact=True)
    assert result["arithmetic"] == "rational"
    assert result["exact"]["total"] == "2"
    assert result["tour1"] == [0, 1, 0]


def test_generate_validate_roundtrip(tmp_path):
    inst = dhtsp.generate(12, 1.5, 42)
    assert inst.n_targets == 12
    assert dhtsp.validate(inst).ok
    path = tmp_path / "inst.json"
    inst.write(path)
    assert dhtsp.Instance.read(path) == inst
    assert dhtsp.Instance.from_json(inst.to_json()) == inst
    assert json.loads(inst.to_json())["n_targets"] == 12
    assert inst.cost2[1][2] == pytest.approx(1.5 * inst.cost1[1][2])


def test_generate_rejects_small_alpha():
    with pytest.raises(ValueError, match="alpha must be >= 1"):
        dhtsp.generate(3, 0.5, 1)


def test_validation_names_the_rule():
    inst = dhtsp.Instance([[0, 3, 3], [3, 0, 5], [3, 5, 0]], [[0, 3, 3], [3, 0, 4], [3, 4, 0]])
    report = dhtsp.validate(inst)
    assert not report.ok
    assert report.violations[0].rule == "dominance"
    assert list(report.violations[0].indices) == [1, 2]


def test_parse_error_names_the_field():
    with pytest.raises(dhtsp.ParseError, match="cost2"):
        dhtsp.Instance.from_json('{"n_targets": 1, "cost1": [[0, 1], [1, 0]]}')


def test_ratio_within_two_of_optimum():
    for seed in range(20):
        inst = dhtsp.generate(2 + seed % 6, 1.2, seed)
        result = dhtsp.solve(inst, check_invariants=True)
        opt = dhtsp.solve_exact(inst)["optimal"]
        assert result["total"] <= 2 * opt * (1 + 1e-6)
        assert result["dual_objective"] <= opt + 1e-6
        assert result["hsf_cost"] <= result["dual_objective"] + 1e-6
        assert result["iterations"] <= 3 * inst.n_targets + 2


def test_incremental_matches_full_scan():
    inst = dhtsp.generate(60, 1.3, 7)
    a = dhtsp.solve(inst, trace=True)
    b = dhtsp.solve(inst, trace=True, full_scan=True)
    assert a["trace"] == b["trace"]
    assert math.isclose(a["total"], b["total"])


def test_oracle_size_guard():
    with pytest.raises(dhtsp.SizeGuardError):
        dhtsp.solve_exact(dhtsp.generate(dhtsp.ORACLE_MAX_TARGETS + 1, 1.0, 1))


def test_empty_instance():
    inst = dhtsp.generate(0, 1.0, 7)
    assert dhtsp.solve(inst)["total"] == 0
    assert dhtsp.solve_exact(inst)["optimal"] == 0
