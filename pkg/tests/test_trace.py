import itertools

import pytest

from src.harness.generators import generate_trace
from src.harness.trace import RunStats, TraceOp, format_trace, parse_trace, read_trace, run_trace
from src.dynamic.planar import PlanarDynamicGraph
from src.utils.errors import FlipBudgetExceeded, ParseError

K5_TRACE = "\n".join(
    ["n 5"]
    + [f"I {a} {b}" for a, b in itertools.combinations(range(5), 2)]
    + ["P", "C 2", "D 0 1", "P", "C 2", "N 0 1"]
) + "\n"


def test_comments_and_blank_lines_are_skipped():
    trace = parse_trace("# header comes next\n\nn 3\nI 0 1  # first edge\n  p\n")
    assert trace["n"] == 3
    assert trace["ops"] == [TraceOp("I", (0, 1), 4), TraceOp("P", (), 5)]


def test_empty_trace():
    trace = parse_trace("")
    assert trace == {"n": 0, "ops": []}
    result = run_trace(trace)
    assert result["outputs"] == []
    stats = result["stats"]
    stats.pop("wall_ms")
    expected = RunStats().model_dump()
    expected.pop("wall_ms")
    assert stats == expected


@pytest.mark.parametrize(
    "text, line_no",
    [
        ("I 0 1\n", 1),
        ("n three\n", 1),
        ("n 3\nX 0 1\n", 2),
        ("n 3\nI 0 1\nI 0\n", 3),
        ("n 3\nC 0 1\n", 2),
        ("n 3\nI 0 3\n", 2),
        ("n 3\nI 1 1\n", 2),
        ("n 3\nD -1 2\n", 2),
    ],
)
def test_malformed_lines_report_their_number(text, line_no):
    with pytest.raises(ParseError) as info:
        parse_trace(text)
    assert info.value.line_no == line_no
    assert f"line {line_no}" in str(info.value)


def test_k5_trace_defers_one_edge():
    result = run_trace(parse_trace(K5_TRACE))
    outputs = result["outputs"]
    assert outputs[:10].count("rejected") == 1
    assert outputs[10:15] == ["false", "false", "deleted", "true", "true"]
    assert outputs[15] == "absent"
    stats = result["stats"]
    assert stats["inserts"] == 10
    assert stats["rejects"] == 1
    assert stats["deletes"] == 1
    assert stats["ops"] == 16
    assert stats["flips_total"] == stats["flips_art"] + stats["flips_sr"] + stats["flips_p"]


def test_neighbour_output_names_four_darts():
    result = run_trace(parse_trace("n 3\nI 0 1\nI 1 2\nN 1 0\nN 0 2\n"))
    darts = result["outputs"][2].split()
    assert len(darts) == 4
    assert darts[0] == darts[1] == "0>1#0"
    assert result["outputs"][3] == "absent"


def test_structural_errors_carry_the_line():
    with pytest.raises(ParseError) as info:
        run_trace(parse_trace("n 3\nI 0 1\nI 1 0\n"))
    assert info.value.line_no == 3
    with pytest.raises(ParseError) as info:
        run_trace(parse_trace("n 3\nD 0 1\n"))
    assert info.value.line_no == 2


def test_queries_leave_the_edge_set_alone():
    text = "n 6\n" + "".join(f"I {a} {b}\n" for a in range(3) for b in range(3, 6) if (a, b) != (2, 5)) + "Q 2 5\nQ 0 1\nP\n"
    result = run_trace(parse_trace(text), check_oracle=True)
    assert result["outputs"][-3:] == ["no", "yes", "true"]
    assert result["stats"]["mismatches"] == 0


def test_query_ignores_unrelated_nonplanar_components():
    text = "n 8\n" + "".join(f"I {a} {b}\n" for a, b in itertools.combinations(range(5), 2)) + "I 5 6\nQ 6 7\nP\n"
    result = run_trace(parse_trace(text), check_oracle=True)
    assert result["outputs"][-2:] == ["yes", "false"]
    assert result["stats"]["mismatches"] == 0
    assert result["problems"] == []


def test_search_failures_are_not_reported_as_bad_input(monkeypatch):
    def blow_up(self, u, v):
        raise FlipBudgetExceeded("flip budget exhausted")

    monkeypatch.setattr(PlanarDynamicGraph, "insert", blow_up)
    with pytest.raises(FlipBudgetExceeded):
        run_trace(parse_trace("n 3\nI 0 1\n"))


@pytest.mark.parametrize("model, seed", [("random", 1), ("random", 2), ("churn", 3), ("planar-growth", 4)])
def test_generated_traces_match_the_oracle(model, seed):
    trace = parse_trace(generate_trace(model, 7, 60, seed))
    result = run_trace(trace, check_oracle=True, validate_every=True)
    assert result["problems"] == []
    assert RunStats(**result["stats"]).ok


def test_format_and_read_back(tmp_path):
    ops = [TraceOp("I", (0, 1)), TraceOp("Q", (1, 2)), TraceOp("P", ())]
    path = tmp_path / "small.trace"
    path.write_text(format_trace(3, ops))
    trace = read_trace(str(path))
    assert trace["n"] == 3
    assert [str(op) for op in trace["ops"]] == ["I 0 1", "Q 1 2", "P"]
