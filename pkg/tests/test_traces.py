import numpy as np
import pandas as pd
import pytest

from gradpush.errors import TraceIOError
from gradpush.harness.traces import COLUMNS, RunTrace, emit_csv, parse_comment, read_csv, to_frame


def test_empty_trace_is_header_only(tmp_path):
    path = tmp_path / "empty.csv"
    emit_csv([], path)
    assert path.read_bytes() == b"run,t,node,metric,value\n"
    frame = read_csv(path)
    assert frame.empty and list(frame.columns) == COLUMNS
    assert frame.attrs["comment"] is None


def test_single_record(tmp_path):
    path = tmp_path / "one.csv"
    emit_csv([RunTrace.from_rows(0, [(1, 2, "gap_zhat", 0.1)])], path)
    lines = path.read_bytes().split(b"\n")
    assert lines == [b"run,t,node,metric,value", b"0,1,2,gap_zhat,0.10000000000000001", b""]


def test_round_trip_is_byte_identical(tmp_path):
    rng = np.random.default_rng(3)
    traces = [
        RunTrace.from_rows(run, [(t, node, "dist_z", float(v)) for t in range(3) for node, v in enumerate(rng.standard_normal(2))])
        for run in (1, 0)
    ]
    first, second = tmp_path / "a.csv", tmp_path / "b.csv"
    emit_csv(traces, first, comment="tracked_nodes=0,1 diverged_runs= p=1.5")
    frame = read_csv(first)
    assert frame.attrs["comment"] == "tracked_nodes=0,1 diverged_runs= p=1.5"
    emit_csv(frame, second)
    assert first.read_bytes() == second.read_bytes()
    original = to_frame(traces)
    np.testing.assert_array_equal(frame["value"].to_numpy(), original["value"].to_numpy())


def test_rows_are_sorted(tmp_path):
    trace = RunTrace.from_rows(0, [(2, 0, "b", 1.0), (1, 1, "a", 2.0), (1, 0, "b", 3.0), (1, 0, "a", 4.0)])
    frame = to_frame([trace])
    assert frame[["t", "node", "metric"]].values.tolist() == [[1, 0, "a"], [1, 0, "b"], [1, 1, "a"], [2, 0, "b"]]


def test_lf_line_endings(tmp_path):
    path = tmp_path / "lf.csv"
    emit_csv([RunTrace.from_rows(0, [(1, 0, "m", 1.0), (2, 0, "m", 0.5)])], path, comment="x=1")
    data = path.read_bytes()
    assert b"\r" not in data
    assert data.startswith(b"# x=1\n")


def test_parse_comment():
    assert parse_comment("tracked_nodes=3,7 diverged_runs= p=2.0") == {
        "tracked_nodes": "3,7",
        "diverged_runs": "",
        "p": "2.0",
    }
    assert parse_comment(None) == {}


def test_io_errors(tmp_path):
    with pytest.raises(TraceIOError):
        read_csv(tmp_path / "missing.csv")
    blocker = tmp_path / "file"
    blocker.write_text("x", encoding="utf-8")
    with pytest.raises(TraceIOError):
        emit_csv([], blocker / "nested" / "out.csv")
    bad = tmp_path / "bad.csv"
    bad.write_text("a,b\n1,2\n", encoding="utf-8")
    with pytest.raises(TraceIOError):
        read_csv(bad)


def test_emit_accepts_frames(tmp_path):
    frame = pd.DataFrame({"run": [0], "t": [1], "node": [-1], "metric": ["consensus_residual"], "value": [0.25]})
    frame.attrs["comment"] = "p=1"
    path = tmp_path / "frame.csv"
    emit_csv(frame, path)
    assert read_csv(path).attrs["comment"] == "p=1"
