"""Smoke tests for the python bindings."""

import os
import subprocess

import pytest

import faidlab


@pytest.fixture(scope="module")
def tanner():
    return faidlab.tanner155()


def test_update_rules():
    assert faidlab.vn_update(0, 0, 1) == 1
    assert faidlab.vn_update(-2, 1, 1) == 1
    assert faidlab.vn_update(3, 3, -1) == 3
    assert faidlab.cn_update([2, -1, 3, 3]) == -1
    assert faidlab.cn_update([0, 3, 3, 3]) == 0
    assert faidlab.decimation_decide([3, 2, 0], 1) == 1
    assert faidlab.decimation_decide([1, 1, 1], 1) == 0
    assert faidlab.vn_update_decimated(-3, -3, -1, 1) == 3
    assert faidlab.decide_bit([1, 2, -3], 1) == 0
    with pytest.raises(ValueError):
        faidlab.vn_update(4, 0, 1)


def test_graph_and_roundtrip(tanner):
    assert (tanner.n, tanner.m) == (155, 93)
    assert tanner.girth() == 8
    assert tanner.left_degree() == 3
    text = tanner.to_alist()
    again = faidlab.TannerGraph.from_alist(text)
    assert again.to_alist() == text


def test_decoding(tanner):
    zero = [0] * 155
    result = faidlab.faid_decode(tanner, zero)
    assert result.converged and result.iterations_used == 1

    word = list(zero)
    for v in (0, 17, 99):
        word[v] = 1
    for decode in (
        lambda w: faidlab.faid_decode(tanner, w),
        lambda w: faidlab.dfaid_decode(tanner, w, nd=1),
        lambda w: faidlab.bp_decode(tanner, w, alpha=0.01),
    ):
        result = decode(word)
        assert result.converged
        assert result.residual_errors == []


def test_cycle_pattern_decimation(tanner):
    vnodes, _ = tanner.eight_cycles(1)[0]
    word = [0] * 155
    for v in vnodes:
        word[v] = 1
    result, trace = faidlab.run_with_trace(tanner, "dfaid", word, nd=1)
    assert result.converged
    events = trace.new_decimations()
    assert events, "cycle patterns must trigger decimation"
    assert all(e.flag == 1 for e in events)
    assert all(e.node not in vnodes for e in events)
    assert faidlab.audit_lemma1(trace, sorted(vnodes)) == []
    assert faidlab.audit_lemma2(trace, sorted(vnodes)) == []
    assert '"new_decimations"' in trace.to_jsonl().splitlines()[2]


def test_certify_and_fer(tanner):
    report = faidlab.certify(tanner, "faid", weight=1, exhaustive=True)
    assert report.patterns_tested == 155
    assert report.failures == []

    records = faidlab.fer_simulate(
        tanner, "dfaid", [0.02], seed=7, max_frames=200, min_frame_errors=10**6, nd=4
    )
    assert len(records) == 1
    assert records[0]["frames"] == 200
    assert records[0]["frame_errors"] <= records[0]["frames"]
    again = faidlab.fer_simulate(
        tanner, "dfaid", [0.02], seed=7, max_frames=200, min_frame_errors=10**6, nd=4
    )
    assert records == again


def test_bsc_sampling():
    a = faidlab.bsc_sample(0.05, 3, 11, 155)
    assert a == faidlab.bsc_sample(0.05, 3, 11, 155)
    assert set(a) <= set(range(155))
    wide = set(faidlab.bsc_sample(0.2, 3, 11, 155))
    assert set(a) <= wide  # nested supports across alpha


def test_verify_theorem1_small():
    report = faidlab.verify_theorem1(faidlab.tanner155(), limit=40)
    assert report["violations"] == 0
    assert report["cycles_enumerated"] == 40


def test_cli_available():
    cli = os.environ.get("FAIDLAB_CLI")
    if not cli:
        pytest.skip("FAIDLAB_CLI not set")
    out = subprocess.run([cli, "tanner155"], capture_output=True, text=True, check=True)
    assert out.stdout.startswith("155 93\n3 5\n")
