"""Smoke tests for the python bindings."""

import hashlib

import pytest

import gridforge as gf


def test_capacity_math():
    r1 = gf.Resource("R1", mips=10, bandwidth_mbps=100, memory_mb=100)
    params = gf.SchedulingParams(granularity_s=3, tcomm_s=3)
    assert gf.group_capacity_mi(r1, params) == 30.0
    assert gf.transfer_capacity_mb(r1, params) == 300.0


def test_grouping_wraps_across_passes():
    r1 = gf.Resource("R1", mips=10, bandwidth_mbps=100, memory_mb=100)
    params = gf.SchedulingParams()
    jobs = [
        gf.Job("J1", "U001", length_mi=10, submit_seq=1),
        gf.Job("J2", "U001", length_mi=15, submit_seq=2),
        gf.Job("J3", "U001", length_mi=20, submit_seq=3),
    ]
    outcome = gf.group_jobs(jobs, [r1], params, gf.Mode.jgs)
    assert [g.members for g in outcome.groups] == [["J1", "J2"], ["J3"]]
    assert outcome.overflow == []


def test_drain_overflow_reoffers_jobs():
    params = gf.SchedulingParams()
    r1 = gf.Resource("R1", mips=10, bandwidth_mbps=100, memory_mb=100)
    r4 = gf.Resource("R4", mips=40, bandwidth_mbps=250, memory_mb=400)
    jobs = [gf.Job("J1", "U001", length_mi=100, submit_seq=1)]
    stuck = gf.group_jobs(jobs, [r1], params, gf.Mode.jgs)
    assert stuck.overflow == ["J1"]
    drained = gf.drain_overflow(stuck, jobs, [r4], params, gf.Mode.jgs)
    assert drained.overflow == []
    assert [g.resource_id for g in drained.groups] == ["R4"]


def test_feasibility_modes():
    r1 = gf.Resource("R1", mips=10, bandwidth_mbps=100, memory_mb=100)
    params = gf.SchedulingParams()
    jobs = [gf.Job("J1", "U001", length_mi=25, memory_mb=150, submit_seq=1)]
    outcome_jgs = gf.group_jobs(jobs, [r1], params, gf.Mode.jgs)
    outcome_djg = gf.group_jobs(jobs, [r1], params, gf.Mode.djg)
    assert outcome_jgs.overflow == ["J1"]  # memory violates condition (ii)
    assert [g.members for g in outcome_djg.groups] == [["J1"]]


def test_hashes_match_hashlib():
    for message in (b"", b"abc", b"gridforge"):
        assert gf.get_hash(message, "md5") == hashlib.md5(message).digest()
        assert gf.get_hash(message, "sha256") == hashlib.sha256(message).digest()


def test_signature_roundtrip():
    priv, pub = gf.generate_keypair(1024)
    digest = gf.get_hash(b"hello", "sha256")
    signature = gf.create_signature(digest, "sha256", priv)
    assert gf.verify_signature(digest, "sha256", signature, pub)
    other = gf.get_hash(b"hellp", "sha256")
    assert not gf.verify_signature(other, "sha256", signature, pub)


def test_builtin_comparison_trend():
    scenario = gf.builtin_paper_r16()
    rows = gf.compare_algorithms(scenario, [3, 5, 8])
    assert [r.jobs for r in rows] == [3, 5, 8]
    for row in rows:
        assert row.srjm_total_s < row.djgb_total_s
    totals = [r.srjm_total_s for r in rows]
    assert totals == sorted(totals)


def test_run_report_sections():
    scenario = gf.builtin_paper_r16()
    report = gf.run_report(scenario, "srjm")
    assert "[summary]" in report
    assert "[resources]" in report


def test_bad_keypair_size_raises():
    with pytest.raises(Exception):
        gf.generate_keypair(640)
