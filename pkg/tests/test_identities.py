from __future__ import annotations

import dataclasses
import json
import warnings

import pytest

from degenharm import identities as ids
from degenharm.errors import ConfigInvalid, UnknownIdentity, UnsupportedGrid
from degenharm.identities import (
    FAIL,
    KNOWN_MISPRINT,
    PASS,
    Grid,
    check_identity,
    get_identity,
    list_identities,
    replay,
    run_suite,
)

SMALL = {"lambdas": ["1/2", "symbolic"], "n_max": 4, "r_max": 2, "order": 10, "pairs": 2}

EXPECTED_IDS = {
    "THM1", "THM2_PRINTED", "THM2_CORRECTED", "THM3", "THM4", "THM4_ALT", "THM4_NOTE", "THM5",
    "THM6", "THM6_ALT", "THM7", "THM8", "THM9", "THM10", "EQ38", "THM11", "THM12", "EQ3", "EQ17",
    "LEMMA1A", "EQ19", "EQ33", "EQ45", "EQ45_PRINTED", "EQ46",
}


def test_registry_contents():
    specs = list_identities()
    assert {s.id for s in specs} == EXPECTED_IDS
    misprints = {s.id for s in specs if s.expected == KNOWN_MISPRINT}
    assert misprints == {"THM2_PRINTED", "EQ45_PRINTED"}
    assert all(s.statement for s in specs)
    notes = " ".join(n for s in specs for n in s.notes)
    assert "{n brace lam}" in notes and "lambda subscript" in notes and "<r-k>_k" in notes


def test_unknown_identity():
    with pytest.raises(UnknownIdentity):
        get_identity("THM99")


@pytest.mark.parametrize("identity_id", sorted(EXPECTED_IDS))
def test_each_identity_meets_expectation_on_small_grid(identity_id):
    reports = check_identity(identity_id, SMALL)
    assert reports
    fails = [r for r in reports if r.status == FAIL]
    if get_identity(identity_id).expected == PASS:
        assert not fails, fails[0].detail
    else:
        assert fails


def test_printed_harmonic_inversion_fails_at_n2_with_localized_coefficient():
    rep = check_identity("THM2_PRINTED", point={"lambda": "symbolic", "n": 2})[0]
    assert rep.status == FAIL
    assert rep.detail["index"] == 2
    assert rep.detail["left"] == "3/2 - 1/2*λ"
    assert rep.detail["right"] == "3 - λ"
    assert check_identity("THM2_PRINTED", point={"lambda": "symbolic", "n": 1})[0].status == PASS


def test_failure_replay_reproduces_the_coefficient():
    for rep in check_identity("EQ45_PRINTED", SMALL):
        if rep.status == FAIL:
            again = replay(rep)
            assert again == rep
            point = json.loads(json.dumps(rep.grid_point))
            assert check_identity(rep.id, point=point)[0].detail == rep.detail


def test_vanishing_divisor_points_carry_notes():
    rep = check_identity("EQ17", point={"lambda": "3", "r": 3, "n": 2})[0]
    assert rep.status == PASS and rep.detail["notes"]
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", RuntimeWarning)
        rep = check_identity("THM5", point={"lambda": "3", "r": 4, "n": 2, "sample": "1"})[0]
    assert rep.status == PASS and rep.detail["notes"]


def test_symbolic_pass_implies_rational_pass():
    for identity_id in ("THM1", "THM7", "THM9"):
        for rep in check_identity(identity_id, {**SMALL, "lambdas": ["symbolic", "1/2", "-1/3"]}):
            assert rep.status == PASS


def test_empty_grid_is_flagged():
    out = run_suite({"n_max": 0})
    assert out["summary"]["no_grid_points"]
    assert out["results"] == []
    assert out["summary"]["expectations_met"]


def test_suite_is_deterministic_and_json_ready():
    cfg = {**SMALL, "ids": ["THM7", "EQ3", "THM2_PRINTED"]}
    a = json.dumps(run_suite(cfg))
    b = json.dumps(run_suite(cfg))
    assert a == b
    out = json.loads(a)
    assert [r["id"] for r in out["results"]][0] == "THM7"
    assert {"pass", "fail", "known_misprint"} <= set(out["summary"])


def test_seed_changes_random_pairs_only():
    a = check_identity("EQ3", {**SMALL, "seed": 1})
    assert all(r.status == PASS for r in a)
    assert a[0].grid_point["seed"] == 1


def test_grid_validation():
    with pytest.raises(UnsupportedGrid):
        Grid(n_max=17).validate()
    with pytest.raises(UnsupportedGrid):
        Grid(order=41).validate()
    with pytest.raises(UnsupportedGrid):
        Grid(lambdas=("0",)).validate()
    with pytest.raises(UnsupportedGrid):
        check_identity("THM7", {"colour": "red"})
    with pytest.raises(ConfigInvalid):
        run_suite({"ids": ["NOPE"]})
    with pytest.raises(ConfigInvalid):
        run_suite({"n_max": 99})
    with pytest.raises(ConfigInvalid):
        run_suite([1, 2])


def test_order_offset_drives_series_order():
    grid = Grid(n_max=3, order_offset=8, lambdas=("1/2",))
    pts = list(get_identity("THM4").points(grid))
    assert [p["order"] for p in pts] == [9, 10, 11]


def test_unexpected_failure_is_reported(monkeypatch):
    spec = get_identity("THM7")

    def broken(point):
        raise ids._Mismatch({"component": "forced", "index": 0, "left": "1", "right": "2"})

    monkeypatch.setitem(ids._BY_ID, "THM7", dataclasses.replace(spec, evaluate=broken))
    out = run_suite({**SMALL, "ids": ["THM7"]})
    s = out["summary"]
    assert not s["expectations_met"] and s["unexpected"] == 1
    assert s["unexpected_failures"][0]["grid_point"] == out["results"][0]["grid_point"]


def test_misprint_that_stops_failing_is_unexpected(monkeypatch):
    spec = get_identity("THM2_PRINTED")
    monkeypatch.setitem(ids._BY_ID, "THM2_PRINTED", dataclasses.replace(spec, evaluate=lambda p: []))
    out = run_suite({**SMALL, "ids": ["THM2_PRINTED"]})
    assert out["summary"]["unexpected"] == 1
