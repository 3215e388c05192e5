import json
import math

import numpy as np
import pytest

from paraflux import (INF, SpaceSpec, audit_embedding, audit_multiplication,
                      build_dyadic_system, build_grid, check_hardy,
                      check_maximal_qsup, check_nikolskii, constant_field,
                      hardy_bound, lemma_suite, pure_wave,
                      run_audit_manifest, standard_bank, tuple_bank)
from paraflux.audit import (check_delta_lt, check_qj_lp, check_qj_lt,
                            envelope_field, hardy_exhaustive_search,
                            hardy_random_sweep, nikolskii_scaling,
                            qj_lt_endpoint)


@pytest.fixture(scope="module")
def setup128():
    g = build_grid(1, 128)
    return g, build_dyadic_system(g)


# --- Hardy -------------------------------------------------------------------


def test_hardy_bound_values():
    assert hardy_bound(0.5, 1.0) == pytest.approx(2.0)
    assert hardy_bound(0.5, INF) == pytest.approx(2.0)
    assert hardy_bound(0.5, 0.5) == pytest.approx(
        (1.0 - math.sqrt(0.5)) ** -2.0)
    with pytest.raises(ValueError):
        hardy_bound(1.0, 2.0)
    with pytest.raises(ValueError):
        hardy_bound(0.0, 2.0)


def test_hardy_single_spike():
    # eps = (A, 0, ...): delta_k = gamma^k A, sup norm A, ratio exactly 1
    eps = np.zeros(20)
    eps[0] = 3.0
    rec = check_hardy(eps, 0.5, INF)
    assert rec.ratio == pytest.approx(1.0, abs=1e-14)
    assert rec.verdict == "pass"


def test_hardy_flat_sequence_approaches_geometric_sum():
    K = 30
    rec = check_hardy(np.ones(K + 1), 0.5, INF)
    assert rec.lhs == pytest.approx(2.0 - 2.0 ** (-K), rel=1e-12)
    assert rec.ratio == pytest.approx(2.0 - 2.0 ** (-K), rel=1e-12)
    assert rec.verdict == "pass"


def test_hardy_input_validation():
    with pytest.raises(ValueError):
        check_hardy(np.array([1.0, -1.0]), 0.5, 2.0)
    with pytest.raises(ValueError):
        check_hardy(np.ones((2, 2)), 0.5, 2.0)


def test_hardy_exhaustive_validates_bound():
    worst, sweep = hardy_exhaustive_search(max_len=4)
    assert worst <= 1e-9
    assert not sweep.failures()


def test_hardy_random_sweep_respects_bound():
    sweep = hardy_random_sweep(count=2000, seed=4)
    assert not sweep.failures()
    for rec in sweep.records:
        assert rec.ratio <= rec.reference_bound + 1e-9


# --- Nikolskii ---------------------------------------------------------------


def test_nikolskii_constant_field(setup128):
    g, _ = setup128
    rec = check_nikolskii(constant_field(g), 1.0, 2.0, 1.0)
    assert rec.ratio == pytest.approx(1.0, rel=1e-12)
    assert rec.verdict == "informational"


def test_nikolskii_pure_wave(setup128):
    # both norms are 1, so the measured ratio is gamma^(-n(1/p-1/q))
    g, _ = setup128
    f = pure_wave(g, 8)
    rec = check_nikolskii(f, 1.0, INF, 8.0)
    assert rec.ratio == pytest.approx(8.0 ** (-1.0), rel=1e-12)
    rec = check_nikolskii(f, 2.0, 4.0, 8.0)
    assert rec.ratio == pytest.approx(8.0 ** (-0.25), rel=1e-12)


def test_nikolskii_support_violation(setup128):
    g, _ = setup128
    f = pure_wave(g, 8)
    with pytest.raises(ValueError):
        check_nikolskii(f, 1.0, 2.0, 4.0)
    with pytest.raises(ValueError):
        check_nikolskii(f, 2.0, 1.0, 8.0)  # p > q


def test_envelope_field_dilation(setup128):
    g, _ = setup128
    f8 = envelope_field(g, 8.0)
    mag = np.abs(f8.spectral)
    assert np.all(mag[g.xi > 8.0] == 0.0)
    assert mag[g.xi <= 8.0 * 2.0 / 3.0].min() > 0.99


def test_nikolskii_scaling_gate(setup128):
    g, _ = setup128
    records = nikolskii_scaling(g, 1.0, INF)
    drift_records = [r for r in records if "scaling" in r.name]
    assert len(drift_records) == 2
    for r in drift_records:
        assert r.verdict == "pass"
        assert r.ratio <= 1.05


# --- lemma estimates ---------------------------------------------------------


def test_qj_lp_single_band_ratio_one(setup128):
    g, sys = setup128
    f = pure_wave(g, 1)  # band 0 only
    rec = check_qj_lp(f, 0.5, 2.0, sys)
    assert rec.ratio == pytest.approx(1.0, rel=1e-12)


def test_qj_lp_negative_smoothness_flattens(setup128):
    g, sys = setup128
    from paraflux import random_band_field
    from paraflux.audit import qj_lp_flatness
    f = random_band_field(g, -1.0, 2.0, 5, sys)
    rec = qj_lp_flatness(f, -1.0, 2.0, sys)
    assert rec.ratio <= 4.0
    with pytest.raises(ValueError):
        qj_lp_flatness(f, 0.5, 2.0, sys)


def test_delta_lt_validation(setup128):
    g, sys = setup128
    f = pure_wave(g, 4)
    with pytest.raises(ValueError):
        check_delta_lt(f, 0.5, 2.0, 1.0, sys)  # t < p


def test_qj_lt_endpoint_arithmetic():
    assert qj_lt_endpoint(0.25, 2.0, 1) == pytest.approx(4.0)
    assert qj_lt_endpoint(0.5, 2.0, 1) == INF
    assert qj_lt_endpoint(1.0, 2.0, 1) == INF


def test_qj_lt_range_validation(setup128):
    g, sys = setup128
    f = pure_wave(g, 4)
    with pytest.raises(ValueError):
        check_qj_lt(f, 0.25, 2.0, 5.0, sys)  # beyond the endpoint t*=4
    with pytest.raises(ValueError):
        check_qj_lt(f, 0.25, 2.0, 1.0, sys)  # t <= p
    rec = check_qj_lt(f, 0.25, 2.0, 4.0, sys)
    assert rec.inputs["endpoint"] is True
    rec = check_qj_lt(f, 0.25, 2.0, 3.0, sys)
    assert rec.inputs["endpoint"] is False


def test_maximal_constant_and_zero(setup128):
    g, sys = setup128
    rec = check_maximal_qsup(constant_field(g), 2.0, sys)
    assert rec.ratio == pytest.approx(1.0, rel=1e-12)
    from paraflux import Field
    zrec = check_maximal_qsup(Field.zeros(g), 2.0, sys)
    assert zrec.verdict == "skipped"


# --- suite and sweeps --------------------------------------------------------


def test_lemma_suite_sections(setup128):
    g, sys = setup128
    sweep = lemma_suite(g, sys, only="hardy")
    assert sweep.records
    assert all(r.name.startswith("hardy") for r in sweep.records)
    with pytest.raises(ValueError):
        lemma_suite(g, sys, only="bogus")


def test_lemma_suite_all_gates_pass(setup128):
    g, sys = setup128
    sweep = lemma_suite(g, sys)
    assert not sweep.failures()
    names = {r.name.split("[", 1)[0] for r in sweep.records}
    assert {"hardy", "nikolskii", "nikolskii-scaling", "maximal_qsup",
            "qj_lp", "qj_lp-flatness", "delta_lt", "qj_lt"} <= names


def test_sweep_serialization(setup128):
    g, sys = setup128
    sweep = lemma_suite(g, sys, only="hardy")
    csv = sweep.to_csv()
    assert csv.splitlines()[0] == \
        "name,params,lhs,rhs_core,ratio,bound,verdict"
    assert len(csv.splitlines()) == len(sweep.records) + 1
    doc = json.loads(sweep.to_json())
    assert len(doc["records"]) == len(sweep.records)
    assert doc["meta"]["kind"] == "lemma-suite"
    # regenerating is byte-identical
    again = lemma_suite(g, sys, only="hardy")
    assert again.to_csv() == csv


def test_audit_embedding_identity(setup128):
    g, sys = setup128
    spec = SpaceSpec("B", 0.5, 2.0, 2.0)
    bank = standard_bank(g, sys)[:5]
    sweep = audit_embedding((spec, spec), bank, sys)
    for rec in sweep.records:
        if rec.verdict == "skipped":
            continue
        assert rec.ratio == pytest.approx(1.0, rel=1e-12)


def test_audit_embedding_refuses_bad_pair(setup128):
    g, sys = setup128
    src = SpaceSpec("B", 1.0, 2.0, 2.0)
    tgt = SpaceSpec("B", 2.0, 2.0, 2.0)  # smoothness increases
    with pytest.raises(ValueError, match="monotone-or-diffdim"):
        audit_embedding((src, tgt), standard_bank(g, sys)[:2], sys)


def test_audit_multiplication_constant_tuple(setup128):
    g, sys = setup128
    params = [(0.4, 2.0), (1.0, 2.0)]
    ones = (constant_field(g), constant_field(g))
    sweep = audit_multiplication(params, 2.0, "positive", [ones], sys)
    total = [r for r in sweep.records if r.name.startswith("mult-total")]
    assert len(total) == 1
    assert total[0].ratio == pytest.approx(1.0, rel=1e-12)
    scaling = [r for r in sweep.records if "scaling" in r.name]
    assert scaling[0].verdict == "pass"


def test_audit_multiplication_refuses_bad_params(setup128):
    g, sys = setup128
    bad = [(0.5, 2.0), (1.0, 2.0)]  # s1 = n/p1 exactly
    with pytest.raises(ValueError, match="s1-subcritical"):
        audit_multiplication(bad, 2.0, "positive", [], sys)


def test_audit_multiplication_p_override(setup128):
    g, sys = setup128
    params = [(0.4, 2.0), (1.0, 2.0)]
    tuples = tuple_bank(g, sys, params, 3, 1)
    sweep = audit_multiplication(params, 2.0, "positive", tuples, sys,
                                 p=1.5)
    assert sweep.meta["p"] == 1.5
    with pytest.raises(ValueError):
        audit_multiplication(params, 2.0, "positive", tuples, sys, p=4.0)


def test_run_audit_manifest_small():
    manifest = {
        "n": 1,
        "resolutions": [64, 128],
        "seed": 9,
        "embeddings": [
            {"source": {"family": "B", "s": 1.0, "p": 2.0, "q": 2.0},
             "target": {"family": "B", "s": 0.5, "p": 2.0, "q": 2.0}},
        ],
        "multiplications": [
            {"mode": "positive", "params": [[0.4, 2.0], [1.0, 2.0]],
             "q": 2.0, "tuples": 2},
        ],
    }
    sweep = run_audit_manifest(manifest)
    assert not sweep.failures()
    kinds = {r.name.split("[", 1)[0] for r in sweep.records}
    assert "embedding" in kinds
    assert "mult-total" in kinds
    assert "mult-stability" in kinds
    assert "embedding-stability" in kinds
    # manifest given as JSON text works the same
    again = run_audit_manifest(json.dumps(manifest))
    assert again.to_csv() == sweep.to_csv()


def test_worker_count_does_not_change_output(monkeypatch):
    manifest = {
        "n": 1,
        "resolutions": [64],
        "seed": 5,
        "embeddings": [
            {"source": {"family": "B", "s": 1.0, "p": 2.0, "q": 2.0},
             "target": {"family": "B", "s": 0.5, "p": 2.0, "q": 2.0}},
        ],
        "multiplications": [
            {"mode": "positive", "params": [[0.4, 2.0], [1.0, 2.0]],
             "q": 2.0, "tuples": 4},
        ],
    }
    monkeypatch.delenv("PARAFLUX_THREADS", raising=False)
    serial = run_audit_manifest(manifest).to_csv()
    monkeypatch.setenv("PARAFLUX_THREADS", "4")
    threaded = run_audit_manifest(manifest).to_csv()
    assert serial == threaded
