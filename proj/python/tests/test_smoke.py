# SPDX-License-Identifier: Apache-2.0
import json
import math

import pytest

import crnoma


def test_hand_anchored_outages():
    cfg = crnoma.SystemConfig(1, 10.0, 10.0, 1.0, 1.0)
    assert crnoma.outage_hsic_pa_exact(cfg) == pytest.approx(0.110029, abs=1e-6)
    assert crnoma.outage_fsic_pa_exact(cfg) == pytest.approx(0.259182, abs=1e-6)


def test_closed_form_matches_oracle():
    cfg = crnoma.SystemConfig.from_snr_db(4, 20.0, rho=0.1, r0=2.0, rs=1.0)
    for scheme, exact in [
        (crnoma.Scheme.HSIC_PA, crnoma.outage_hsic_pa_exact),
        (crnoma.Scheme.FSIC_PA, crnoma.outage_fsic_pa_exact),
    ]:
        assert abs(exact(cfg) - crnoma.oracle_outage(scheme, cfg)) < 1e-8


def test_monte_carlo_close_to_closed_form():
    cfg = crnoma.SystemConfig.from_snr_db(2, 10.0)
    est = crnoma.estimate_outage(crnoma.Scheme.FSIC_PA, cfg, 200_000, seed=7)
    assert abs(est["mean"] - crnoma.outage_fsic_pa_exact(cfg)) < 5 * est["stderr"]


def test_estimates_are_reproducible():
    cfg = crnoma.SystemConfig.from_snr_db(4, 10.0)
    a = crnoma.estimate_better_worse(cfg, 20_000, seed=3)
    b = crnoma.estimate_better_worse(cfg, 20_000, seed=3)
    assert a == b
    assert a["better"]["mean"] == pytest.approx(1.0 - a["worse"]["mean"])


def test_draw_serves_strongest_user():
    cfg = crnoma.SystemConfig.from_snr_db(4, 20.0)
    out = crnoma.simulate_draw(crnoma.Scheme.HSIC_PA, cfg, seed=11)
    assert out["served_index"] == 4
    assert out["h2"] == sorted(out["h2"])
    assert 0.0 <= out["beta"] <= 1.0


def test_invalid_config_raises():
    with pytest.raises(crnoma.ConfigError):
        crnoma.SystemConfig(0, 1.0, 1.0, 1.0, 1.0)


def test_sweep_from_preset():
    spec = json.loads(crnoma.figure_preset_json("fig5"))
    assert spec["m"] == [4]
    spec.update(snr_db="0:10:5", trials=1000, sources=["analytic"])
    lines = crnoma.run_sweep_csv(json.dumps(spec)).splitlines()
    assert lines[0].startswith("scheme,M,R0,Rs")
    assert len(lines) == 4
    assert all(math.isfinite(float(l.split(",")[8])) for l in lines[1:])
