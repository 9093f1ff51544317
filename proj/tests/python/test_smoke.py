import json
import math

import pytest

import denoise_game as dg


def i2(w=2000.0):
    clients = [dg.ClientParams(w=w, d=100, epsilon=0.2) for _ in range(2)]
    return dg.GameInstance(clients, dg.AccuracyModel.linear(-1.0, 0.95), dg.CostModel.log(-1.0))


def test_solvers_on_i2():
    g = i2()
    swm = dg.solve_swm(g)
    assert swm.theta == pytest.approx(0.05, abs=1e-6)
    assert swm.welfare == pytest.approx(3322.74112777602, rel=1e-9)
    ne = dg.solve_ne(g)
    assert ne.converged
    assert ne.profile == pytest.approx([0.1, 0.1], abs=1e-9)
    report = dg.compare(g)
    assert report.pos_welfare == pytest.approx(1.018817415159, rel=1e-9)
    assert report.accuracy_gap == pytest.approx(0.05, abs=1e-8)


def test_model_functions():
    g = i2()
    assert dg.average_noise_rate(g, [0.1, 0.3 - 0.1]) == pytest.approx(0.15)
    assert dg.payoff(g, 0, [0.1, 0.1]) == pytest.approx(1630.68528194401, rel=1e-12)
    assert dg.social_welfare(g, [0.05, 0.05]) == pytest.approx(3322.74112777602, rel=1e-12)
    assert dg.profile_from_threshold(g, 0.05) == [0.05, 0.05]


def test_oracle():
    g = i2()
    profile, welfare = dg.brute_force_swm(g, 0.01)
    assert profile == pytest.approx([0.05, 0.05])
    assert welfare == pytest.approx(3322.74112777602, rel=1e-9)
    ok, gain = dg.verify_ne(g, [0.1, 0.1], 1e-3)
    assert ok and gain <= 1e-9
    assert dg.check_unimodal(g, 1000)


def test_sweep_and_csv():
    config = {
        "clients": [{"w": 2000, "d": 100, "epsilon": 0.2}] * 2,
        "accuracy": {"type": "linear", "kappa": -1, "g0": 0.95},
        "cost": {"type": "log", "c": -1},
        "sweep": {"parameter": "epsilon", "values": [0.0, 0.2]},
    }
    rows = dg.run_sweep(json.dumps(config))
    assert [r.sweep_value for r in rows] == [0.0, 0.2]
    assert rows[0].pos == 1.0
    assert rows[1].pos == pytest.approx(1.018817415159, rel=1e-9)
    text = dg.sweep_csv(rows)
    lines = text.splitlines()
    assert lines[0] == "sweep_value,acc_swm,acc_ne,sw_swm,sw_ne,pos,avg_noise_swm,avg_noise_ne"
    assert len(lines) == 3
    assert math.isclose(float(lines[2].split(",")[5]), rows[1].pos, rel_tol=1e-9)


def test_errors_map_to_python():
    with pytest.raises(dg.InvalidInput):
        dg.ClientParams(w=-1, d=1, epsilon=0.1)
    with pytest.raises(dg.InfeasibleStrategy):
        dg.best_response(i2(), 0, [0.3, 0.1])
    with pytest.raises(dg.ConfigError):
        dg.run_sweep('{"clients": [{"w": 1, "d": 1, "epsilon": 0.1}], "acuracy": {}}')
    with pytest.raises(dg.NonConvergence):
        dg.solve_ne(i2(), max_sweeps=1)
    assert issubclass(dg.ConfigError, dg.Error)
