import math

import pytest

import _duelknap as dk


def test_scores():
    P = [[0.5, 0.7], [0.3, 0.5]]
    assert dk.borda_scores(P) == pytest.approx([0.7, 0.3])
    sb = dk.shifted_borda_scores(P)
    assert sb == pytest.approx([0.6, 0.4])
    assert dk.condorcet_winner(P) == 0
    assert dk.condorcet_winner([[0.5, 0.5], [0.5, 0.5]]) is None


def test_validation_errors():
    with pytest.raises(Exception):
        dk.borda_scores([[0.5, 0.7], [0.4, 0.5]])


def test_builtin_instances():
    a = dk.synthetic_instance("a")
    assert a.K == 6
    assert a.T == 2000
    assert a.B == 1000.0
    d = a.to_dict()
    assert d["P"][0][4] == pytest.approx(0.61)

    lb = dk.condorcet_lb_instance(3, 0.1, "general", 1)
    assert lb.to_dict()["P"][0] == pytest.approx([0.5, 0.6, 0.7])

    bl = dk.borda_lb_instance(0.1)
    b = dk.borda_scores(bl.to_dict()["P"])
    assert b[0] - b[1] == pytest.approx(0.05)


def test_roundtrip(tmp_path):
    a = dk.synthetic_instance("b")
    path = str(tmp_path / "inst.json")
    dk.save_instance(a, path)
    back = dk.load_instance(path)
    assert back.to_dict() == a.to_dict()


def test_benchmarks():
    c = dk.synthetic_instance("c")
    sol = dk.solve_borda_lp(c)
    assert sol["per_round_value"] == pytest.approx(2 * 0.572)
    assert sol["pi_x"][0] == pytest.approx(1.0)

    sep = dk.solve_separated_lps(c)
    tilde = dk.solve_shifted_borda_lp(c)
    assert sep["opt_total"] >= tilde["opt_total"] - 1e-9

    infeasible = dk.make_instance(
        P=[[0.5, 0.6], [0.4, 0.5]],
        u_mean=[[1.0], [1.0]],
        v_mean=[[1.0], [1.0]],
        T=100,
        B=10.0,
    )
    with pytest.raises(dk.Infeasible):
        dk.solve_borda_lp(infeasible)


def test_run_is_deterministic():
    inst = dk.synthetic_instance("a")
    r1 = dk.run(inst, policy="vigilant", seeds=[1, 2, 3], threads=1)
    r2 = dk.run(inst, policy="vigilant", seeds=[3, 2, 1], threads=2)
    assert r1["final_rewards"] == r2["final_rewards"]
    assert r1["taus"] == r2["taus"]
    assert all(1 <= t <= inst.T for t in r1["taus"])
    assert all(math.isfinite(v) for v in r1["final_rewards"])
