"""Smoke tests for the Python module: plain asserts, no test framework."""

import lcsim


def test_traces_and_oracle():
    assert lcsim.reach_trace("10100") == [0, 1, 0, 1, 0, 0]
    assert lcsim.margin_trace("0", 1) == [0, -1]
    # Park-at-zero: margin stays 0 while reach is positive.
    assert lcsim.margin_trace("010", 1) == [0, -1, 0, 0]
    assert lcsim.oracle_reach_margin("01", 1) == (1, 0)
    assert lcsim.observer_transform("0101", 2) == "01.1"
    assert lcsim.balanced_fork_exists("00", 1, 2) is False
    rep = lcsim.oracle_suite(2, 1, include_balanced=True, balanced_max_len=2)
    assert rep["pass"] and rep["strings"] > 3
    csv = lcsim.oracle_csv(1, 0)
    assert csv.startswith("w,s,reach,margin\n") and "0,1,0,-1" in csv


def test_bounds():
    params = lcsim.compute_params(0.05, 0.95, "geometric:0.5")
    assert params["applicable"]
    assert abs(params["p"] - 0.9047619048) < 1e-9
    assert abs(params["eps"] - 0.8095238095) < 1e-9
    b = lcsim.settlement_bound(0.05, 0.95, "geometric:0.5", 2830, 5)
    assert abs(b["total"] - 0.1991438909) < 1e-9
    cq = lcsim.chain_quality_bound(0.05, 0.95, "geometric:0.5", 0.4047619048, 2830, 5)
    assert cq["total"] == 1.0 and cq["total_raw"] > 1.0
    ext = lcsim.extensive_bounds(0.05, 0.95, "geometric:0.5", 10, 2830, 5, 0.1)
    assert abs(ext["common_prefix_raw"] - 10 * b["total_raw"]) < 1e-9
    assert lcsim.synchronous_threshold(0.0) == 0.5
    assert abs(lcsim.synchronous_threshold(1.0) - (3 - 5 ** 0.5) / 2) < 1e-9
    assert lcsim.exponential_boundary(0.0) == 0.5
    assert lcsim.exponential_boundary(1.0) == 0.0
    fig = lcsim.figure1_csv(0.0, 1.0, 0.01)
    assert fig.count("\n") == 102


def test_experiment_roundtrip():
    config = """{
      "name": "smoke",
      "leaders": {"model": "iid", "population": 3,
                  "joint_law": [[1, 0, 0.5], [0, 1, 0.2], [0, 0, 0.3]]},
      "delay": {"kind": "geometric", "q0": 0.5},
      "policy": {"kind": "max_delay_balance"},
      "horizon": 60, "s": 10, "k": 5, "mu": 0.25,
      "trials": 6, "seed": 7
    }"""
    rep = lcsim.run_config(config)
    assert rep["name"] == "smoke"
    assert rep["theory_contradictions"] == 0
    assert {row["property"] for row in rep["rows"]} == {"settlement", "chain_quality"}
    assert all(row["trials"] == 6 for row in rep["rows"])
    assert rep["report_csv"].startswith("name,property,k,")
    again = lcsim.run_config(config)
    assert again["report_csv"] == rep["report_csv"]
    assert again["violations_csv"] == rep["violations_csv"]

    dump = lcsim.trace_dump(config, trial=0)
    assert dump.startswith("trace seed=")
    assert "charstring " in dump
    assert dump == lcsim.trace_dump(config, trial=0)

    stats = lcsim.statistical_suite(20260822, workers=1, scale=0.05)
    assert stats["pass"] and stats["checks"] > 10


def main():
    test_traces_and_oracle()
    test_bounds()
    test_experiment_roundtrip()
    print("python smoke: all assertions passed")


if __name__ == "__main__":
    main()
