"""Smoke test for the `mtrsched` extension module.

Build and install it first, e.g.

    cd crates/python && maturin develop --release

then run `python python/smoke_test.py`.
"""

import json
from fractions import Fraction

import mtrsched


def main():
    four = mtrsched.Instance.fixture("four-node")
    assert four.network.links[:3] == [(1, 2), (1, 3), (2, 1)]

    total, schedule = mtrsched.solve_ilp(four)
    assert total == 3 and schedule.total_slots == 3
    assert mtrsched.validate(four, schedule) == []

    bound, restricted = mtrsched.solve_mis_suboptimal(four)
    assert bound == Fraction(4)
    assert mtrsched.validate(four, restricted) == []

    grid = mtrsched.Instance.fixture("grid-asym")
    assert mtrsched.mdf(grid).total_slots == 18
    assert mtrsched.solve_ilp(grid)[0] == 18
    assert mtrsched.penalty(mtrsched.hwf(grid).total_slots, 18) == Fraction(100, 9)

    tree = mtrsched.Instance.fixture("tree")
    assert tree.network.is_bipartite()
    assert mtrsched.two_phase(tree).total_slots == 18

    net = mtrsched.Network.random(6, 0.5, seed=7)
    inst = mtrsched.Instance.uniform(net, 1, 10, seed=7, symmetric=False)
    again = mtrsched.Instance.from_json(inst.to_json())
    assert again.demands == inst.demands
    lp_value, _ = mtrsched.solve_lp(inst)
    opt, _ = mtrsched.solve_ilp(inst)
    assert max(inst.lower_bounds()) <= lp_value <= opt
    for h in (mtrsched.hwf, mtrsched.mdf, mtrsched.hwf_tiebreak_mdf):
        s = h(inst)
        assert s.total_slots >= opt
        assert mtrsched.validate(inst, s) == []
        back = mtrsched.Schedule.from_json(inst, s.to_json())
        assert back.entries == s.entries

    bad = mtrsched.Schedule.from_json(
        four, json.dumps({"entries": [{"links": [[1, 2], [2, 3]], "slots": 1}], "total": 1})
    )
    problems = mtrsched.validate(four, bad)
    assert any("node 2" in p for p in problems), problems

    try:
        mtrsched.Network.ring(2)
    except ValueError:
        pass
    else:
        raise AssertionError("ring(2) accepted")

    report = json.loads(mtrsched.run_experiment(5, 0.5, 10, True, 10, seed=1))
    assert report["trials"] == 10

    print("python smoke test: ok")


if __name__ == "__main__":
    main()
