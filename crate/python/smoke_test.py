"""Smoke test for the weylab_py extension module."""

import json

import weylab_py as w


def main():
    g2 = w.Weyl("G2", 2)
    assert g2.length("s0 s2 s1 s2 s1 s2") == 6
    assert g2.bruhat_leq("s1", "s1 s2")

    b3 = w.EnhancedCoxeterDatum("B", 3, w.Weyl("B", 3).fundamental_coweight(1), [3])
    assert b3.poincare() == [1, 1, 1, 2, 1, 1]
    assert not b3.is_symmetric()
    assert b3.extreme_count() == 1 and b3.ccp()

    rows = json.loads(w.classify(6, "G2"))["rows"]
    assert len(rows) == 2

    assert w.partition_count(1, [2, 3]) == (2, True)

    assert json.loads(w.kumar("1b", 2))["verdict"] == "Singular"
    nf = json.loads(w.chart("so-even-split-r1", 4))
    assert nf["verdict"] == {"SemiStable": {"m": 5}}

    try:
        w.Weyl("Q", 3)
    except ValueError:
        pass
    else:
        raise AssertionError("bad family accepted")
    print("ok")


if __name__ == "__main__":
    main()
