"""Smoke test for the zerodiv Python bindings.

Build and install first:

    pip install maturin
    pip install --no-build-isolation -e crates/python
    python python/smoke_test.py
"""

import json
import os
import tempfile

import zerodiv


def nonzero(homology):
    return {n: g for n, g in homology.items() if g[0] or g[1]}


def main():
    r = zerodiv.Ring("Z36")
    assert r.spec == "Z36" and r.order == 36 and len(r) == 36
    assert r.local_factors == [(2, False), (6, False)]
    assert r.k_ranks() == {1: 12}
    assert nonzero(r.homology()) == {1: (12, [])}
    assert nonzero(r.homology(reduced=False, coefficients="F2")) == {0: (1, []), 1: (12, [])}

    z105 = zerodiv.Ring("Z105")
    assert z105.k_ranks() == z105_direct() == {1: 100, 2: 15}

    cube = zerodiv.Ring("Z3 x Z3 x Z3")
    assert nonzero(cube.homology()) == {1: (12, []), 2: (1, [])}
    surface = json.loads(cube.surface_obstruction())
    assert surface["possible"] is False
    assert surface["evidence"]["is_closed_surface"] is False

    cm = json.loads(zerodiv.Ring("F2[x]/(x^5)").classify_cm())
    assert cm["case"] == "BorderlineSocle2" and cm["is_cm"] is False
    assert cm["reisner"]["witness"] is not None
    assert json.loads(zerodiv.Ring("Z4 x Z3").classify_cm())["case"] == "Z2X2TimesField"

    assert zerodiv.k_ranks([(2, True), (2, True), (2, True)]) == {1: 12, 2: 1}
    assert zerodiv.betti_allfields(1, [2, 4, 6]) == 100
    assert zerodiv.betti_nonfields(1, [2, 6]) == 12
    assert zerodiv.normalize_spec(" GF(3) xZ4") == "GF(3^1) x Z4"

    doc = json.loads(zerodiv.run_homology("Z12", method="both"))
    assert doc["cross_check"]["agree"] is True and doc["status"] == "ok"
    assert json.loads(zerodiv.run_cm("Z81"))["status"] == "disagreement"

    try:
        zerodiv.Ring("Z4 x Q5")
    except zerodiv.SpecError as e:
        assert e.args[1] == 5
    else:
        raise AssertionError("expected SpecError")
    try:
        cube.homology(budget=5)
    except zerodiv.BudgetExceeded:
        pass
    else:
        raise AssertionError("expected BudgetExceeded")

    with tempfile.TemporaryDirectory() as d:
        path = os.path.join(d, "z6.txt")
        assert zerodiv.run_export("Z6", path) == 2
        assert zerodiv.Ring("Z4").export(path, target="k0") == 3
        with open(path) as f:
            assert f.readline().startswith("# vertices:")

    print("python smoke test passed")


def z105_direct():
    h = zerodiv.Ring("Z105").homology()
    return {n: g[0] for n, g in nonzero(h).items()}


if __name__ == "__main__":
    main()
