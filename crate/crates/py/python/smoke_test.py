"""Smoke test for the hagakit_py extension.

Build and install first:  pip install ./crates/py   (or: maturin develop -m crates/py/Cargo.toml)
Then run:                 python crates/py/python/smoke_test.py
"""

import json
import math

import hagakit_py as hk


def close(a, b, tol=1e-12):
    return abs(a - b) <= tol * max(1.0, abs(b))


def main():
    assert hk.radii_from_n(4.5, 1.0) == (16.0, 4.0)
    try:
        hk.radii_from_n("zerobar", 2.0)
    except hk.HagakitError:
        pass
    else:
        raise AssertionError("zerobar radii derived from r")
    assert close(hk.ak_length(16.0, 4.0), 8.0)
    assert close(hk.gamma_radius_from_radii(9.0, 1.0, "high"), 1.0)
    assert hk.safe_div(3.0, 0.0) == 0.0
    assert close(hk.external_tangent_chord(1.0, 4.0), 4.0)

    fig = hk.CtFigure(1.0, 2.0)
    assert (fig.d1, fig.d2, fig.ak) == (9.0, 1.0, 3.0)
    assert close(fig.companion().n, 0.125)
    assert hk.CtFigure(1.0, 0.0).companion().n == "zerobar"
    assert hk.CtFigure(2.0, "zerobar").gamma == (2.0, 0.0, 0.0)
    assert close(hk.CtFigure.from_radii(9.0, 1.0, "high").n, 2.0)
    assert fig.to_svg().startswith("<?xml")
    assert json.loads(fig.report_json())["passed"]

    h = hk.HagaFigure(1.0, 0.5)
    assert h.case == "h5" and close(h.n, 0.5, 1e-9)
    assert close(h.F[0], 2.0 / 3.0, 1e-9)
    assert hk.HagaFigure.from_n(1.0, -2.0).case == "h2"
    bar = hk.HagaFigure.from_n(1.0, "zerobar")
    assert bar.case == "h4" and bar.E == (0.0, 1.0) and bar.F is None and bar.T == (0.0, 1.0)
    assert close(hk.e_from_n(1.0, 2.0), 2.0 / 3.0)
    assert "</svg>" in h.to_svg()

    try:
        hk.HagaFigure.from_n(1.0, -0.5)
    except hk.HagakitError as exc:
        assert "-1/2" in str(exc)
    else:
        raise AssertionError("n = -1/2 accepted")

    assert close(hk.solve_problem_1_2(9.0), 1.0)
    assert close(hk.solve_problem_5(1.0, 2), 1.0 / 9.0)
    r, ratio, consistent = hk.refute_problem_3(1.0)
    assert close(ratio, 3 + math.sqrt(2) + 2 * math.sqrt(2 + math.sqrt(2)), 1e-12)
    assert not consistent
    assert json.loads(hk.problem_report_json(3, 1.0))["derived"]["consistent"] is False

    passed, report = hk.verify(samples=200, seed=7)
    assert passed and json.loads(report)["passed"]
    assert not hk.verify(samples=50, perturb=1e-3)[0]
    print("hagakit_py smoke test: ok")


if __name__ == "__main__":
    main()
