"""Smoke test for the ratginv extension module.

Build and run from the repository root:

    cargo build --release -p ratginv-py --features extension-module
    cp target/release/libratginv_py.so python/ratginv.so
    python3 python/smoke_test.py
"""

import pathlib
import sys

sys.path.insert(0, str(pathlib.Path(__file__).resolve().parent))

import ratginv  # noqa: E402

DATA = pathlib.Path(__file__).resolve().parent.parent / "crates" / "core" / "data"


def load(name):
    return ratginv.RatMatrix.parse((DATA / f"{name}.rm").read_text())


def main():
    f = ratginv.RatFun("(-21-30*x+4*x^2)/(49+140*x+204*x^2)")
    assert f.eval("0") == "-3/7", f.eval("0")
    assert ratginv.RatFun("(x^2-1)/(x-1)") == ratginv.RatFun("x+1")
    try:
        ratginv.RatFun("1/(x-x)")
    except ratginv.RatGinvError as e:
        assert "byte 1" in str(e), e
    else:
        raise AssertionError("pole not reported")

    a = load("ex31_a")
    x, s, branch = ratginv.ginv(a, load("ex31_r"))
    assert (s, branch) == (4, "left"), (s, branch)
    assert x == load("ex31_x")
    assert x.get(2, 0) == ratginv.RatFun("-13/10")
    report = ratginv.penrose_check(a, x)
    assert report["classification"] == "{1,2,4}", report

    b = load("ex32_a")
    mp = ratginv.moore_penrose(b)
    assert ratginv.penrose_check(b, mp)["classification"] == "MP"
    assert b.rank() == 3 and mp.shape == (3, 4)
    assert ratginv.RatMatrix.parse(str(mp)) == mp

    m = ratginv.RatMatrix([["1", "0"], ["0", "1"], ["1", "1"]])
    assert ratginv.reverse_order_law_check(m, ratginv.RatMatrix.identity(2))
    assert not ratginv.reverse_order_law_check(m, ratginv.RatMatrix([["1"], ["0"]]))

    g = ratginv.geninv([[2.0, 0.0], [0.0, 0.0]])
    assert g["rank"] == 1 and abs(g["x"][0][0] - 0.5) < 1e-12, g
    s50 = ratginv.testmat("S", 50)
    gen = ratginv.geninv(s50)
    mod = ratginv.modginv(s50, s50)
    assert mod["condition_warning"]
    assert max(mod["residuals"]) >= max(gen["residuals"])

    print("smoke test passed")


if __name__ == "__main__":
    main()
