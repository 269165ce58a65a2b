"""Smoke test for the pyrngfx extension module.

Build and install first:
    pip install -e crates/python --no-build-isolation
"""

import math

import pyrngfx as rf


def main():
    assert rf.Generator("shr0", jsr=1).next_u32() == 270369
    assert rf.Generator("cng", icng=0).next_u32() == 1234567
    assert rf.Generator("randn-uni", jsr=1, icng=0).next_u32() == 1504936
    try:
        rf.Generator("shr3", jsr=0)
    except ValueError:
        pass
    else:
        raise AssertionError("zero seed accepted")

    g = rf.Generator("kiss-xplustx")
    saved = rf.Generator.from_bytes(g.to_bytes())
    assert g.take(5) == saved.take(5)
    assert g.period is not None and g.period > 2**90

    table = rf.ZigguratTable(128)
    assert abs(table.r - 3.442619855899) < 1e-9
    assert table.kn[0] > table.kn[1]
    xs = table.normals(rf.Generator("ideal", ideal=7), 20000)
    mean = sum(xs) / len(xs)
    var = sum(x * x for x in xs) / len(xs) - mean * mean
    assert abs(mean) < 0.05 and abs(var - 1) < 0.05, (mean, var)

    report = rf.chi2_statistic([60, 40], [0.5, 0.5])
    assert math.isclose(report["statistic"], 4.0)

    tail = rf.tail_audit()
    assert tail["entering_count"] == 2444151

    quad = rf.xor_quadruple_demo([1, 2, 5, 6])
    assert quad["quadruples_found"] == 1

    check = rf.related_seed_lowbits_check(1, 1, delta=64, steps=10000)
    assert check["violations"] == 0

    curve = rf.run_experiment("ideal", [2**12, 2**14])
    assert [p["n"] for p in curve["points"]] == [2**12, 2**14]
    assert all(p["verdict"] == "pass" for p in curve["points"])

    print("pyrngfx smoke test: ok")


if __name__ == "__main__":
    main()
