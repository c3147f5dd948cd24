#!/usr/bin/env python3
"""Smoke test for the gradedlie_py extension module.

Builds the cdylib with cargo if needed, copies it next to this script under
the importable name, and exercises the main types and operations.

Run from the repository root (or anywhere):  python3 python/smoke_test.py
"""

import json
import shutil
import subprocess
import sys
from pathlib import Path

HERE = Path(__file__).resolve().parent
ROOT = HERE.parent


def build_extension() -> Path:
    target = ROOT / "target" / "release" / "libgradedlie_py.so"
    if not target.exists():
        subprocess.run(
            ["cargo", "build", "-p", "gradedlie-py", "--release"],
            cwd=ROOT,
            check=True,
        )
    module = HERE / "gradedlie_py.so"
    if not module.exists() or target.stat().st_mtime > module.stat().st_mtime:
        shutil.copy2(target, module)
    return module


def main() -> int:
    build_extension()
    sys.path.insert(0, str(HERE))
    import gradedlie_py as gl

    # field arithmetic in GF(4) = GF(2)[a]/(a^2+a+1)
    gf4 = gl.Tower.finite(2, [1, 1, 1])
    assert gf4.p == 2 and gf4.edim == 2
    assert gl.Tower.finite(2, [1, 1, 1]).mul([0, 1], [0, 1]) == [1, 1], "a*a = a+1"
    assert gf4.inv([0, 1]) == [1, 1], "inv(a) = a+1"
    assert gf4.add([1, 1], gf4.neg([1, 1])) == [0, 0]

    # subfield machinery in GF(16)
    gf16 = gl.Tower.finite(2, [1, 1, 0, 0, 1])
    basis = gf16.subfield_generated([[0, 1, 1, 0]])
    assert len(basis) == 2, "a^2+a generates the quadratic subfield"
    ring, is_field = gf16.stabilizer(2, [[1, 0, 0, 0, 0, 0, 0, 0], [0, 0, 0, 0, 1, 0, 0, 0]])
    assert is_field and len(ring) == 1, "split plane is stabilized by the prime field"

    # algebra construction and validation
    meta = gl.Algebra.metabelian(gf4, 12)
    report = json.loads(meta.validate())
    assert report["ok"] and meta.is_validated
    assert meta.bracket_basis(2, 3) == (5, [0, 0]), "higher components commute"
    assert meta.two_step_centraliser(5) == ([0, 0], [1, 0])
    assert json.loads(meta.check_window())["ok"]

    bad = gl.Algebra.from_centralisers(
        gl.Tower.finite(2, [0, 1]), [([0], [1]), ([1], [1]), ([0], [1]), ([0], [1])], 6
    )
    bad_report = json.loads(bad.validate())
    assert not bad_report["ok"]
    kinds = {f["kind"] for f in bad_report["failures"]}
    assert "jacobi" in kinds

    # search over the trivial extension
    search = json.loads(gl.search(gl.Tower.finite(2, [0, 1]), 8, 2, 1_000_000))
    assert not search["exhausted"]
    all_ey = [[[0], [1]]] * 6
    assert all_ey in search["sequences"]

    # full analysis job over GF(4)
    job = {
        "algebra": {
            "tower": {"p": 2, "minpoly": [1, 1, 1], "mode": "finite"},
            "N": 12,
            "lines": [[[0], [1]]] * 10,
        },
        "L1": [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0]],
        "N": 12,
        "r_max": 6,
        "seed": 0,
    }
    analysis = json.loads(gl.analyze(json.dumps(job)))
    assert analysis["ok"]
    assert analysis["classification"]["variant"] == "constrained"
    assert analysis["classification"]["r_empirical"] == 2

    # presets
    assert set(gl.preset_names()) == {
        "ex4.1", "ex4.2-d2", "ex4.2-d3", "ex4.2-d4", "prob4.3", "cor3.7-trivial",
    }
    repro = json.loads(gl.reproduce("ex4.2-d3"))
    assert repro["ok"]
    assert repro["analysis"]["classification"]["r_empirical"] == 3
    repro = json.loads(gl.reproduce("ex4.1"))
    assert repro["ok"]
    assert repro["analysis"]["classification"]["variant"] == "not_just_infinite"

    # the combinatorial oracle
    assert [gl.free_metabelian_dims(n) for n in range(2, 8)] == [1, 2, 3, 4, 5, 6]

    print("smoke test: ok")
    return 0


if __name__ == "__main__":
    sys.exit(main())
