#!/usr/bin/env python3
"""Smoke test for the mfkit Python extension module.

Builds the extension with cargo, copies it next to a temp directory as
``mfkit.so``, imports it, and exercises the main types and operations.

Usage: python3 python/smoke_test.py
"""

import json
import shutil
import subprocess
import sys
import tempfile
from pathlib import Path

ROOT = Path(__file__).resolve().parent.parent


def build_extension() -> Path:
    subprocess.run(
        [
            "cargo",
            "build",
            "-p",
            "mfkit-py",
            "--release",
            "--features",
            "extension-module",
        ],
        cwd=ROOT,
        check=True,
    )
    built = ROOT / "target" / "release" / "libmfkit.so"
    if not built.exists():  # e.g. macOS
        built = ROOT / "target" / "release" / "libmfkit.dylib"
    stage = Path(tempfile.mkdtemp(prefix="mfkit-smoke-"))
    shutil.copy(built, stage / "mfkit.so")
    return stage


def main() -> int:
    sys.path.insert(0, str(build_extension()))
    import mfkit

    checks = 0

    def check(name: str, condition: bool) -> None:
        nonlocal checks
        if not condition:
            print(f"FAIL: {name}")
            raise SystemExit(1)
        checks += 1
        print(f"ok: {name}")

    # polynomials parse to canonical form
    f = mfkit.parse("x^2 + 1")
    check("parse/str round trip", str(f) == "x^2 + 1")
    check("ring ops", str(mfkit.parse("x") * mfkit.parse("x^2")) == "x^3")
    check("monomial count", mfkit.parse("xy + (x+y)(x-y)").monomial_count() == 3)

    # the introductory 2x2 factorization of x^2 + 1
    intro = mfkit.standard_method([("x", "x"), ("1", "1")])
    check("intro size", intro.size == 2)
    check("intro phi", intro.phi() == [["x", "-1"], ["1", "x"]])
    check("intro verifies", intro.verify())

    # improved algorithm: 32 instead of 64
    mf = mfkit.factor("xy + (x^2+z^2)(xy+x^2z+yz^2)", method="improved")
    check("improved size 32", mf.size == 32)
    check("improved verifies", mf.verify())
    sizes = mfkit.predict_sizes("xy + (x^2+z^2)(xy+x^2z+yz^2)")
    check("prediction", (sizes["standard_size"], sizes["improved_size"]) == (64, 32))

    # tensor products
    x = mfkit.one_by_one("x", "x^2")
    y = mfkit.one_by_one("y^2", "y^3")
    prod = mfkit.mult_tensor(x, y)
    check("product target", str(prod.f) == "x^3y^5")
    check("product size 2nm", prod.size == 2)
    added = mfkit.yoshino(x, y, variant=1)
    check("sum target", str(added.f) == "y^5 + x^3")
    check("sum verifies", added.verify())

    # JSON round trip matches the CLI schema
    text = mf.to_json()
    data = json.loads(text)
    check("json schema fields", set(data) == {"f", "size", "phi", "psi"})
    back = mfkit.MatrixFactorization.from_json(text)
    check("json round trip", back == mf)

    # constructor rejects invalid pairs
    try:
        mfkit.MatrixFactorization("x^2", [["x"]], [["y"]])
        print("FAIL: invalid pair accepted")
        return 1
    except ValueError:
        check("invalid pair rejected", True)

    report = mfkit.compare("x^3y^2 + (xy+x^2z+yz^2)(xz+y^2+y^2z)")
    check("compare ratio 8", report["ratio"] == 8)
    check("classification", mfkit.classify("x^4 - y^5")["class"] == "plain")

    print(f"\nsmoke test passed ({checks} checks)")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
