#!/usr/bin/env python3
"""Smoke test for the bqstat Python extension.

Build the module first:

    cargo build --release -p bqstat-py

then run this script; it stages the cdylib as an importable module.
"""

import pathlib
import shutil
import sys
import tempfile

ROOT = pathlib.Path(__file__).resolve().parent.parent


def stage_module() -> None:
    candidates = [
        ROOT / "target" / "release" / "libbqstat.so",
        ROOT / "target" / "debug" / "libbqstat.so",
    ]
    for so in candidates:
        if so.exists():
            stage = pathlib.Path(tempfile.mkdtemp(prefix="bqstat-py-"))
            shutil.copy(so, stage / "bqstat.so")
            sys.path.insert(0, str(stage))
            return
    sys.exit("libbqstat.so not found; run: cargo build --release -p bqstat-py")


stage_module()
import bqstat  # noqa: E402

# invariants and discriminants
f = bqstat.QuarticForm(1, 0, 0, 0, 1)
assert f.invariants() == (12, 0)
assert f.disc() == 256
assert f.root_type() == "2+"
assert f.is_irreducible()
assert f.resolvent_cubic().invariants() == (12, 0)

lift = bqstat.QuarticForm(0, 1, 0, -1, 0)
assert lift.invariants() == (3, 0)
assert lift.disc() == 4
assert not lift.is_irreducible()
assert lift.root_type() == "0"

# eligibility and the small-height census
assert bqstat.is_eligible(12, 0)
assert not bqstat.is_eligible(2, 5)
assert bqstat.eligible_pairs(30, "+") == [(3, 0)]
assert bqstat.eligible_pairs(30, "-") == [(-3, 0), (-2, -7), (-2, 7)]

# monic cubic reconstruction
g = bqstat.monic_cubic_for(3, -27)
assert g.coefficients == (1, 0, -1, 1)
assert g.is_irreducible()
assert g.is_maximal(2) and g.is_maximal(23)
assert g.splitting_type(2) == "(3)"

# reduction is orbit-constant
canon, witness = bqstat.QuarticForm(1, 1, -3, 2, 2).reduce()
canon2, _ = bqstat.QuarticForm(1, 5, 6, 3, 3).reduce()  # f(x + y, y) for the same form
assert canon == canon2, (canon, canon2)
assert witness is not None

# class lists: the discriminant -283 field has 2-torsion of order 2
classes = bqstat.classes_with_invariants(-12, 27)
assert len(classes) == 2
assert sorted(c[1] for c in classes) == [False, True]
assert bqstat.cl2_counts(-12, 27) == (2, 2)
assert bqstat.cl2_counts(3, -27) == (1, 1)

# exact local densities
assert bqstat.density("monic-cubic", 5, "(111)") == (2, 25)
assert bqstat.density("monic-cubic", 2, "maximal") == (3, 4)
assert bqstat.density("quartic", 3, "strongly-maximal") == (64, 81)
assert bqstat.density("general-cubic", 2, "maximal") == (21, 32)

# 2-Selmer pipeline
e = bqstat.EllipticCurve(1, 1)
assert e.invariants() == (-3, -27)
assert not e.has_rational_two_torsion()
assert e.selmer_size() == 2

# local solubility
assert not bqstat.QuarticForm(5, 0, 0, 0, 5).qp_soluble(5)
assert bqstat.QuarticForm(3, 0, 0, 0, 4).qp_soluble(5)
assert not bqstat.QuarticForm(-1, 0, 0, 0, -1).locally_soluble()

# minimization
m = bqstat.QuarticForm(0, 25, 0, 25, 0).minimize()
assert m.invariants() == (-3, 0)

# a small average: every size a power of two, mean at least 1
curves, total, num, den = bqstat.selmer_average(500)
assert curves > 0 and total >= curves
assert num / den >= 1.0

print("bqstat python smoke test passed:", curves, "curves at X=500, mean", num, "/", den)
