"""Smoke test for the pymubkit extension.

Build and run:

    pip install --no-build-isolation ./crates/python
    python crates/python/python/smoke_test.py
"""

import cmath
import json

import pymubkit


def overlap(u, v):
    return sum(a.conjugate() * b for a, b in zip(u, v))


def main():
    s = pymubkit.MubSet(4)
    assert len(s) == 5 and s.dim == 4 and s.route == "ring", s
    report = s.verify()
    assert report and report.pairs_checked == 10, report

    # Exact entries plus scale; the float view agrees with them.
    entries, scale = s.basis(1)
    assert scale == 4 and len(entries) == 4
    b1, b2 = s.basis_complex(1), s.basis_complex(2)
    for u in b1:
        for v in b2:
            assert abs(abs(overlap(u, v)) ** 2 - 0.25) < 1e-12

    # Round trip through the interchange format, then break one entry.
    doc = s.to_json()
    assert pymubkit.verify_json(doc)
    again = pymubkit.MubSet.from_json(doc)
    assert again.to_json() == doc
    bad = json.loads(doc)
    bad["bases"][2]["vectors"][0][1] = "0"
    r = pymubkit.verify_json(json.dumps(bad))
    assert not r and any(2 in pair for pair in r.bad_pairs), r

    six = pymubkit.MubSet(6)
    assert len(six) == 3 and six.verify()

    try:
        pymubkit.MubSet(6, construction="field")
    except ValueError as e:
        assert "does not apply" in str(e)
    else:
        raise AssertionError("field route accepted d = 6")

    bell = pymubkit.BellFamily(2)
    assert bell.passed and bell.maximally_entangled and len(bell) == 8
    assert bell.ket(0, 0, 0).startswith("|0,0⟩")
    assert json.loads(bell.to_json())["dim"] == 2

    assert pymubkit.pauli_correspondence(2) == [(0, "Z"), (1, "X"), (2, "XZ")]
    assert len(pymubkit.pauli_correspondence(5)) == 6

    assert len(pymubkit.fano()) == 7
    assert len(pymubkit.plane(3)) == 13
    lines, iso = pymubkit.lifted_fano_plane()
    assert iso and len(lines) == 7

    assert pymubkit.hensel_lift([1, 1, 0, 1]) == [3, 1, 2, 1]
    assert pymubkit.abs_squared("1 + 2*z3", 3) == "3"
    assert cmath.isclose(b1[0][0], 0.5)

    print("pymubkit smoke test: ok")


if __name__ == "__main__":
    main()
