"""Smoke test for the pyhomswap extension.

Build first:  pip install --no-build-isolation ./crates/python
Run:          python -m pytest python/smoke_test.py
"""

from fractions import Fraction

import pytest

import pyhomswap as hs

H1 = hs.Target(2, [(0, 1)], loops=[0])
TWO_LOOPS = hs.Target(2, loops=[0, 1])


def test_counts():
    c5 = hs.Graph(5, [(i, (i + 1) % 5) for i in range(5)])
    assert hs.count_hom(c5, H1) == 11
    assert hs.count_hom(c5, hs.Target.complete(3)) == 30
    k2 = hs.Graph(2, [(0, 1)])
    assert hs.count_hom(k2, H1, weights=["2", "1/3"]) == Fraction(16, 3)
    assert len(hs.enumerate_homs(k2, H1)) == 3


def test_certify():
    ok, cert = hs.certify_target(H1)
    assert ok and cert["verdict"] == "TARGET"
    ok, cert = hs.certify_target(TWO_LOOPS)
    assert not ok and "odd_cycle" in cert["evidence"]
    assert hs.find_alternating_four_circuit(TWO_LOOPS) == [0, 0, 1, 1]
    assert hs.find_alternating_four_circuit(H1) is None
    assert len(hs.threshold_classes(3)) == 8


def test_gt_scan():
    reports = hs.scan_corpus(TWO_LOOPS, 4, 2)
    assert any(r["verdict"] == "FAILS" for r in reports)
    assert all(r["verdict"] == "HOLDS" for r in hs.scan_corpus(H1, 6, 3))


def test_coloring_and_volume():
    c5 = hs.Graph.parse("5 5 0\n0 1\n1 2\n2 3\n3 4\n0 4\n")
    assert hs.chromatic_binomial(c5) == [0, 0, 0, 30, 120, 120]
    assert hs.chromatic_value(c5, 3) == 30
    assert hs.estab_volume(c5) == Fraction(5, 48)
    assert hs.ehrhart(c5)["volume"] == Fraction(5, 48)
    assert hs.check_volume_gt(c5)["verdict"] == "HOLDS"


def test_swap():
    k3 = hs.Graph(3, [(0, 1), (1, 2), (0, 2)])
    path_loop = hs.Target(3, [(0, 1), (1, 2)], loops=[0])
    r = hs.verify_swap_bijection(k3, path_loop)
    assert r["bsp_disjoint"] == r["bsp_crossed"] and r["roundtrip_ok"]


def test_errors():
    with pytest.raises(ValueError):
        hs.Graph(3, [(0, 0)])
    with pytest.raises(ValueError, match="line 3"):
        hs.Graph.parse("3 2 0\n0 1\n1 2 2\n")
