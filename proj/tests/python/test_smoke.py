import json
import os

import numpy as np
import pytest

import nsgframes as nf

DATA = os.path.join(os.path.dirname(__file__), "..", "cli", "data")


def box_pair():
    return nf.System(8, [(0, 4, np.ones(4)), (4, 4, np.ones(4))])


def lattice():
    return nf.System.gabor(nf.window("triangle", 13), -6, 7, 10, 210)


def alternating_hann(N):
    return nf.System(7 * N, [(7 * n, 11 if n % 2 else 10, nf.window("hann", 13)) for n in range(N)])


def test_box_pair_round_trip():
    s = box_pair()
    f = np.random.default_rng(0).standard_normal(8) + 1j
    c = nf.analyze(s, f)
    assert [len(r) for r in c] == [4, 4]
    np.testing.assert_allclose(nf.synthesize(s, c) / 4, f, atol=1e-14)


def test_analyze_matches_inner_products():
    s = alternating_hann(6)
    rng = np.random.default_rng(1)
    f = rng.standard_normal(s.L) + 1j * rng.standard_normal(s.L)
    c = nf.analyze(s, f)
    for n in range(len(s)):
        for m in range(s.M(n)):
            assert abs(c[n][m] - np.vdot(s.element(n, m), f)) < 1e-12


def test_dense_synthesis_columns():
    s = box_pair()
    D = nf.dense_synthesis(s)
    assert D.shape == (8, 8)
    np.testing.assert_allclose(D.conj().T @ D, 4 * np.eye(8), atol=1e-14)


def test_lattice_regime_and_inverse():
    s = lattice()
    r = nf.classify(s)
    assert r["thm41"] and r["epsilon"] == 3
    A, B = nf.frame_bounds(s, "oracle")
    Sinv, report = nf.neumann_inverse(nf.assemble(s, s), A, B)
    assert Sinv.offsets() == [0, 10, 200]
    D = nf.dense_synthesis(s)
    want = np.linalg.inv(D @ D.conj().T)
    np.testing.assert_allclose(Sinv.to_dense(), want, atol=1e-10)
    assert nf.structure_report(Sinv, s, A, B)["verdict"] == "yes"
    assert report["iterations"] > 0


def test_interval_lemma():
    assert nf.verify_interval_lemma(lattice())["all_pass"]


def test_short_support_dual():
    s = alternating_hann(21)
    dual, defect = nf.short_support_dual(s)
    assert defect["max_defect"] <= 1e-12
    assert nf.duality_defect(s, dual)["max_defect"] <= 1e-12
    f = np.random.default_rng(2).standard_normal(s.L) + 0j
    np.testing.assert_allclose(nf.synthesize(dual, nf.analyze(s, f)), f, atol=1e-11)


def test_canonical_dual_reconstructs():
    s = lattice()
    dual = nf.canonical_dual(s)
    assert nf.duality_defect(s, dual)["max_defect"] <= 1e-10


def test_json_round_trip():
    s = alternating_hann(5)
    t = nf.System.from_json(s.to_json())
    assert json.loads(t.to_json()) == json.loads(s.to_json())


def test_errors():
    s = box_pair()
    with pytest.raises(nf.DimensionError):
        nf.analyze(s, np.zeros(7))
    with pytest.raises(nf.PairingError):
        nf.frame_apply(s, lattice(), np.zeros(8))
    with pytest.raises(nf.ParseError):
        nf.System.from_json('{"L": 8, "windows": [')
    with pytest.raises(nf.CompletenessError):
        nf.System(8, [(0, 4, np.ones(4))])
    with pytest.raises(nf.ExistenceError):
        nf.short_support_dual(nf.System.read(os.path.join(DATA, "existence.json")))
    with pytest.raises(nf.NsgError):
        nf.frame_bounds(s, "exact")
