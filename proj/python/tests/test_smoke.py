import itertools
import math

import numpy as np
import pytest

import kaclab


def open_energy(p, spins, lo, hi):
    """Pair energy of every pair touching sites [lo, hi)."""
    e = 0.0
    n = len(spins)
    for x in range(n):
        for y in range(x + 1, min(n, x + p.range + 1)):
            if lo <= x < hi or lo <= y < hi:
                e -= p.coupling[y - x] * spins[x] * spins[y]
    return e


def block(s, lp):
    return [1 if (s >> k) & 1 else -1 for k in range(lp)]


def test_params_and_mean_field():
    p = kaclab.Params(beta=2.0, zeta=0.2, len_minus=2, range=4, len_plus=4)
    assert p.m_beta == pytest.approx(math.tanh(2.0 * p.m_beta), abs=1e-14)
    assert kaclab.entropy(0.0) == math.log(2.0)
    assert kaclab.Params.parse(p.serialize()).hash() == p.hash()
    with pytest.raises(kaclab.ConfigFailure):
        kaclab.Params(beta=0.5)


def test_free_chain_matches_enumeration():
    p = kaclab.Params(beta=1.7, zeta=0.5, len_minus=2, range=2, len_plus=4)
    lp, n, s0, sr = 4, 2, 15, 0b1011
    terms = []
    for bits in itertools.product([-1, 1], repeat=n * lp):
        spins = block(s0, lp) + list(bits) + block(sr, lp)
        terms.append(-p.beta * open_energy(p, spins, lp, (n + 1) * lp))
    brute = np.logaddexp.reduce(terms)
    assert kaclab.restricted_log_z(p, "free", n, s0, sr) == pytest.approx(brute, abs=1e-10)
    with pytest.raises(kaclab.ConfigError):
        kaclab.restricted_log_z(p, "nonsense", n, s0, sr)


def test_torus_classes_add_up():
    p = kaclab.Params(beta=2.0, zeta=0.2, len_minus=2, range=4, len_plus=4)
    t = kaclab.pbc_decomposition(p, 5)
    total = np.logaddexp.reduce([t["log_g"], t["log_X0"], t["log_Xplus"], t["log_Xminus"]])
    assert total == pytest.approx(t["log_pbc"], abs=1e-10)
    assert t["log_Xplus"] == pytest.approx(t["log_Xminus"], abs=1e-12)


def test_phase_labels_of_pure_torus():
    p = kaclab.Params(beta=2.0, zeta=0.2, len_minus=2, range=4, len_plus=4)
    lab = kaclab.phase_labels(p, [1] * 32)
    assert lab["pbc_class"] == "Xplus"
    assert all(t == 1 for t in lab["big_theta"])
    assert "partition" not in lab
    spins = ([1] * 16 + [-1] * 16) * 2
    mixed = kaclab.phase_labels(p, spins)
    assert mixed["pbc_class"] == "g"
    assert mixed["partition"]


def test_renewal_setup():
    p = kaclab.Params(beta=2.0, zeta=0.2, len_minus=2, range=4, len_plus=4)
    s = kaclab.RenewalSetup(p, R_trunc=800)
    law = s.law
    assert abs(law["mass"] - 1.0) <= 1e-10
    assert s.mass(0.5 * law["lambda"]) > s.mass(law["lambda"]) > s.mass(2.0 * law["lambda"])
    assert all(w >= 0.0 for _, _, w in s.entries)
    pr, res = s.event_probability("plus@0:3")
    assert res < 1e-12
    assert abs(s.torus_event_probability("plus@0:3", 48) - pr) < 1e-6
    assert s.sample_rods(300, 5) == s.sample_rods(300, 5)


def test_surface_tension():
    p = kaclab.Params(beta=2.0, zeta=0.2, len_minus=2, range=4, len_plus=4)
    st = kaclab.surface_tension(p)
    assert st["relative_gap"] <= st["tolerance"] <= 1e-3


def test_efp_and_coupling():
    q = {8: 0.5, 9: 0.5}
    r = kaclab.efp(q, 2000)
    assert abs(r["h"][2000] - 2.0 / 17.0) <= 1e-8
    assert r["identity_error"] <= 1e-12
    with pytest.raises(kaclab.PeriodicSupportWarning):
        kaclab.efp({8: 1.0}, 100)
    a = kaclab.coupling(q, seed=3, trials=2000)
    b = kaclab.coupling(q, seed=3, trials=2000)
    assert a["met"] == a["trials"] == 2000
    assert np.array_equal(a["sums"], b["sums"])


def test_metropolis_is_seeded():
    p = kaclab.Params(beta=2.0, zeta=0.2, len_minus=2, range=4, len_plus=4)
    a = kaclab.metropolis(p, 16, 500, burn_in=50, thin=5, seed=9, events=["plus@0:3"])
    b = kaclab.metropolis(p, 16, 500, burn_in=50, thin=5, seed=9)
    assert a["sigma"].shape == (90, 64)
    assert np.array_equal(a["sigma"], b["sigma"])
    assert 0.0 <= a["events"]["plus@0:3"][0] <= 1.0


def test_contours():
    p = kaclab.Params(beta=2.0, zeta=0.5, len_minus=4, range=4, len_plus=4)
    r = kaclab.polymer_partition(p, 4, 15, 15)
    assert r["rel_error"] <= 1e-9
    t = kaclab.potentials(p, 8)
    assert t["max_residual"] <= 1e-10
    assert all(v == 0.0 for a, b, v in t["entries"] if b - a + 1 < 5)


def test_instanton():
    r = kaclab.instanton(2.0)
    assert r["residual"] <= 1e-8
    assert r["antisymmetry"] <= 1e-6
    # Frozen from the converged C++ solve at h = 0.05, L = 12.
    assert r["fbar_F5"] == pytest.approx(0.2126353387, rel=1e-8)
    assert r["m"][-1] == pytest.approx(kaclab.solve_m_beta(2.0), abs=1e-6)
