import math

import numpy as np
import pytest

from triwalk import model
from triwalk.errors import DegeneracyError, SizeError, ValidationError
from triwalk.krawtchouk import eigenvalue
from triwalk.lattice import TriangularLattice


def _random_params(rng, n):
    while True:
        p = rng.uniform(0.5, 2.5, size=4)
        if abs(p[0] * p[3] - p[1] * p[2]) > 0.1:
            return model.ModelParams(n, *[float(x) for x in p])


# --- parameter validation ---------------------------------------------------

def test_validate_accepts_and_computes_sum():
    params = model.validate_params(3, 1, 2, 3, 4)
    assert params.S == 10
    assert params.delta == -2


def test_validate_rejects_degenerate_product():
    with pytest.raises(DegeneracyError):
        model.validate_params(3, 1, 2, 2, 4)  # 1*4 == 2*2


def test_validate_rejects_nonpositive():
    with pytest.raises(ValidationError):
        model.validate_params(3, 1, -2, 3, 4)
    with pytest.raises(ValidationError):
        model.validate_params(3, 1, 0.0, 3, 4)
    with pytest.raises(ValidationError):
        model.validate_params(3, 1, float("inf"), 3, 4)
    with pytest.raises(ValidationError):
        model.validate_params(-1, 1, 2, 3, 4)


# --- couplings ----------------------------------------------------------------

def test_coupling_boundary_zeros():
    params = model.validate_params(4, 1.0, 2.0, 3.0, 4.0)
    cpl = model.couplings(params)
    for j in range(5):
        assert cpl.i_at(0, j) == 0.0
    for i in range(5):
        assert cpl.j_at(i, 0) == 0.0
    # off-lattice lookups vanish by convention
    assert cpl.i_at(3, 3) == 0.0
    assert cpl.j_at(9, 9) == 0.0


def test_coupling_signs():
    rng = np.random.default_rng(7)
    params = _random_params(rng, 6)
    cpl = model.couplings(params)
    assert np.all(cpl.I >= 0.0)
    assert np.all(cpl.J <= 0.0)


def test_coupling_values_frozen_oracle():
    # independent desk evaluation at N=2, p=(1,2,3,4):
    # I_{1,0} = sqrt(10*1*3*6*1*2)/4 = 3*sqrt(10)/2
    # J_{1,1} = -sqrt(10*2*4*4*1*1)/6
    # B_{0,0} = 2*10/(-2)*(32/6 - 18/4), B_{1,0} adds 1/2
    params = model.validate_params(2, 1.0, 2.0, 3.0, 4.0)
    cpl = model.couplings(params)
    assert cpl.i_at(1, 0) == pytest.approx(4.743416490252569, rel=1e-15)
    assert cpl.j_at(1, 1) == pytest.approx(-2.9814239699997196, rel=1e-15)
    assert cpl.b_at(0, 0) == pytest.approx(-25.0 / 3.0, rel=1e-14)
    assert cpl.b_at(1, 0) == pytest.approx(-11.0 / 3.0, rel=1e-14)


def test_specialized_field_vanishes_on_diagonal():
    # p1 = p4 = 1, p2 = p3 = 3 + 2 sqrt 2 makes B proportional to (j - i)
    r = 3.0 + 2.0 * math.sqrt(2.0)
    params = model.validate_params(5, 1.0, r, r, 1.0)
    cpl = model.couplings(params)
    for i in range(3):
        assert cpl.b_at(i, i) == 0.0


# --- one-excitation Hamiltonian ------------------------------------------------

def test_hamiltonian_order_zero():
    params = model.validate_params(0, 1.0, 2.0, 3.0, 4.0)
    h = model.build_one_excitation_hamiltonian(params)
    assert h.shape == (1, 1)
    assert h[0, 0] == 0.0  # B_{0,0} vanishes at order 0


def test_hamiltonian_order_one_spectrum():
    params = model.validate_params(1, 1.0, 2.0, 3.0, 4.0)
    h = model.build_one_excitation_hamiltonian(params)
    assert np.max(np.abs(h - h.T)) == 0.0
    np.testing.assert_allclose(np.sort(np.linalg.eigvalsh(h)), [-7.0, 0.0, 3.0], atol=1e-12)


def test_hamiltonian_order_three_spectrum_multiset():
    params = model.validate_params(3, 1.0, 2.0, 3.0, 4.0)
    h = model.build_one_excitation_hamiltonian(params)
    lam = np.sort(np.linalg.eigvalsh(h))
    want = np.sort([3.0 * s - 7.0 * t for (s, t) in TriangularLattice(3).sites])
    np.testing.assert_allclose(lam, want, atol=1e-10)


@pytest.mark.parametrize("n", [2, 5, 9, 15])
def test_spectrum_linearity_random_params(n):
    rng = np.random.default_rng(100 + n)
    params = _random_params(rng, n)
    h = model.build_one_excitation_hamiltonian(params)
    lam = np.sort(np.linalg.eigvalsh(h))
    want = np.sort([eigenvalue(s, t, params) for (s, t) in TriangularLattice(n).sites])
    assert np.max(np.abs(lam - want)) <= 1e-8 * np.max(np.abs(want))


def test_hamiltonian_sparsity_structure():
    rng = np.random.default_rng(11)
    params = _random_params(rng, 5)
    h = model.build_one_excitation_hamiltonian(params)
    lat = TriangularLattice(5)
    for q, (i, j) in enumerate(lat.sites):
        for r, (k, l) in enumerate(lat.sites):
            neighbor = (abs(i - k) == 1 and j == l) or (abs(j - l) == 1 and i == k)
            if q != r and not neighbor:
                assert h[q, r] == 0.0


def test_hamiltonian_exact_symmetry():
    rng = np.random.default_rng(12)
    h = model.build_one_excitation_hamiltonian(_random_params(rng, 8))
    assert np.max(np.abs(h - h.T)) == 0.0


# --- 1D reference chain ---------------------------------------------------------

def test_chain_small_couplings():
    h1 = model.build_chain_hamiltonian_1d(1)
    assert h1[0, 1] == 0.5
    h2 = model.build_chain_hamiltonian_1d(2)
    assert h2[0, 1] == pytest.approx(1.0 / math.sqrt(2.0), rel=1e-15)
    assert h2[1, 2] == pytest.approx(1.0 / math.sqrt(2.0), rel=1e-15)
    assert np.all(np.diag(h2) == 0.0)


@pytest.mark.parametrize("n", range(1, 13))
def test_chain_linear_spectrum(n):
    lam = np.sort(np.linalg.eigvalsh(model.build_chain_hamiltonian_1d(n)))
    np.testing.assert_allclose(lam, np.arange(n + 1) - n / 2.0, atol=1e-10)


def test_chain_rejects_bad_order():
    with pytest.raises(ValidationError):
        model.build_chain_hamiltonian_1d(0)


# --- full Hilbert-space oracle ---------------------------------------------------

@pytest.mark.parametrize("n", [1, 2])
def test_full_hamiltonian_conserves_magnetization(n):
    params = model.validate_params(n, 1.0, 2.0, 3.0, 4.0)
    full = model.build_full_hamiltonian(params)
    sz = model.total_sz_full(TriangularLattice(n).dim)
    assert np.max(np.abs(full @ sz - sz @ full)) < 1e-12


@pytest.mark.parametrize("n", [1, 2])
def test_full_hamiltonian_one_excitation_block(n):
    params = model.validate_params(n, 1.0, 2.0, 3.0, 4.0)
    full = model.build_full_hamiltonian(params)
    block = model.one_excitation_block(full, TriangularLattice(n).dim)
    h = model.build_one_excitation_hamiltonian(params)
    assert np.max(np.abs(block - h)) < 1e-12


def test_full_hamiltonian_size_guard():
    params = model.validate_params(4, 1.0, 2.0, 3.0, 4.0)  # 15 sites
    with pytest.raises(SizeError):
        model.build_full_hamiltonian(params)


def test_full_hamiltonian_zero_excitation_energy():
    params = model.validate_params(2, 1.0, 2.0, 3.0, 4.0)
    full = model.build_full_hamiltonian(params)
    assert full[0, 0] == 0.0  # all spins down
