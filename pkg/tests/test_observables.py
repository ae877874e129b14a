import numpy as np
import pytest

from e2qes.model import (ModelParams, PreconditionError,
                         closed_form_counterpart, model_hamiltonian, realize)
from e2qes.observables import (QuadratureGrid, ThreeLevelSystem,
                               apply_coefficients, apply_mode_number,
                               double_scaling_compare, expectation,
                               modes_to_grid, tdse_residual)
from e2qes.qes import quantization_eigenvalues


def test_grid_integrates_fourier_modes_exactly():
    grid = QuadratureGrid(n_nodes=64)
    for k in (0, 1, 5, -7):
        val = grid.integrate(np.exp(1j * k * grid.nodes))
        want = 2.0 * np.pi if k == 0 else 0.0
        assert abs(val - want) <= 1e-12


def test_grid_validation():
    with pytest.raises(PreconditionError):
        QuadratureGrid(n_nodes=4)


def test_modes_to_grid_matches_direct_sum():
    grid = QuadratureGrid(n_nodes=32, theta0=0.3)
    modes = np.array([0.2, -0.5j, 1.0, 0.1, 0.0])
    direct = sum(c * np.exp(1j * k * grid.nodes)
                 for k, c in zip(range(-2, 3), modes))
    np.testing.assert_allclose(modes_to_grid(modes, grid), direct, atol=1e-14)
    with pytest.raises(PreconditionError):
        modes_to_grid(np.ones(4), grid)


def test_apply_mode_number_offset_independent():
    modes = np.zeros(9, dtype=complex)
    modes[6] = 1.0  # k = +2
    for theta0 in (0.0, 0.9):
        grid = QuadratureGrid(n_nodes=64, theta0=theta0)
        f = modes_to_grid(modes, grid)
        np.testing.assert_allclose(apply_mode_number(f, grid), 2.0 * f,
                                   atol=1e-12)


def test_apply_coefficients_matches_matrix_route(rng):
    # FFT/pointwise application vs the dense operator on mode vectors
    order = 16
    grid = QuadratureGrid(n_nodes=128)
    p = ModelParams(zeta=0.5, beta=0.3, level=2.3)
    coeffs = model_hamiltonian(p)
    modes = np.zeros(2 * order + 1, dtype=complex)
    modes[order - 4:order + 5] = rng.normal(size=9) + 1j * rng.normal(size=9)
    H = realize(coeffs, 0.0, order).entries
    want = modes_to_grid(H @ modes, grid)
    got = apply_coefficients(coeffs, 0.0, modes_to_grid(modes, grid), grid)
    np.testing.assert_allclose(got, want, atol=1e-12)


def test_expectation_hand_value():
    # psi ~ 1 + cos(theta): <cos> = 2/3
    grid = QuadratureGrid()
    psi = (1.0 + np.cos(grid.nodes)) / np.sqrt(3.0 * np.pi)
    assert expectation("v", psi, grid) == pytest.approx(2.0 / 3.0, abs=1e-12)
    assert expectation("u", psi, grid) == pytest.approx(0.0, abs=1e-12)
    assert expectation("J", psi, grid) == pytest.approx(0.0, abs=1e-12)


def test_expectation_accepts_mode_vector():
    grid = QuadratureGrid()
    modes = np.zeros(9, dtype=complex)
    modes[5] = 1.0 / np.sqrt(2.0 * np.pi)  # e^{i theta}, normalized
    assert expectation("J", modes, grid) == pytest.approx(1.0, abs=1e-12)


def test_expectation_norm_guard():
    grid = QuadratureGrid()
    with pytest.raises(PreconditionError):
        expectation("v", np.ones(grid.n_nodes), grid)
    with pytest.raises(PreconditionError):
        expectation("w", np.ones(grid.n_nodes) / np.sqrt(2 * np.pi), grid)


def test_tdse_residual_dt_bounds():
    grid = QuadratureGrid()
    sys = ThreeLevelSystem.from_couplings(0.5, 0.3, "0")
    hh = closed_form_counterpart(sys.params, sys.lam)
    fn = lambda t: sys.wavefunction("zero", t, grid)
    with pytest.raises(PreconditionError):
        tdse_residual(fn, hh, 0.1, grid, dt=1e-8)


def test_tdse_detects_wrong_hamiltonian():
    grid = QuadratureGrid()
    sys = ThreeLevelSystem.from_couplings(0.5, 0.3, "0.4*sin(t)")
    good = closed_form_counterpart(sys.params, sys.lam)
    wrong = closed_form_counterpart(
        ModelParams.quantized(2, 0.5, 0.8), sys.lam)
    fn = lambda t: sys.wavefunction("plus", t, grid)
    assert tdse_residual(fn, good, 0.6, grid) <= 1e-6
    assert tdse_residual(fn, wrong, 0.6, grid) >= 1e-2


def test_three_level_requires_quantized_level():
    with pytest.raises(PreconditionError):
        ThreeLevelSystem(ModelParams(zeta=0.5, beta=0.3, level=2.0), "0")
    with pytest.raises(PreconditionError):
        ThreeLevelSystem.from_couplings(0.0, 0.3, "0")


def test_three_level_energies_match_spectrum_route():
    sys = ThreeLevelSystem.from_couplings(0.5, 0.3, "0")
    e = sys.energies()
    cos_spec = quantization_eigenvalues("cos", 2, 0.5, 0.3)
    np.testing.assert_allclose(sorted([e["minus"], e["plus"]]),
                               cos_spec.energies, atol=1e-12)
    sin_spec = quantization_eigenvalues("sin", 2, 0.5, 0.3)
    assert e["zero"] == pytest.approx(sin_spec.energies[0], abs=1e-12)


def test_three_level_states_orthonormal():
    grid = QuadratureGrid()
    sys = ThreeLevelSystem.from_couplings(0.9, 0.2, "0.3*t")
    t = 1.2
    states = [sys.wavefunction(s, t, grid) for s in ("plus", "minus", "zero")]
    for i, a in enumerate(states):
        for j, b in enumerate(states):
            val = grid.integrate(np.conj(a) * b)
            assert abs(val - (1.0 if i == j else 0.0)) <= 1e-12


def test_three_level_moments_match_quadrature():
    grid = QuadratureGrid()
    sys = ThreeLevelSystem.from_couplings(1.0, 0.3, "0.7")
    t = 0.0
    closed = sys.closed_form_expectations(t)
    for state in ("plus", "minus", "zero"):
        psi = sys.wavefunction(state, t, grid)
        for op in ("u", "v", "J"):
            assert expectation(op, psi, grid) == pytest.approx(
                closed[state][op], abs=1e-12)


def test_superposition_linearity_and_norm():
    grid = QuadratureGrid()
    sys = ThreeLevelSystem.from_couplings(0.5, 0.3, "0.1*t")
    t = 0.4
    psi = sys.superposition({"plus": 0.6, "zero": 0.8j}, t, grid)
    norm = grid.integrate(np.abs(psi) ** 2).real
    assert norm == pytest.approx(1.0, abs=1e-12)


def test_double_scaling_requires_deep_level():
    with pytest.raises(PreconditionError):
        double_scaling_compare(1.0, [0.2], 0.3)  # N = 5 < 10


def test_double_scaling_structure():
    rows = double_scaling_compare(1.0, [0.1, 0.02], 0.3, order=48, k_low=3)
    assert len(rows) == 2
    assert rows[0]["deviation"].max() > rows[1]["deviation"].max()
    # limit eigenvalues independent of zeta
    np.testing.assert_allclose(rows[0]["limit"], rows[1]["limit"])
