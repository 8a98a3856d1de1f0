import math

import numpy as np
import pytest

from expotype import (
    CubeOperator,
    SpectralVector,
    ValidationError,
    cube_spectrum,
    cube_vector_to_csv,
    eigenfunction_eval,
    fd_oracle_1d,
    heat_profile_1d,
    heat_solution_eval,
    weyl_fit,
)


def cube_vector(idx, coeffs) -> SpectralVector:
    return SpectralVector(idx.to_spectrum(), coeffs)


class TestCubeSpectrum:
    def test_two_dimensional_square(self):
        idx = cube_spectrum(CubeOperator(2, math.pi, 2))
        np.testing.assert_array_equal(idx.eigenvalues, [2.0, 5.0, 5.0, 8.0])
        assert idx.multi_indices.tolist() == [[1, 1], [1, 2], [2, 1], [2, 2]]
        np.testing.assert_array_equal(idx.multiplicities, [1, 2, 2, 1])

    def test_one_dimensional_squares(self):
        idx = cube_spectrum(CubeOperator(1, math.pi, 4))
        np.testing.assert_array_equal(idx.eigenvalues, [1.0, 4.0, 9.0, 16.0])

    def test_three_dimensional_ground_state(self):
        idx = cube_spectrum(CubeOperator(3, math.pi, 1))
        np.testing.assert_array_equal(idx.eigenvalues, [3.0])

    def test_side_length_scaling(self):
        idx = cube_spectrum(CubeOperator(1, 2.0, 3))
        expected = (math.pi**2 / 4.0) * np.array([1.0, 4.0, 9.0])
        np.testing.assert_allclose(idx.eigenvalues, expected, rtol=1e-15)

    def test_lexicographic_tie_break(self):
        idx = cube_spectrum(CubeOperator(3, math.pi, 2))
        degenerate = idx.multi_indices[idx.eigenvalues == 6.0]
        assert degenerate.tolist() == [[1, 1, 2], [1, 2, 1], [2, 1, 1]]

    def test_mode_cap(self):
        with pytest.raises(ValidationError, match="cap"):
            CubeOperator(4, 1.0, 64)

    def test_dimension_range(self):
        with pytest.raises(ValidationError):
            CubeOperator(5, 1.0, 2)


class TestEigenfunctions:
    def test_peak_of_first_mode(self):
        op = CubeOperator(1, math.pi, 4)
        value = eigenfunction_eval(op, [1], [math.pi / 2.0])
        assert value == pytest.approx(math.sqrt(2.0 / math.pi), rel=1e-15)

    def test_vanishes_on_every_face(self):
        op = CubeOperator(2, 1.5, 3)
        for index in ([1, 1], [2, 3]):
            for point in ([0.0, 0.7], [1.5, 0.7], [0.7, 0.0], [0.7, 1.5]):
                assert eigenfunction_eval(op, index, point) == pytest.approx(0.0, abs=1e-15)

    def test_unit_square_value(self):
        op = CubeOperator(2, 1.0, 4)
        value = eigenfunction_eval(op, [1, 2], [0.5, 0.25])
        assert value == pytest.approx(2.0, rel=1e-14)

    def test_outside_rejected(self):
        op = CubeOperator(1, 1.0, 2)
        with pytest.raises(ValidationError, match="outside"):
            eigenfunction_eval(op, [1], [1.5])

    def test_discrete_orthonormality(self):
        # trapezoid quadrature over 2001 points reproduces delta_mn
        op = CubeOperator(1, math.pi, 6)
        xs = np.linspace(0.0, math.pi, 2001)
        for m in range(1, 5):
            for n in range(1, 5):
                fm = math.sqrt(2.0 / math.pi) * np.sin(m * xs)
                fn = math.sqrt(2.0 / math.pi) * np.sin(n * xs)
                integral = np.trapezoid(fm * fn, xs)
                assert integral == pytest.approx(1.0 if m == n else 0.0, abs=1e-6)


class TestHeatSolution:
    def test_single_mode_decay(self):
        idx = cube_spectrum(CubeOperator(1, math.pi, 3))
        f = cube_vector(idx, [1.0, 0.0, 0.0])
        value = heat_solution_eval(idx, f, 0.1, [math.pi / 2.0])
        assert value == pytest.approx(math.exp(-0.1) * math.sqrt(2.0 / math.pi), rel=1e-14)

    def test_time_zero_matches_expansion(self):
        idx = cube_spectrum(CubeOperator(1, math.pi, 3))
        f = cube_vector(idx, [0.5, -0.25, 0.125])
        x = [1.1]
        expected = sum(
            c * eigenfunction_eval(idx.op, mi, x)
            for c, mi in zip(f.coeffs, idx.multi_indices)
        )
        assert heat_solution_eval(idx, f, 0.0, x) == pytest.approx(expected, rel=1e-13)

    def test_two_modes_direct_sum_oracle(self):
        idx = cube_spectrum(CubeOperator(1, math.pi, 2))
        f = cube_vector(idx, [0.7, -0.4])
        t, x = 0.05, 0.9
        oracle = math.sqrt(2.0 / math.pi) * (
            0.7 * math.exp(-1.0 * t) * math.sin(x)
            - 0.4 * math.exp(-4.0 * t) * math.sin(2.0 * x)
        )
        assert heat_solution_eval(idx, f, t, [x]) == pytest.approx(oracle, rel=1e-13)

    def test_boundary_values_vanish(self):
        idx = cube_spectrum(CubeOperator(2, 2.0, 4))
        rng = np.random.default_rng(1)
        f = cube_vector(idx, rng.uniform(-1.0, 1.0, len(idx)))
        for point in ([0.0, 1.3], [2.0, 0.4], [0.8, 0.0], [1.1, 2.0]):
            assert abs(heat_solution_eval(idx, f, 0.2, point)) <= 1e-12

    def test_profile_matches_pointwise_eval(self):
        idx = cube_spectrum(CubeOperator(1, math.pi, 5))
        rng = np.random.default_rng(2)
        f = cube_vector(idx, rng.uniform(-1.0, 1.0, len(idx)))
        xs = np.linspace(0.0, math.pi, 17)
        profile = heat_profile_1d(idx, f, 0.3, xs)
        for x, value in zip(xs, profile):
            assert value == pytest.approx(
                heat_solution_eval(idx, f, 0.3, [x]), rel=1e-12, abs=1e-15
            )

    def test_spectrum_mismatch_rejected(self):
        idx = cube_spectrum(CubeOperator(1, math.pi, 3))
        other = SpectralVector(
            cube_spectrum(CubeOperator(1, 1.0, 3)).to_spectrum(), [1.0, 0.0, 0.0]
        )
        with pytest.raises(ValidationError, match="spectrum mismatch"):
            heat_solution_eval(idx, other, 0.0, [0.5])


class TestWeylFit:
    def test_one_dimensional_is_exact(self):
        idx = cube_spectrum(CubeOperator(1, math.pi, 64))
        fit = weyl_fit(idx, 1, (1, 64))
        assert fit.exponent == pytest.approx(2.0, abs=1e-12)
        assert fit.c1 == pytest.approx(1.0, abs=1e-14)
        assert fit.c2 == pytest.approx(1.0, abs=1e-14)

    def test_two_dimensional_window(self):
        idx = cube_spectrum(CubeOperator(2, math.pi, 64))
        fit = weyl_fit(idx, 2, (100, 1000))
        assert fit.exponent == pytest.approx(1.0, rel=0.05)
        assert fit.c1 <= fit.c2

    def test_three_dimensional_window(self):
        idx = cube_spectrum(CubeOperator(3, math.pi, 32))
        fit = weyl_fit(idx, 3, (200, 2000))
        assert fit.exponent == pytest.approx(2.0 / 3.0, rel=0.10)

    def test_sandwich_holds_on_window(self):
        idx = cube_spectrum(CubeOperator(2, math.pi, 32))
        fit = weyl_fit(idx, 2, (50, 400))
        n = np.arange(50, 401, dtype=float)
        ratios = idx.eigenvalues[49:400] / n ** (2.0 / 2.0)
        assert np.all(ratios >= fit.c1 - 1e-12)
        assert np.all(ratios <= fit.c2 + 1e-12)

    def test_window_too_small(self):
        idx = cube_spectrum(CubeOperator(1, math.pi, 64))
        with pytest.raises(ValidationError, match="window too small"):
            weyl_fit(idx, 1, (1, 10))

    def test_window_past_reliability_threshold(self):
        # far entries of the truncated lattice undercount the spectrum
        idx = cube_spectrum(CubeOperator(2, math.pi, 8))
        with pytest.raises(ValidationError, match="reliability"):
            weyl_fit(idx, 2, (30, 64))


class TestFdOracle:
    def test_first_mode_decay_rate(self):
        xs = np.linspace(0.0, math.pi, 401)
        final = fd_oracle_1d(math.pi, np.sin(xs), 0.1, 401, 1e-4)
        exact = math.exp(-0.1) * np.sin(xs)
        error = np.linalg.norm(final - exact) / np.linalg.norm(exact)
        assert error <= 1e-3

    def test_zero_initial_data_stays_zero(self):
        final = fd_oracle_1d(math.pi, np.zeros(101), 0.2, 101, 1e-3)
        np.testing.assert_array_equal(final, np.zeros(101))

    def test_second_mode_decay_rate(self):
        xs = np.linspace(0.0, math.pi, 401)
        final = fd_oracle_1d(math.pi, np.sin(2.0 * xs), 0.05, 401, 1e-4)
        exact = math.exp(-0.2) * np.sin(2.0 * xs)
        error = np.linalg.norm(final - exact) / np.linalg.norm(exact)
        assert error <= 1e-3

    def test_callable_initial_data(self):
        final = fd_oracle_1d(math.pi, np.sin, 0.05, 201, 1e-3)
        xs = np.linspace(0.0, math.pi, 201)
        exact = math.exp(-0.05) * np.sin(xs)
        assert np.linalg.norm(final - exact) / np.linalg.norm(exact) <= 1e-2

    def test_agreement_with_spectral_solution(self):
        rng = np.random.default_rng(31)
        idx = cube_spectrum(CubeOperator(1, math.pi, 8))
        coeffs = np.zeros(8)
        coeffs[:5] = rng.uniform(-1.0, 1.0, 5)
        f = cube_vector(idx, coeffs)
        xs = np.linspace(0.0, math.pi, 401)
        u0 = heat_profile_1d(idx, f, 0.0, xs)
        u_fd = fd_oracle_1d(math.pi, u0, 0.1, 401, 1e-4)
        u_spec = heat_profile_1d(idx, f, 0.1, xs)
        error = np.linalg.norm(u_fd - u_spec) / np.linalg.norm(u_spec)
        assert error <= 1e-3

    def test_grid_too_coarse_rejected(self):
        with pytest.raises(ValidationError):
            fd_oracle_1d(1.0, np.zeros(5), 0.1, 5, 1e-3)


class TestCubeCsv:
    def test_multi_index_column(self):
        idx = cube_spectrum(CubeOperator(2, math.pi, 2))
        f = cube_vector(idx, [1.0, 0.5, 0.25, 0.0])
        text = cube_vector_to_csv(idx, f)
        lines = text.strip().splitlines()
        assert lines[0] == "lambda,coeff,multi_index"
        assert lines[1] == "2,1,1;1"
        assert lines[2] == "5,0.5,1;2"
