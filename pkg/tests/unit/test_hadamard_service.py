"""
Unit Tests for Hadamard Service
"""

import numpy as np
import pytest

from app.errors import LengthError, RowIndexError, ValidationError
from app.services.hadamard_service import HadamardService


class TestFastTransform:
    """Test cases for the fast Walsh-Hadamard transform"""

    def test_length_one_is_identity(self):
        """Test a single entry transforms to itself"""
        np.testing.assert_array_equal(HadamardService.fwht(np.array([5])), [5])

    def test_matches_dense_matrix(self):
        """Test the fast transform equals H_N times the vector, exactly on integers"""
        rng = np.random.default_rng(0)
        v = rng.integers(-50, 50, size=16)
        expected = HadamardService.hadamard_matrix(16) @ v
        np.testing.assert_array_equal(HadamardService.fwht(v), expected)

    def test_involution(self):
        """Test applying the transform twice scales by N"""
        v = np.arange(32, dtype=np.int64) - 7
        np.testing.assert_array_equal(HadamardService.fwht(HadamardService.fwht(v)), 32 * v)

    def test_constant_input(self):
        """Test a constant vector concentrates onto the first coefficient"""
        result = HadamardService.fwht(np.ones(8))
        np.testing.assert_array_equal(result, [8, 0, 0, 0, 0, 0, 0, 0])

    def test_integer_input_stays_integer(self):
        """Test integer input runs on the exact int64 path"""
        assert HadamardService.fwht(np.array([1, 2, 3, 4], dtype=np.int32)).dtype == np.int64
        assert HadamardService.fwht([0.5, 0.25]).dtype == np.float64

    def test_non_power_of_two_rejected(self):
        """Test lengths that are not powers of two raise LengthError"""
        with pytest.raises(LengthError):
            HadamardService.fwht(np.ones(6))
        with pytest.raises(LengthError):
            HadamardService.fwht(np.ones(0))

    def test_inplace_transforms_argument(self):
        """Test the in-place path returns and overwrites the given array"""
        v = np.arange(8, dtype=np.float64)
        out = HadamardService.fwht(v, inplace=True)
        assert out is v
        assert v[0] == 28

    def test_inplace_on_strided_view_copies(self):
        """Test a non-contiguous view is never written through"""
        base = np.arange(16, dtype=np.float64)
        original = base.copy()
        result = HadamardService.fwht(base[::2], inplace=True)
        np.testing.assert_array_equal(base, original)
        np.testing.assert_array_equal(result, HadamardService.hadamard_matrix(8) @ original[::2])

    def test_stacked_vectors(self):
        """Test each row of a 2D stack is transformed independently"""
        stack = np.array([[1, 0, 0, 0], [0, 1, 0, 0]])
        result = HadamardService.fwht(stack)
        np.testing.assert_array_equal(result, [[1, 1, 1, 1], [1, -1, 1, -1]])


class TestHadamardRows:
    """Test cases for rows, sign splitting and the dense oracle"""

    def test_first_rows(self):
        """Test Sylvester natural ordering of H_4"""
        np.testing.assert_array_equal(HadamardService.hadamard_row(4, 1), [1, 1, 1, 1])
        np.testing.assert_array_equal(HadamardService.hadamard_row(4, 2), [1, -1, 1, -1])
        np.testing.assert_array_equal(HadamardService.hadamard_row(4, 3), [1, 1, -1, -1])

    def test_row_out_of_range(self):
        """Test row indices outside [1, N] raise RowIndexError"""
        with pytest.raises(RowIndexError):
            HadamardService.hadamard_row(4, 0)
        with pytest.raises(RowIndexError):
            HadamardService.hadamard_row(4, 5)

    def test_split_signs(self):
        """Test a pattern splits into binary halves that difference back to it"""
        row = np.array([1, -1, -1, 1])
        split = HadamardService.split_signs(row)
        np.testing.assert_array_equal(split.positive, [1, 0, 0, 1])
        np.testing.assert_array_equal(split.negative, [0, 1, 1, 0])
        np.testing.assert_array_equal(split.positive.astype(int) - split.negative, row)

    def test_split_signs_rejects_zero(self):
        """Test non-±1 entries raise ValidationError"""
        with pytest.raises(ValidationError):
            HadamardService.split_signs([1, 0])

    def test_matrix_orthogonality(self):
        """Test H H^T = N I"""
        H = HadamardService.hadamard_matrix(8)
        np.testing.assert_array_equal(H @ H.T, 8 * np.eye(8, dtype=np.int64))

    def test_kron_of_orders(self):
        """Test H_4 (x) H_4 = H_16"""
        H4 = HadamardService.hadamard_matrix(4)
        np.testing.assert_array_equal(HadamardService.kron(H4, H4), HadamardService.hadamard_matrix(16))


class TestTransformProperties:
    """Test cases for the transform over every supported order"""

    @pytest.mark.parametrize('N', [2, 4, 8, 16, 64, 256])
    def test_random_integer_vectors(self, N):
        """Test 100 random integer vectors transform exactly like H_N v"""
        stack = np.random.default_rng(N).integers(-1000, 1000, size=(100, N))
        expected = stack @ HadamardService.hadamard_matrix(N)
        np.testing.assert_array_equal(HadamardService.fwht(stack), expected)

    @pytest.mark.parametrize('exponent', [
        1, 4, 8, 12, 16,
        pytest.param(18, marks=pytest.mark.slow),
        pytest.param(20, marks=pytest.mark.slow),
    ])
    def test_involution_large_orders(self, exponent):
        """Test H_N H_N v = N v on floats up to N = 2^20"""
        N = 2 ** exponent
        v = np.random.default_rng(exponent).standard_normal(N)
        twice = HadamardService.fwht(HadamardService.fwht(v))
        assert np.linalg.norm(twice - N * v) <= 1e-12 * np.linalg.norm(N * v)

    @pytest.mark.parametrize('N', [2, 4])
    def test_sign_split_kronecker_sum(self, N):
        """Test the four binary pattern-pair products recombine into H_{N^2}"""
        split = HadamardService.split_signs(HadamardService.hadamard_matrix(N))
        plus = split.positive.astype(np.int64)
        minus = split.negative.astype(np.int64)
        combined = (HadamardService.kron(plus, plus) + HadamardService.kron(minus, minus)
                    - HadamardService.kron(plus, minus) - HadamardService.kron(minus, plus))
        np.testing.assert_array_equal(combined, HadamardService.hadamard_matrix(N * N))
