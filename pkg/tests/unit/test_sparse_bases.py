"""
Unit Tests for Sparse Bases
"""

import numpy as np
import pytest

from app.providers import get_basis, list_available_bases, SparseBasisError
from app.providers.identity_basis import IdentityBasis
from app.providers.wavelet_basis import WaveletBasis
from app.services.sampler_service import SamplerService


class TestBasisRegistry:
    """Test cases for the basis registry"""

    def test_available_bases(self):
        """Test both bases are registered"""
        assert list_available_bases() == ['identity', 'wavelet']

    def test_get_basis(self):
        """Test lookup is case-insensitive and configures the instance"""
        assert isinstance(get_basis('Identity'), IdentityBasis)
        basis = get_basis('wavelet', {'levels': 1})
        assert isinstance(basis, WaveletBasis)
        assert basis.levels == 1
        assert basis.get_basis_name() == 'wavelet'

    def test_unknown_basis(self):
        """Test an unknown name raises SparseBasisError"""
        with pytest.raises(SparseBasisError):
            get_basis('curvelet')


class TestWaveletBasis:
    """Test cases for the periodized wavelet basis"""

    def test_inverse_undoes_forward(self):
        """Test the basis pair reconstructs the joint image"""
        basis = get_basis('wavelet')
        x = np.random.default_rng(0).random(1024)
        coefficients = basis.forward(x)
        assert coefficients.shape == x.shape
        np.testing.assert_allclose(basis.inverse(coefficients), x, atol=1e-10)

    def test_hook_in_operator(self, joint_sampler):
        """Test A Psi^-1 applied to Psi x equals A x"""
        basis = get_basis('wavelet')
        x = np.random.default_rng(1).random(joint_sampler.dimension)
        np.testing.assert_allclose(
            SamplerService.apply_A(joint_sampler, basis.forward(x), sparse_hook=basis),
            SamplerService.apply_A(joint_sampler, x),
            atol=1e-9,
        )

    def test_unsupported_size(self):
        """Test images not divisible by 2^levels are rejected"""
        with pytest.raises(SparseBasisError):
            get_basis('wavelet', {'levels': 3}).forward(np.zeros(36))

    def test_hooked_pair_is_not_adjoint(self, joint_sampler):
        """Test the biorthogonal basis breaks <A Psi^-1 c, y> = <c, Psi A^T y>"""
        basis = get_basis('wavelet')
        rng = np.random.default_rng(2)
        c = rng.standard_normal(joint_sampler.dimension)
        y = rng.standard_normal(joint_sampler.M)
        left = SamplerService.apply_A(joint_sampler, c, sparse_hook=basis) @ y
        right = c @ SamplerService.apply_At(joint_sampler, y, sparse_hook=basis)
        assert abs(left - right) > 1e-6 * abs(left)
