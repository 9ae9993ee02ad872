from typing import Dict, Type, Optional

from app.providers.base import SparseBasis, SparseBasisError
from app.providers.identity_basis import IdentityBasis
from app.providers.wavelet_basis import WaveletBasis

# Basis registry
BASES: Dict[str, Type[SparseBasis]] = {
    "identity": IdentityBasis,
    "wavelet": WaveletBasis,
}


def get_basis(basis_name: str, config: Optional[dict] = None) -> SparseBasis:
    """
    Get sparse-basis instance by name.

    Args:
        basis_name: Name of the basis ('identity', 'wavelet')
        config: Basis-specific configuration

    Returns:
        Initialized basis instance

    Raises:
        SparseBasisError: If basis not found
    """
    basis_class = BASES.get(basis_name.lower())

    if not basis_class:
        raise SparseBasisError(f'Unknown sparse basis: {basis_name}')

    return basis_class(config)


def list_available_bases():
    """List all available bases."""
    return list(BASES)


__all__ = ['get_basis', 'list_available_bases', 'BASES', 'SparseBasis', 'SparseBasisError']
