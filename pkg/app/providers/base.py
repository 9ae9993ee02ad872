from abc import ABC, abstractmethod
from typing import Dict, Any, Optional

import numpy as np

from app.errors import AppError


class SparseBasis(ABC):
    """Abstract base class for sparse-basis transforms Psi used by the sensing operators"""

    def __init__(self, config: Optional[Dict[str, Any]] = None):
        """
        Initialize basis with configuration

        Args:
            config: Basis-specific configuration
        """
        self.config = config or {}
        self.basis_name = self.__class__.__name__.replace('Basis', '').lower()

    @abstractmethod
    def forward(self, x: np.ndarray) -> np.ndarray:
        """
        Transform a pixel-basis vector into the sparse basis (Psi[x])

        Args:
            x: Joint-space vector of length N^2

        Returns:
            Coefficient vector of the same length
        """
        pass

    @abstractmethod
    def inverse(self, coefficients: np.ndarray) -> np.ndarray:
        """
        Transform sparse-basis coefficients back to the pixel basis (Psi^-1[x])

        Args:
            coefficients: Coefficient vector of length N^2

        Returns:
            Pixel-basis vector of the same length
        """
        pass

    def get_basis_name(self) -> str:
        """Get basis name"""
        return self.basis_name


class SparseBasisError(AppError):
    """Base exception for sparse-basis errors"""
    exit_code = 2
    error = "Sparse basis error"
