import numpy as np

from app.providers.base import SparseBasis


class IdentityBasis(SparseBasis):
    """Psi = 1: the signal is sparse in the pixel basis"""

    def forward(self, x: np.ndarray) -> np.ndarray:
        return np.asarray(x)

    def inverse(self, coefficients: np.ndarray) -> np.ndarray:
        return np.asarray(coefficients)
