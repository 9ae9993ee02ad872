"""
Hadamard Service
Sylvester-Hadamard primitives: fast Walsh-Hadamard transform, row extraction,
sign splitting and a dense Kronecker oracle for small instances.
"""

import numpy as np

from app.errors import LengthError, RowIndexError, ValidationError
from app.models import SignSplitRow


class HadamardService:
    """Matrix-free Sylvester-Hadamard operations"""

    @staticmethod
    def is_power_of_two(n: int) -> bool:
        n = int(n)
        return n >= 1 and (n & (n - 1)) == 0

    @staticmethod
    def fwht(v, inplace: bool = False) -> np.ndarray:
        """
        Unnormalized fast Walsh-Hadamard transform in natural (Sylvester) order.

        Transforms along the last axis, so a stack of vectors is handled in one
        pass. Integer input stays on an exact int64 path; everything else runs
        in float64.

        Args:
            v: Array whose last axis has length 2**k
            inplace: Transform v itself (must already be an int64/float64 ndarray)

        Returns:
            H_{2**k} @ v along the last axis
        """
        if (inplace and isinstance(v, np.ndarray) and v.dtype in (np.int64, np.float64)
                and v.flags.c_contiguous and v.flags.writeable):
            a = v
        else:
            v = np.asarray(v)
            dtype = np.int64 if np.issubdtype(v.dtype, np.integer) or v.dtype == bool else np.float64
            a = np.array(v, dtype=dtype, copy=True)

        n = a.shape[-1] if a.ndim else 0
        if not HadamardService.is_power_of_two(n):
            raise LengthError(f'Transform length must be a power of two, got {n}')

        lead = a.shape[:-1]
        h = 1
        while h < n:
            # butterflies of stride h: (top, bottom) -> (top + bottom, top - bottom)
            view = a.reshape(lead + (n // (2 * h), 2, h))
            top = view[..., 0, :].copy()
            view[..., 0, :] += view[..., 1, :]
            np.subtract(top, view[..., 1, :], out=view[..., 1, :])
            h *= 2
        return a

    @staticmethod
    def hadamard_row(N: int, i: int) -> np.ndarray:
        """Row i (1-based) of H_N, built as the transform of basis vector alpha[i]."""
        if not HadamardService.is_power_of_two(N):
            raise LengthError(f'Hadamard order must be a power of two, got {N}')
        if not 1 <= i <= N:
            raise RowIndexError(f'Row index {i} outside [1, {N}]')
        basis = np.zeros(N, dtype=np.int64)
        basis[i - 1] = 1
        return HadamardService.fwht(basis, inplace=True)

    @staticmethod
    def split_signs(row) -> SignSplitRow:
        """Split a ±1 pattern into its binary P+ and |P-| halves."""
        row = np.asarray(row)
        plus = row == 1
        minus = row == -1
        if not np.all(plus | minus):
            raise ValidationError('Sign splitting requires every entry to be +1 or -1')
        return SignSplitRow(positive=plus.astype(np.int8), negative=minus.astype(np.int8))

    @staticmethod
    def kron(a, b) -> np.ndarray:
        """Kronecker product; dense, meant for small-instance oracles only."""
        return np.kron(np.asarray(a), np.asarray(b))

    @staticmethod
    def hadamard_matrix(N: int) -> np.ndarray:
        """Explicit H_N by the recursion H_{2k} = H_2 (x) H_k (dense oracle)."""
        if not HadamardService.is_power_of_two(N):
            raise LengthError(f'Hadamard order must be a power of two, got {N}')
        h2 = np.array([[1, 1], [1, -1]], dtype=np.int64)
        matrix = np.ones((1, 1), dtype=np.int64)
        while matrix.shape[0] < N:
            matrix = HadamardService.kron(h2, matrix)
        return matrix
