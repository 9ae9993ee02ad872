import math

import numpy as np
import pywt

from app.providers.base import SparseBasis, SparseBasisError


class WaveletBasis(SparseBasis):
    """
    Periodized 2D wavelet decomposition of the N x N joint image.

    Periodization keeps the coefficient array the same size as the image, so
    the hook maps R^{N^2} onto itself. bior4.4 is biorthogonal: inverse is not
    the transpose of forward, so the hooked A^T is not the adjoint of the hooked A.
    """

    def __init__(self, config=None):
        super().__init__(config)
        self.wavelet = self.config.get('wavelet', 'bior4.4')
        self.levels = int(self.config.get('levels', 2))

    def _side(self, length: int) -> int:
        side = math.isqrt(length)
        if side * side != length or side % (2 ** self.levels):
            raise SparseBasisError(
                f'Wavelet basis needs a square image divisible by 2^{self.levels}, got {length} entries')
        return side

    def _slices(self, side: int):
        template = pywt.wavedec2(np.zeros((side, side)), self.wavelet, mode='periodization', level=self.levels)
        return pywt.coeffs_to_array(template)[1]

    def forward(self, x: np.ndarray) -> np.ndarray:
        x = np.asarray(x, dtype=np.float64)
        side = self._side(x.size)
        coeffs = pywt.wavedec2(x.reshape(side, side), self.wavelet, mode='periodization', level=self.levels)
        array, _ = pywt.coeffs_to_array(coeffs)
        return array.ravel()

    def inverse(self, coefficients: np.ndarray) -> np.ndarray:
        coefficients = np.asarray(coefficients, dtype=np.float64)
        side = self._side(coefficients.size)
        coeffs = pywt.array_to_coeffs(coefficients.reshape(side, side), self._slices(side), output_format='wavedec2')
        return pywt.waverec2(coeffs, self.wavelet, mode='periodization').ravel()
