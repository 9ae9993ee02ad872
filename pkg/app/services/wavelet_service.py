"""
Wavelet Service
Separable 2D biorthogonal 4.4 analysis/synthesis and universal soft thresholding
"""

import math
import warnings

import numpy as np
import pywt

from app.errors import ShapeError, ValidationError, WaveletDepthError
from app.models import WaveletPyramid

WAVELET = 'bior4.4'
BOUNDARY_MODE = 'symmetric'

# Cohen-Daubechies-Feauveau 9/7 pair (Daubechies, Ten Lectures on Wavelets,
# Table 8.3), normalized to sum sqrt(2); the nonzero analysis taps of bior4.4.
BIOR44_ANALYSIS_LOWPASS = (
    0.03782845550726404, -0.023849465019556843, -0.11062440441843718,
    0.37740285561283066, 0.8526986790088938, 0.37740285561283066,
    -0.11062440441843718, -0.023849465019556843, 0.03782845550726404,
)
BIOR44_ANALYSIS_HIGHPASS = (
    -0.06453888262869706, 0.04068941760916406, 0.41809227322161724,
    -0.7884856164055829,
    0.41809227322161724, 0.04068941760916406, -0.06453888262869706,
)

# median absolute deviation of a unit normal
MAD_SCALE = 0.6745


class WaveletService:
    """Wavelet shrinkage used as the soft-threshold denoiser"""

    @staticmethod
    def max_levels(shape) -> int:
        """Deepest decomposition leaving at least a 2x2 approximation band."""
        smallest = min(shape)
        if smallest < 2:
            return 0
        return max(0, int(math.log2(smallest)) - 1)

    @staticmethod
    def dwt2(image, levels: int = 2) -> WaveletPyramid:
        """
        Multi-level 2D analysis with symmetric (half-sample) extension

        Args:
            image: rows x cols real matrix
            levels: Decomposition depth

        Returns:
            WaveletPyramid with coarsest-first detail bands
        """
        image = np.asarray(image, dtype=np.float64)
        if image.ndim != 2:
            raise ShapeError(f'Expected a 2D image, got shape {image.shape}')
        if levels < 1 or levels > WaveletService.max_levels(image.shape):
            raise WaveletDepthError(
                f'Image of shape {image.shape} supports at most {WaveletService.max_levels(image.shape)} levels, '
                f'{levels} requested')

        with warnings.catch_warnings():
            # small images: every coefficient sees the boundary extension, which is expected
            warnings.simplefilter('ignore', UserWarning)
            coeffs = pywt.wavedec2(image, WAVELET, mode=BOUNDARY_MODE, level=levels)

        return WaveletPyramid(
            levels=levels,
            approx=coeffs[0],
            details=[tuple(bands) for bands in coeffs[1:]],
            original_shape=tuple(image.shape),
        )

    @staticmethod
    def idwt2(pyramid: WaveletPyramid) -> np.ndarray:
        """Synthesis with the matched bior4.4 filters, cropped to the original shape."""
        if pyramid.details and pyramid.details[0][0].shape != pyramid.approx.shape:
            raise ShapeError(
                f'Approximation band {pyramid.approx.shape} does not match coarsest detail band '
                f'{pyramid.details[0][0].shape}')

        try:
            image = pywt.waverec2(pyramid.to_coeffs(), WAVELET, mode=BOUNDARY_MODE)
        except ValueError as e:
            raise ShapeError(f'Inconsistent pyramid: {e}')

        rows, cols = pyramid.original_shape
        return np.ascontiguousarray(image[:rows, :cols])

    @staticmethod
    def universal_threshold(pyramid: WaveletPyramid) -> float:
        """lambda = sigma * sqrt(2 ln n), sigma from the finest diagonal band's MAD."""
        if not pyramid.details:
            raise ValidationError('Pyramid has no detail bands to threshold')
        sigma = np.median(np.abs(pyramid.finest_diagonal)) / MAD_SCALE
        n = pyramid.original_shape[0] * pyramid.original_shape[1]
        return float(sigma * math.sqrt(2.0 * math.log(n)))

    @staticmethod
    def universal_soft_threshold(pyramid: WaveletPyramid) -> WaveletPyramid:
        """Soft-threshold every detail coefficient at the universal threshold; approximation untouched."""
        threshold = WaveletService.universal_threshold(pyramid)
        return WaveletService.soft_threshold(pyramid, threshold)

    @staticmethod
    def soft_threshold(pyramid: WaveletPyramid, threshold: float) -> WaveletPyramid:
        if threshold < 0:
            raise ValidationError('Soft threshold must be non-negative')
        if threshold == 0:
            # pywt evaluates 0/0 on zero coefficients at a zero threshold
            return pyramid.map_details(np.copy)
        return pyramid.map_details(lambda band: pywt.threshold(band, threshold, mode='soft'))
