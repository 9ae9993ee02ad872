"""
Plot Service
8-bit binary graymap (PGM P5) heatmaps of joint and marginal distributions
"""

from typing import Optional, Tuple

import numpy as np

from app.errors import ValidationError
from app.models import JointDistribution
from app.services.info_service import InfoService
from app.services.storage_service import StorageService
from app.utils.logger import get_logger

logger = get_logger(__name__)

ZOOM_MASS = 0.99


class PlotService:

    @staticmethod
    def to_gray(image) -> np.ndarray:
        """Linear map of [0, max] onto 0..255."""
        image = np.asarray(image, dtype=np.float64)
        if image.ndim != 2:
            raise ValidationError(f'Expected a 2D image, got shape {image.shape}')
        peak = image.max() if image.size else 0.0
        if peak <= 0:
            return np.zeros(image.shape, dtype=np.uint8)
        return np.rint(np.clip(image, 0.0, None) / peak * 255.0).astype(np.uint8)

    @staticmethod
    def encode_pgm(gray: np.ndarray) -> bytes:
        rows, cols = gray.shape
        return f'P5\n{cols} {rows}\n255\n'.encode('ascii') + np.ascontiguousarray(gray, dtype=np.uint8).tobytes()

    @staticmethod
    def mass_bounding_box(image, mass: float = ZOOM_MASS) -> Tuple[slice, slice]:
        """Smallest row/column window holding the largest entries that together carry `mass` of the total."""
        image = np.asarray(image, dtype=np.float64)
        total = image.sum()
        if total <= 0:
            return slice(0, image.shape[0]), slice(0, image.shape[1])
        flat = image.ravel()
        order = np.argsort(flat, kind='stable')[::-1]
        count = int(np.searchsorted(np.cumsum(flat[order]), mass * total)) + 1
        rows, cols = np.unravel_index(order[:min(count, flat.size)], image.shape)
        return slice(int(rows.min()), int(rows.max()) + 1), slice(int(cols.min()), int(cols.max()) + 1)

    @staticmethod
    def render(distribution: JointDistribution, zoom: bool = False, marginal: Optional[str] = None) -> bytes:
        """
        Heatmap of the N x N joint image, or of one side x side marginal image

        Args:
            distribution: Joint distribution to draw
            zoom: Crop to the bounding box of the top 99% of mass
            marginal: 'S' or 'I' to draw that detector's marginal instead

        Returns:
            PGM bytes
        """
        if marginal is None:
            image = distribution.image
        else:
            p_S, p_I = InfoService.marginals(distribution)
            if marginal == 'S':
                image = p_S.reshape(distribution.side, distribution.side)
            elif marginal == 'I':
                image = p_I.reshape(distribution.side, distribution.side)
            else:
                raise ValidationError(f"Marginal must be 'S' or 'I', got {marginal!r}")

        if zoom:
            rows, cols = PlotService.mass_bounding_box(image)
            image = image[rows, cols]
        return PlotService.encode_pgm(PlotService.to_gray(image))

    @staticmethod
    def write_plot(path: str, distribution: JointDistribution, zoom: bool = False, marginal: Optional[str] = None):
        data = PlotService.render(distribution, zoom=zoom, marginal=marginal)
        StorageService.write_bytes(path, data)
        logger.info(f'Heatmap written to {path}')
