from dataclasses import dataclass
from typing import List, Tuple

import numpy as np

from app.errors import ShapeError

DetailBands = Tuple[np.ndarray, np.ndarray, np.ndarray]


@dataclass(frozen=True, eq=False)
class WaveletPyramid:
    """
    2D decomposition: coarsest approximation plus (horizontal, vertical,
    diagonal) detail bands ordered coarsest level first.
    """
    levels: int
    approx: np.ndarray
    details: List[DetailBands]
    original_shape: Tuple[int, int]

    def __post_init__(self):
        if len(self.details) != self.levels:
            raise ShapeError(f'Pyramid declares {self.levels} levels but holds {len(self.details)}')
        for bands in self.details:
            if len(bands) != 3 or len({band.shape for band in bands}) != 1:
                raise ShapeError('Each level needs three detail bands of equal shape')

    @property
    def finest_diagonal(self) -> np.ndarray:
        return self.details[-1][2]

    def to_coeffs(self) -> list:
        return [self.approx] + [tuple(bands) for bands in self.details]

    def map_details(self, fn) -> 'WaveletPyramid':
        return WaveletPyramid(
            levels=self.levels,
            approx=self.approx.copy(),
            details=[tuple(fn(band) for band in bands) for bands in self.details],
            original_shape=self.original_shape,
        )

    def detail_energy(self) -> float:
        return float(sum(np.sum(band ** 2) for bands in self.details for band in bands))

    def __repr__(self):
        return f'<WaveletPyramid levels={self.levels} shape={self.original_shape}>'
