from dataclasses import dataclass

import numpy as np

from app.errors import ValidationError, ShapeError

NORMALIZATION_TOLERANCE = 1e-9


@dataclass(frozen=True, eq=False)
class JointDistribution:
    """
    Bi-photon joint probability distribution over two side x side pixel grids.

    values is indexed joint-row-major: values[N * i_S + i_I] (0-based), N = side**2.
    """
    side: int
    values: np.ndarray

    def __post_init__(self):
        values = np.array(self.values, dtype=np.float64)
        if values.ndim != 1 or values.size != self.side ** 4:
            raise ShapeError(f'Joint distribution of side {self.side} needs {self.side ** 4} values, got shape {values.shape}')
        if not np.all(np.isfinite(values)):
            raise ValidationError('Joint distribution contains non-finite values')
        if values.min() < 0:
            raise ValidationError('Joint distribution contains negative values')
        total = values.sum()
        if abs(total - 1.0) > NORMALIZATION_TOLERANCE:
            raise ValidationError(f'Joint distribution must sum to 1, sums to {total:.12g}')
        values.setflags(write=False)
        object.__setattr__(self, 'values', values)

    @classmethod
    def normalized(cls, side: int, values) -> 'JointDistribution':
        values = np.asarray(values, dtype=np.float64)
        total = values.sum()
        if total <= 0:
            raise ValidationError('Cannot normalize a distribution with no mass')
        return cls(side=side, values=values / total)

    @property
    def N(self) -> int:
        return self.side * self.side

    @property
    def image(self) -> np.ndarray:
        """N x N joint image: rows index the signal pixel, columns the idler pixel."""
        return self.values.reshape(self.N, self.N)

    def to_dict(self):
        return {
            'side': self.side,
            'N': self.N,
            'nonzero': int(np.count_nonzero(self.values)),
            'max': float(self.values.max()),
        }

    def __repr__(self):
        return f'<JointDistribution side={self.side} N={self.N}>'


@dataclass(frozen=True)
class OpticalParams:
    """Source and acquisition parameters (SI units; flux in coincidences/s)."""
    lambda_p: float = 325e-9
    L_z: float = 1e-3
    sigma_p: float = 3e-4
    flux: float = 1.6e4
    t_proj: float = 2.0

    def __post_init__(self):
        for name in ('lambda_p', 'L_z', 'sigma_p', 't_proj'):
            if not getattr(self, name) > 0:
                raise ValidationError(f'{name} must be strictly positive')
        # zero flux is admitted: it describes a dark acquisition
        if self.flux < 0:
            raise ValidationError('flux must be non-negative')

    def as_tuple(self):
        return (self.lambda_p, self.L_z, self.sigma_p, self.flux, self.t_proj)

    def to_dict(self):
        return {
            'lambda_p': self.lambda_p,
            'L_z': self.L_z,
            'sigma_p': self.sigma_p,
            'flux': self.flux,
            't_proj': self.t_proj,
        }
