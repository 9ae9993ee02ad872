"""
Info Service
Mutual information, marginals, Schmidt number and the double-Gaussian theoretical bound
"""

import math
from typing import Optional, Tuple, Union

import numpy as np

from app.errors import ValidationError, NumericalError
from app.models import InfoReport, JointDistribution, OpticalParams

NORMALIZATION_TOLERANCE = 1e-9

JointLike = Union[JointDistribution, np.ndarray]


class InfoService:
    """Information-theoretic figures of merit for joint distributions (bits throughout)"""

    @staticmethod
    def joint_image(x: JointLike) -> np.ndarray:
        if isinstance(x, JointDistribution):
            return x.image
        values = np.asarray(x, dtype=np.float64)
        N = math.isqrt(values.size)
        if N * N != values.size:
            raise ValidationError(f'Joint vector length {values.size} is not a perfect square')
        return values.reshape(N, N)

    @staticmethod
    def marginals(x: JointLike) -> Tuple[np.ndarray, np.ndarray]:
        """p_S[i] = sum_j x[N i + j]; p_I[j] = sum_i x[N i + j]."""
        image = InfoService.joint_image(x)
        return image.sum(axis=1), image.sum(axis=0)

    @staticmethod
    def mutual_information(x: JointLike) -> float:
        """
        I = sum p(s,i) log2(p(s,i) / (p(s) p(i))) over stored nonzero entries

        Args:
            x: Normalized nonnegative joint distribution

        Returns:
            Mutual information in bits
        """
        image = InfoService.joint_image(x)
        total = image.sum()
        if abs(total - 1.0) > NORMALIZATION_TOLERANCE:
            raise ValidationError(f'Mutual information needs a normalized distribution, sum is {total:.12g}')
        if image.min() < 0:
            raise ValidationError('Mutual information needs a nonnegative distribution')

        p_S, p_I = image.sum(axis=1), image.sum(axis=0)
        rows, cols = np.nonzero(image)
        joint = image[rows, cols]
        product = p_S[rows] * p_I[cols]
        if np.any(product <= 0):
            raise NumericalError('Joint mass found where a marginal vanishes')
        information = float(np.sum(joint * np.log2(joint / product)))
        # rounding can leave a product distribution at -1e-16
        return max(information, 0.0)

    @staticmethod
    def entropy(p) -> float:
        """Shannon entropy in bits, 0 log 0 = 0."""
        p = np.asarray(p, dtype=np.float64)
        nz = p[p > 0]
        return float(-np.sum(nz * np.log2(nz)))

    @staticmethod
    def schmidt_number(mi_bits: float) -> float:
        """Effective number of correlated mode pairs, 2**I."""
        if mi_bits < 0:
            raise ValidationError('Mutual information cannot be negative')
        return float(2.0 ** mi_bits)

    @staticmethod
    def theoretical_max_mi(params: OpticalParams, transverse_dims: int = 2) -> float:
        """
        Position-domain MI of a double-Gaussian SPDC state:

            log2((9 pi sigma_p^2 + L_z lambda_p) / (2 sigma_p sqrt(9 pi L_z lambda_p)))

        doubled for a pump that is Gaussian in both transverse dimensions.
        """
        if transverse_dims not in (1, 2):
            raise ValidationError('transverse_dims must be 1 or 2')
        sigma, length, wavelength = params.sigma_p, params.L_z, params.lambda_p
        numerator = 9.0 * math.pi * sigma ** 2 + length * wavelength
        denominator = 2.0 * sigma * math.sqrt(9.0 * math.pi * length * wavelength)
        return transverse_dims * math.log2(numerator / denominator)

    @staticmethod
    def pump_sigma_from_diameter(diameter: float) -> float:
        """A Gaussian intensity profile's 1/e^2 diameter spans four standard deviations."""
        if diameter <= 0:
            raise ValidationError('Pump diameter must be positive')
        return diameter / 4.0

    @staticmethod
    def report(x: JointLike, params: Optional[OpticalParams] = None, transverse_dims: int = 2) -> InfoReport:
        mi = InfoService.mutual_information(x)
        p_S, p_I = InfoService.marginals(x)
        return InfoReport(
            mutual_information_bits=mi,
            schmidt_number=InfoService.schmidt_number(mi),
            marginal_S=p_S,
            marginal_I=p_I,
            theoretical_max_bits=InfoService.theoretical_max_mi(params, transverse_dims) if params else None,
            entropy_S_bits=InfoService.entropy(p_S),
            entropy_I_bits=InfoService.entropy(p_I),
        )
