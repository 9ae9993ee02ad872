"""
Simulation Service
Synthetic double-Gaussian bi-photon distributions, photon-counting acquisition
through binary SLM pattern pairs, and acquisition-time estimates
"""

import numpy as np

from app.errors import ShapeError, ValidationError
from app.models import JointDistribution, JointSampler, MeasurementRecord, OpticalParams
from app.services.info_service import InfoService
from app.services.sampler_service import SamplerService
from app.utils.decorators import log_execution_time
from app.utils.logger import get_logger
from app.utils.random import make_generator, COUNTING_STREAM

logger = get_logger(__name__)

# measurement indices sharing one counting substream
COUNTING_BLOCK = 1024

# (signal sign, idler sign, weight in y) per channel
CHANNELS = {
    'pp': (1, 1, 1),
    'mm': (-1, -1, 1),
    'pm': (1, -1, -1),
    'mp': (-1, 1, -1),
}


class SimulationService:
    """Forward model of the coincidence-counting experiment"""

    @staticmethod
    def double_gaussian_joint(
            side: int,
            sigma_plus: float,
            sigma_minus: float,
            pixel_pitch: float = 1.0
    ) -> JointDistribution:
        """
        Double-Gaussian joint distribution on two side x side grids

        Per transverse axis p(u_S, u_I) ~ exp(-(u_S+u_I)^2 / 4 sigma_plus^2) exp(-(u_S-u_I)^2 / 4 sigma_minus^2),
        sampled at pixel centres of a grid centred on the optical axis; the two
        axes multiply.

        Args:
            side: Pixels per axis
            sigma_plus: Width along u_S + u_I (same unit as pixel_pitch)
            sigma_minus: Correlation width along u_S - u_I
            pixel_pitch: Pixel size

        Returns:
            Normalized JointDistribution
        """
        if side < 2:
            raise ValidationError(f'side must be at least 2, got {side}')
        if not sigma_minus > 0 or not pixel_pitch > 0:
            raise ValidationError('Gaussian widths and pixel pitch must be positive')
        if sigma_plus < sigma_minus:
            raise ValidationError('sigma_plus must not be smaller than sigma_minus')

        u = (np.arange(side) - (side - 1) / 2.0) * pixel_pitch
        u_S, u_I = np.meshgrid(u, u, indexing='ij')
        axis = np.exp(-(u_S + u_I) ** 2 / (4.0 * sigma_plus ** 2) - (u_S - u_I) ** 2 / (4.0 * sigma_minus ** 2))

        # joint[row_S, col_S, row_I, col_I] = axis[row_S, row_I] * axis[col_S, col_I]
        joint = np.einsum('ac,bd->abcd', axis, axis).reshape(side ** 4)
        return JointDistribution.normalized(side, joint)

    @staticmethod
    @log_execution_time
    def simulate_measurement(
            x_true: JointDistribution,
            sampler: JointSampler,
            params: OpticalParams,
            seed: int,
            noise: bool = True,
            accidental_rate: float = 0.0
    ) -> MeasurementRecord:
        """
        Acquire the four pattern-pair projections of every joint row

        With P+ = (1 + P)/2 and |P-| = (1 - P)/2, each channel's mean is
        Phi t / 4 * (1 + a P_S.m_S + b P_I.m_I + a b (A x)_i) for signs (a, b), so the
        signed sum pp + mm - pm - mp has mean Phi t (A x)_i.

        Args:
            x_true: Ground-truth joint distribution
            sampler: Joint sampling plan
            params: Flux and per-pattern-pair integration time
            seed: Counting seed (independent from the sampler seed)
            noise: Poisson counting when True, expected counts otherwise
            accidental_rate: Additive accidental coincidences per second

        Returns:
            MeasurementRecord
        """
        if x_true.N != sampler.N:
            raise ShapeError(f'Distribution has N={x_true.N} but sampler has N={sampler.N}')
        if accidental_rate < 0:
            raise ValidationError('accidental_rate must be non-negative')

        exposure = params.flux * params.t_proj
        m_S, m_I = InfoService.marginals(x_true)
        total = x_true.values.sum()
        s_S = SamplerService.apply_subspace_A(sampler.signal, m_S)
        s_I = SamplerService.apply_subspace_A(sampler.idler, m_I)
        joint = SamplerService.apply_A(sampler, x_true.values)

        means = {}
        for name, (a, b, _) in CHANNELS.items():
            mean = exposure / 4.0 * (total + a * s_S + b * s_I + a * b * joint) + accidental_rate * params.t_proj
            means[name] = np.maximum(mean, 0.0)
        # each detector sees P+ in two of the four frames
        singles_means = {
            'S_plus': np.maximum(exposure * (total + s_S), 0.0),
            'S_minus': np.maximum(exposure * (total - s_S), 0.0),
            'I_plus': np.maximum(exposure * (total + s_I), 0.0),
            'I_minus': np.maximum(exposure * (total - s_I), 0.0),
        }

        if noise:
            counts = SimulationService._poisson_blocks({**means, **singles_means}, seed)
        else:
            counts = {**means, **singles_means}

        y = counts['pp'] + counts['mm'] - counts['pm'] - counts['mp']
        record = MeasurementRecord(
            y=np.asarray(y, dtype=np.float64),
            counts_pp=counts['pp'],
            counts_mm=counts['mm'],
            counts_pm=counts['pm'],
            counts_mp=counts['mp'],
            sampler=sampler,
            params=params,
            singles_S=counts['S_plus'] + counts['S_minus'],
            singles_I=counts['I_plus'] + counts['I_minus'],
            singles_S_plus=counts['S_plus'],
            singles_I_plus=counts['I_plus'],
        )
        logger.info(f'Simulated {sampler.M} projections ({"poisson" if noise else "noiseless"}), '
                    f'{float(record.total_counts.sum()):.6g} coincidences')
        return record

    @staticmethod
    def _poisson_blocks(means: dict, seed: int) -> dict:
        """Poisson draws from substreams keyed by (seed, index block); independent of evaluation order."""
        M = next(iter(means.values())).size
        counts = {name: np.empty(M, dtype=np.int64) for name in means}
        for block, start in enumerate(range(0, M, COUNTING_BLOCK)):
            stop = min(start + COUNTING_BLOCK, M)
            rng = make_generator(seed, COUNTING_STREAM, block)
            for name in means:
                counts[name][start:stop] = rng.poisson(means[name][start:stop])
        return counts

    @staticmethod
    def estimate_raster_time(N: int, snr: float, flux: float) -> float:
        """Shot-noise limited raster scan of the N^2 joint space: N^3 SNR^2 / Phi seconds."""
        if N <= 0 or snr <= 0 or flux <= 0:
            raise ValidationError('N, snr and flux must be positive')
        return float(N) ** 3 * snr ** 2 / flux

    @staticmethod
    def estimate_cs_time(M: int, t_per_element: float) -> float:
        """Compressive acquisition: M projections at t_per_element seconds each (all four pattern pairs)."""
        if M < 0 or t_per_element < 0:
            raise ValidationError('M and t_per_element must be non-negative')
        return M * t_per_element

    @staticmethod
    def raster_snr(N: int, flux: float, t_pixel: float) -> float:
        """SNR = sqrt(Phi t / N) of a raster scan with perfect pixel correlations."""
        if N <= 0 or flux < 0 or t_pixel < 0:
            raise ValidationError('N must be positive; flux and t_pixel non-negative')
        return float(np.sqrt(flux * t_pixel / N))

    @staticmethod
    def projection_noise_ratio(record: MeasurementRecord) -> float:
        """Spread of y across projections relative to the shot noise of one projection."""
        shot = np.sqrt(np.mean(record.total_counts))
        if shot == 0:
            return 0.0
        return float(np.std(record.y) / shot)

    @staticmethod
    def flux_for_noise_ratio(x_true: JointDistribution, sampler: JointSampler, target_ratio: float,
                             t_proj: float) -> float:
        """
        Flux placing a simulation at a given projection-spread to shot-noise ratio.

        y has spread Phi t std(A x) and shot noise sqrt(Phi t), so the ratio is
        sqrt(Phi t) std(A x).
        """
        if target_ratio <= 0 or t_proj <= 0:
            raise ValidationError('target_ratio and t_proj must be positive')
        spread = float(np.std(SamplerService.apply_A(sampler, x_true.values)))
        if spread == 0:
            raise ValidationError('Distribution is invisible to this sampler (A x is constant)')
        return (target_ratio / spread) ** 2 / t_proj
