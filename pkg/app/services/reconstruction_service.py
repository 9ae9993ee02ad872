"""
Reconstruction Service
Iterative thresholding recovery of joint and marginal distributions:
wavelet shrinkage of the back-projected residual, an entry-wise gated update,
and a rising hard threshold with renormalization.
"""

import math
from typing import Callable, List, Optional, Tuple, Union

import numpy as np

from app.errors import ShapeError, ThresholdOvershoot, ValidationError
from app.models import (
    IterationRecord,
    JointDistribution,
    JointSampler,
    MarginalMask,
    MarginalReconstruction,
    MeasurementRecord,
    ReconstructionConfig,
    ReconstructionResult,
    StopReason,
    SubspaceSampler,
    UpdateStep,
)
from app.services.hadamard_service import HadamardService
from app.services.info_service import InfoService
from app.services.sampler_service import SamplerService
from app.services.wavelet_service import WaveletService
from app.utils.decorators import log_execution_time
from app.utils.logger import get_logger

logger = get_logger(__name__)

# 1/e^2 intensity cut for the marginal support
SUPPORT_FRACTION = math.exp(-2.0)

# step halvings tried before accepting a worse fit
MAX_HALVINGS = 5

MaskLike = Union[MarginalMask, np.ndarray, None]


class ReconstructionService:
    """Recovers distributions from Hadamard projections without forming A"""

    @staticmethod
    def eta1(v, levels: int = 2) -> np.ndarray:
        """
        Wavelet soft-threshold denoiser on the square image behind v

        Args:
            v: Vector of length side^2, side a power of two
            levels: Requested depth, clamped to what the image supports

        Returns:
            Denoised vector, same length
        """
        v = np.asarray(v, dtype=np.float64)
        side = math.isqrt(v.size)
        if v.ndim != 1 or side * side != v.size or not HadamardService.is_power_of_two(side):
            raise ShapeError(f'Vector of length {v.size} is not a dyadic square image')

        depth = min(levels, WaveletService.max_levels((side, side)))
        if depth < 1:
            return v.copy()

        pyramid = WaveletService.dwt2(v.reshape(side, side), levels=depth)
        return WaveletService.idwt2(WaveletService.universal_soft_threshold(pyramid)).ravel()

    @staticmethod
    def eta2(v, threshold: float, mask: MaskLike = None) -> np.ndarray:
        """
        Hard threshold, clip negatives, apply the support mask and renormalize.

        Raises:
            ThresholdOvershoot: nothing survived; ``fallback`` is uniform over the mask support
        """
        v = np.asarray(v, dtype=np.float64)
        if not np.all(np.isfinite(v)):
            raise ValidationError('Cannot threshold a vector with non-finite entries')
        if threshold < 0:
            raise ValidationError('Hard threshold must be non-negative')

        support = ReconstructionService._support(mask, v.size)
        kept = np.where((v >= threshold) & (v > 0), v, 0.0)
        if support is not None:
            kept[~support] = 0.0

        total = kept.sum()
        if total <= 0:
            fallback = np.ones(v.size) if support is None else support.astype(np.float64)
            raise ThresholdOvershoot(
                f'Hard threshold {threshold:.6g} removed every entry',
                fallback=fallback / fallback.sum(),
            )
        return kept / total

    @staticmethod
    def iterate(
            x_t,
            y,
            sampler: Union[JointSampler, SubspaceSampler],
            threshold_fraction: float,
            mask: MaskLike = None,
            levels: int = 2,
            projection: Optional[np.ndarray] = None
    ) -> np.ndarray:
        """
        One update x_{t+1} = eta2[x_t * eta1[A^T (y - A x_t)] + x_t - min(x_t)]

        Args:
            x_t: Current estimate (joint or marginal vector)
            y: Normalized measurements
            sampler: Plan defining A
            threshold_fraction: Hard threshold as a fraction of the update's maximum
            mask: Optional support
            levels: Wavelet depth
            projection: A x_t when the caller already has it

        Returns:
            Normalized next estimate
        """
        return ReconstructionService._step(x_t, y, sampler, threshold_fraction, mask, levels, projection).estimate

    @staticmethod
    def _step(x_t, y, sampler, threshold_fraction: float, mask: MaskLike, levels: int,
              projection: Optional[np.ndarray]) -> UpdateStep:
        """
        The gated term is centred on its x_t-weighted mean so it carries no net
        probability, and its length comes from an exact line search on
        ||y - A u||. A step whose thresholded result fits worse than x_t is
        halved up to MAX_HALVINGS times. From the constant start the gated term
        is all that survives, so it is used as is.
        """
        x_t = np.asarray(x_t, dtype=np.float64)
        y = np.asarray(y, dtype=np.float64)
        if projection is None:
            projection = SamplerService.forward(sampler, x_t)
        residual = y - projection
        filtered = ReconstructionService.eta1(SamplerService.adjoint(sampler, residual), levels)

        floor = float(x_t.min())
        base = x_t - floor
        if not base.any():
            return ReconstructionService._threshold(x_t * filtered, y, sampler, threshold_fraction, mask, 1.0)

        direction = x_t * (filtered - float(x_t @ filtered) / float(x_t.sum()))
        moved = SamplerService.forward(sampler, direction)
        energy = float(moved @ moved)
        offset = residual if floor == 0 else y - SamplerService.forward(sampler, base)
        step = max(float(offset @ moved) / energy, 0.0) if energy > 0 else 0.0

        current = float(np.linalg.norm(residual))
        best = None
        for _ in range(MAX_HALVINGS + 1):
            candidate = ReconstructionService._threshold(
                base + step * direction, y, sampler, threshold_fraction, mask, step)
            if best is None or candidate.fit < best.fit:
                best = candidate
            if candidate.fit <= current or step == 0:
                break
            step *= 0.5
        return best

    @staticmethod
    def _threshold(update, y, sampler, threshold_fraction: float, mask: MaskLike, step: float) -> UpdateStep:
        support = ReconstructionService._support(mask, update.size)
        admitted = update if support is None else update[support]
        threshold = threshold_fraction * max(float(admitted.max()), 0.0)
        estimate = ReconstructionService.eta2(update, threshold, mask)
        projection = SamplerService.forward(sampler, estimate)
        return UpdateStep(
            estimate=estimate,
            projection=projection,
            threshold=threshold,
            step=step,
            fit=float(np.linalg.norm(y - projection)),
        )

    @staticmethod
    def normalized_measurements(record: MeasurementRecord) -> np.ndarray:
        """y divided by the mean per-projection coincidence total, so it estimates A x."""
        scale = float(np.mean(record.total_counts))
        if scale <= 0:
            raise ValidationError('Record holds no coincidences')
        return np.asarray(record.y, dtype=np.float64) / scale

    @staticmethod
    @log_execution_time
    def reconstruct(
            record: MeasurementRecord,
            config: ReconstructionConfig,
            mask: Optional[MarginalMask] = None
    ) -> ReconstructionResult:
        """
        Iterate until mutual information stops rising; keep the best iterate

        Args:
            record: Coincidence record
            config: Iteration schedule
            mask: Optional support from the marginals

        Returns:
            ReconstructionResult with the argmax-MI distribution and the trace
        """
        sampler = record.sampler
        if mask is not None and mask.N != sampler.N:
            raise ShapeError(f'Mask has N={mask.N} but sampler has N={sampler.N}')
        if mask is not None and mask.effective_dimension == 0:
            raise ValidationError('Mask admits no joint pixel')

        y = ReconstructionService.normalized_measurements(record)
        side = math.isqrt(sampler.N)
        best, trace, best_iteration, reason, truncated = ReconstructionService._run(
            y, sampler, config, mask, score=InfoService.mutual_information, higher_is_better=True)

        logger.info(f'Joint reconstruction stopped ({reason.value}) after {len(trace)} iterations, '
                    f'best iteration {best_iteration}')
        return ReconstructionResult(
            distribution=JointDistribution.normalized(side, best),
            trace=trace,
            best_iteration=best_iteration,
            stop_reason=reason,
            truncated=truncated,
        )

    @staticmethod
    @log_execution_time
    def reconstruct_marginal(
            singles_plus,
            singles_minus,
            sampler: SubspaceSampler,
            config: ReconstructionConfig
    ) -> MarginalReconstruction:
        """
        Recover one detector's marginal from its P+ and |P-| singles.

        The difference plus - minus, divided by the mean of plus + minus,
        estimates the signed projection P m. The same update runs on the
        subspace operator; it stops once the residual stops falling.
        """
        plus = np.asarray(singles_plus, dtype=np.float64)
        minus = np.asarray(singles_minus, dtype=np.float64)
        if plus.shape != (sampler.M,) or minus.shape != (sampler.M,):
            raise ShapeError(f'Singles must have length {sampler.M}')
        scale = float(np.mean(plus + minus))
        if scale <= 0:
            raise ValidationError('Singles hold no counts')

        y = ReconstructionService.marginal_from_singles(plus, minus) / scale
        best, trace, best_iteration, reason, truncated = ReconstructionService._run(
            y, sampler, config, None, score=None, higher_is_better=False)

        logger.info(f'Marginal reconstruction stopped ({reason.value}) after {len(trace)} iterations')
        return MarginalReconstruction(
            marginal=best,
            trace=trace,
            best_iteration=best_iteration,
            stop_reason=reason,
            truncated=truncated,
        )

    @staticmethod
    def marginal_from_singles(singles_plus, singles_minus) -> np.ndarray:
        """Signed projections y_s = plus - minus from one detector's two pattern halves."""
        return np.asarray(singles_plus, dtype=np.float64) - np.asarray(singles_minus, dtype=np.float64)

    @staticmethod
    def build_marginal_mask(marginal_S, marginal_I) -> MarginalMask:
        """Support where each marginal reaches 1/e^2 of its peak."""
        supports = []
        for name, marginal in (('signal', marginal_S), ('idler', marginal_I)):
            marginal = np.asarray(marginal, dtype=np.float64)
            if marginal.min() < 0:
                raise ValidationError(f'{name} marginal has negative entries')
            peak = marginal.max()
            if peak <= 0:
                raise ValidationError(f'{name} marginal is identically zero')
            supports.append(marginal >= peak * SUPPORT_FRACTION)
        mask = MarginalMask(support_S=supports[0], support_I=supports[1])
        logger.info(f'Marginal mask admits {mask.effective_dimension} of {mask.N ** 2} joint pixels')
        return mask

    @staticmethod
    def effective_joint_dimension(mask: MarginalMask) -> int:
        return mask.effective_dimension

    @staticmethod
    def relative_residual(y: np.ndarray, projection: np.ndarray) -> float:
        norm = float(np.linalg.norm(y))
        residual = float(np.linalg.norm(y - projection))
        return residual / norm if norm > 0 else residual

    @staticmethod
    def _support(mask: MaskLike, size: int) -> Optional[np.ndarray]:
        if mask is None:
            return None
        support = mask.joint_mask if isinstance(mask, MarginalMask) else np.asarray(mask, dtype=bool)
        if support.shape != (size,):
            raise ShapeError(f'Mask of shape {support.shape} does not cover {size} entries')
        return support

    @staticmethod
    def _run(
            y: np.ndarray,
            sampler,
            config: ReconstructionConfig,
            mask: MaskLike,
            score: Optional[Callable[[np.ndarray], float]],
            higher_is_better: bool
    ) -> Tuple[np.ndarray, List[IterationRecord], int, StopReason, bool]:
        """
        Shared schedule: threshold_t = t * step * max(u_t) on the update u_t.

        Only iterates whose residual did not rise may become the best. With a
        score (MI) the loop stops once MI no longer rises or the residual rises;
        without one it stops when the residual no longer falls. Both need the
        burn-in.
        """
        length = sampler.dimension if isinstance(sampler, JointSampler) else sampler.N
        side = math.isqrt(length)
        depth = min(config.wavelet_levels, WaveletService.max_levels((side, side)))
        if depth < config.wavelet_levels:
            logger.warning(f'{side}x{side} image supports {depth} wavelet levels, '
                           f'{config.wavelet_levels} requested')

        x = np.full(length, config.start_value(length))
        projection = SamplerService.forward(sampler, x)

        best = None
        best_iteration = 0
        best_value = None
        previous_value = None
        previous_residual = None
        trace: List[IterationRecord] = []

        for t in range(1, config.max_iterations + 1):
            try:
                step = ReconstructionService._step(
                    x, y, sampler, t * config.hard_threshold_step, mask, config.wavelet_levels, projection)
            except ThresholdOvershoot as e:
                logger.warning(f'Threshold overshoot at iteration {t}; returning iteration {best_iteration}')
                return (e.fallback if best is None else best), trace, best_iteration, \
                    StopReason.THRESHOLD_OVERSHOOT, True

            x, projection = step.estimate, step.projection
            residual = ReconstructionService.relative_residual(y, projection)
            information = score(x) if score is not None else None
            trace.append(IterationRecord(
                iteration=t,
                mutual_information=information,
                relative_residual=residual,
                nonzero=int(np.count_nonzero(x)),
                threshold=step.threshold,
            ))
            logger.debug(f'iteration {t}: residual {residual:.4g}, {trace[-1].nonzero} nonzero, '
                         f'threshold {step.threshold:.4g}, step {step.step:.4g}'
                         + ('' if information is None else f', MI {information:.4f} bits'))

            value = information if higher_is_better else residual
            rose = previous_residual is not None and residual > previous_residual
            if not rose and (best_value is None or (value > best_value if higher_is_better else value < best_value)):
                best, best_iteration, best_value = x, t, value

            if t > config.min_iterations and previous_value is not None:
                if higher_is_better and rose:
                    return best, trace, best_iteration, StopReason.RESIDUAL_ROSE, False
                stalled = value <= previous_value if higher_is_better else value >= previous_value
                if stalled:
                    reason = StopReason.MI_PEAKED if higher_is_better else StopReason.RESIDUAL_STALLED
                    return best, trace, best_iteration, reason, False
            previous_value, previous_residual = value, residual

        return best, trace, best_iteration, StopReason.MAX_ITERATIONS, False
