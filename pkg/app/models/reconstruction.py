from dataclasses import dataclass, field
from enum import Enum
from typing import List, Optional

import numpy as np

from app.errors import ValidationError, ShapeError
from app.models.distribution import JointDistribution


class StopReason(str, Enum):
    MI_PEAKED = 'mi_peaked'
    RESIDUAL_ROSE = 'residual_rose'
    RESIDUAL_STALLED = 'residual_stalled'
    MAX_ITERATIONS = 'max_iterations'
    THRESHOLD_OVERSHOOT = 'threshold_overshoot'


@dataclass(frozen=True)
class ReconstructionConfig:
    """Schedule of the iterative thresholding reconstructor."""
    max_iterations: int = 200
    min_iterations: int = 5
    hard_threshold_step: float = 0.01
    initial_constant: Optional[float] = None    # None -> 1/N^2
    wavelet_levels: int = 2
    use_marginal_mask: bool = False

    def __post_init__(self):
        if not 0 < self.hard_threshold_step < 1:
            raise ValidationError('hard_threshold_step must lie in (0, 1)')
        if not self.max_iterations >= self.min_iterations >= 1:
            raise ValidationError('iterations must satisfy max_iterations >= min_iterations >= 1')
        if self.initial_constant is not None and not self.initial_constant > 0:
            raise ValidationError('initial_constant must be positive')
        if self.wavelet_levels < 1:
            raise ValidationError('wavelet_levels must be at least 1')

    def start_value(self, length: int) -> float:
        return self.initial_constant if self.initial_constant is not None else 1.0 / length

    def to_dict(self):
        return {
            'max_iterations': self.max_iterations,
            'min_iterations': self.min_iterations,
            'hard_threshold_step': self.hard_threshold_step,
            'initial_constant': self.initial_constant,
            'wavelet_levels': self.wavelet_levels,
            'use_marginal_mask': self.use_marginal_mask,
        }


@dataclass(frozen=True, eq=False)
class MarginalMask:
    """Support admitted by the singles marginals; joint_mask = outer(support_S, support_I)."""
    support_S: np.ndarray
    support_I: np.ndarray
    joint_mask: np.ndarray = field(default=None)

    def __post_init__(self):
        support_S = np.asarray(self.support_S, dtype=bool)
        support_I = np.asarray(self.support_I, dtype=bool)
        if support_S.ndim != 1 or support_S.shape != support_I.shape:
            raise ShapeError('Signal and idler supports must be vectors of equal length')
        joint = np.outer(support_S, support_I).ravel()
        if self.joint_mask is not None and not np.array_equal(np.asarray(self.joint_mask, dtype=bool), joint):
            raise ValidationError('joint_mask must be the outer product of the subspace supports')
        for name, value in (('support_S', support_S), ('support_I', support_I), ('joint_mask', joint)):
            value.setflags(write=False)
            object.__setattr__(self, name, value)

    @property
    def N(self) -> int:
        return self.support_S.size

    @property
    def effective_dimension(self) -> int:
        return int(self.support_S.sum()) * int(self.support_I.sum())

    def to_dict(self):
        return {
            'N': self.N,
            'support_S': int(self.support_S.sum()),
            'support_I': int(self.support_I.sum()),
            'effective_dimension': self.effective_dimension,
        }


@dataclass(frozen=True)
class IterationRecord:
    iteration: int
    mutual_information: Optional[float]    # None for marginal (single-particle) runs
    relative_residual: float
    nonzero: int
    threshold: float

    def to_dict(self):
        return {
            'iteration': self.iteration,
            'mutual_information': self.mutual_information,
            'relative_residual': self.relative_residual,
            'nonzero': self.nonzero,
            'threshold': self.threshold,
        }


@dataclass(frozen=True, eq=False)
class ReconstructionResult:
    distribution: JointDistribution
    trace: List[IterationRecord]
    best_iteration: int
    stop_reason: StopReason
    truncated: bool = False

    @property
    def mutual_information(self) -> float:
        for record in self.trace:
            if record.iteration == self.best_iteration:
                return record.mutual_information
        return 0.0

    def to_dict(self):
        return {
            'best_iteration': self.best_iteration,
            'iterations': len(self.trace),
            'stop_reason': self.stop_reason.value,
            'truncated': self.truncated,
            'mutual_information': self.mutual_information,
        }

    def __repr__(self):
        return f'<ReconstructionResult best={self.best_iteration} stop={self.stop_reason.value}>'


@dataclass(frozen=True, eq=False)
class MarginalReconstruction:
    """Single-detector result: a length-N marginal recovered from singles counts."""
    marginal: np.ndarray
    trace: List[IterationRecord]
    best_iteration: int
    stop_reason: StopReason
    truncated: bool = False

    @property
    def relative_residual(self) -> Optional[float]:
        for record in self.trace:
            if record.iteration == self.best_iteration:
                return record.relative_residual
        return None

    def to_dict(self):
        return {
            'N': int(self.marginal.size),
            'best_iteration': self.best_iteration,
            'iterations': len(self.trace),
            'stop_reason': self.stop_reason.value,
            'truncated': self.truncated,
        }


@dataclass(frozen=True, eq=False)
class UpdateStep:
    """One thresholded update with its projection A x_{t+1} and the step length used."""
    estimate: np.ndarray
    projection: np.ndarray
    threshold: float
    step: float
    fit: float    # ||y - A x_{t+1}||
