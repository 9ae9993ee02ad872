from app.models.sampler import SignSplitRow, SubspaceSampler, JointSampler
from app.models.distribution import JointDistribution, OpticalParams
from app.models.measurement import MeasurementRecord
from app.models.reconstruction import (
    ReconstructionConfig,
    MarginalMask,
    IterationRecord,
    ReconstructionResult,
    MarginalReconstruction,
    StopReason,
    UpdateStep,
)
from app.models.wavelet import WaveletPyramid
from app.models.info_report import InfoReport
from app.models.experiment import ExperimentConfig

__all__ = [
    'SignSplitRow', 'SubspaceSampler', 'JointSampler',
    'JointDistribution', 'OpticalParams',
    'MeasurementRecord',
    'ReconstructionConfig', 'MarginalMask', 'IterationRecord', 'ReconstructionResult', 'MarginalReconstruction', 'StopReason',
    'UpdateStep',
    'WaveletPyramid',
    'InfoReport',
    'ExperimentConfig',
]
