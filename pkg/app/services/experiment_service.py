"""
Experiment Service
Orchestrates simulate -> reconstruct -> analyze runs for the command line
"""

from dataclasses import dataclass
from typing import Dict, Iterable, List, Optional, Tuple

import numpy as np

from app.models import (
    ExperimentConfig,
    JointDistribution,
    MarginalMask,
    MarginalReconstruction,
    MeasurementRecord,
    ReconstructionResult,
)
from app.services.info_service import InfoService
from app.services.reconstruction_service import ReconstructionService
from app.services.sampler_service import SamplerService
from app.services.simulation_service import SimulationService
from app.utils.logger import get_logger

logger = get_logger(__name__)


@dataclass(frozen=True)
class SweepRow:
    measurements: int
    runs: int
    median_mi_unmasked: float
    median_mi_masked: float
    true_mi: float

    def to_dict(self):
        return {
            'measurements': self.measurements,
            'runs': self.runs,
            'median_mi_unmasked': self.median_mi_unmasked,
            'median_mi_masked': self.median_mi_masked,
            'true_mi': self.true_mi,
        }


@dataclass(frozen=True, eq=False)
class MaskedRun:
    result: ReconstructionResult
    mask: Optional[MarginalMask] = None
    marginal_S: Optional[MarginalReconstruction] = None
    marginal_I: Optional[MarginalReconstruction] = None


class ExperimentService:
    """Service for end-to-end experiment runs"""

    @staticmethod
    def ground_truth(config: ExperimentConfig) -> JointDistribution:
        return SimulationService.double_gaussian_joint(
            config.side, config.sigma_plus, config.sigma_minus, config.pixel_pitch)

    @staticmethod
    def run_simulation(
            config: ExperimentConfig,
            x_true: Optional[JointDistribution] = None,
            measurements: Optional[int] = None,
            seed: Optional[int] = None
    ) -> Tuple[JointDistribution, MeasurementRecord]:
        """
        Draw a sampler and simulate a photon-counting record

        The sampler uses `seed`; the counting noise uses seed + 1 so the two
        never share a stream.
        """
        seed = config.seed if seed is None else seed
        x_true = x_true if x_true is not None else ExperimentService.ground_truth(config)
        sampler = SamplerService.generate_joint_sampler(
            config.N, measurements or config.measurements, seed, config.include_first_row, config.distinct_rows)
        record = SimulationService.simulate_measurement(
            x_true, sampler, config.optical, ExperimentService.counting_seed(seed),
            noise=True, accidental_rate=config.accidental_rate)
        return x_true, record

    @staticmethod
    def counting_seed(seed: int) -> int:
        return (int(seed) + 1) % 2 ** 64

    @staticmethod
    def run_reconstruction(record: MeasurementRecord, config: ExperimentConfig,
                           use_marginals: Optional[bool] = None) -> MaskedRun:
        """Reconstruct a record, optionally constrained by masks from the singles marginals (None defers to the config)."""
        schedule = config.reconstruction
        if use_marginals is None:
            use_marginals = schedule.use_marginal_mask
        if not use_marginals:
            return MaskedRun(result=ReconstructionService.reconstruct(record, schedule))

        plus_S, minus_S = record.singles_pair('S')
        plus_I, minus_I = record.singles_pair('I')
        marginal_S = ReconstructionService.reconstruct_marginal(plus_S, minus_S, record.sampler.signal, schedule)
        marginal_I = ReconstructionService.reconstruct_marginal(plus_I, minus_I, record.sampler.idler, schedule)
        mask = ReconstructionService.build_marginal_mask(marginal_S.marginal, marginal_I.marginal)
        result = ReconstructionService.reconstruct(record, schedule, mask)
        return MaskedRun(result=result, mask=mask, marginal_S=marginal_S, marginal_I=marginal_I)

    @staticmethod
    def sweep(config: ExperimentConfig, measurement_counts: Iterable[int], seeds: Iterable[int]) -> List[SweepRow]:
        """
        MI against measurement count, masked and unmasked, with per-M medians over seeds

        Args:
            config: Shared parameters (ground truth, optics, schedule)
            measurement_counts: Values of M to test
            seeds: One run per seed at every M

        Returns:
            One SweepRow per M
        """
        x_true = ExperimentService.ground_truth(config)
        true_mi = InfoService.mutual_information(x_true)
        seeds = list(seeds)
        rows = []
        for M in measurement_counts:
            results: Dict[str, List[float]] = {'unmasked': [], 'masked': []}
            for seed in seeds:
                _, record = ExperimentService.run_simulation(config, x_true, measurements=M, seed=seed)
                results['unmasked'].append(
                    ExperimentService.run_reconstruction(record, config, False).result.mutual_information)
                results['masked'].append(
                    ExperimentService.run_reconstruction(record, config, True).result.mutual_information)
            row = SweepRow(
                measurements=int(M),
                runs=len(seeds),
                median_mi_unmasked=float(np.median(results['unmasked'])),
                median_mi_masked=float(np.median(results['masked'])),
                true_mi=true_mi,
            )
            logger.info(f'Sweep M={M}: unmasked {row.median_mi_unmasked:.3f} bits, '
                        f'masked {row.median_mi_masked:.3f} bits (truth {true_mi:.3f})')
            rows.append(row)
        return rows
