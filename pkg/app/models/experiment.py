from dataclasses import dataclass
from typing import Optional

from app.config import Config
from app.models.distribution import OpticalParams
from app.models.reconstruction import ReconstructionConfig


@dataclass(frozen=True)
class ExperimentConfig:
    """Flat parameter set shared by every command."""
    side: int = 8
    measurements: int = 1000
    seed: int = Config.DEFAULT_SEED
    include_first_row: bool = False
    distinct_rows: bool = False

    lambda_p: float = 325e-9
    L_z: float = 1e-3
    sigma_p: float = 3e-4
    flux: float = 1.6e4
    t_proj: float = 2.0
    accidental_rate: float = 0.0

    sigma_plus: float = 4.0
    sigma_minus: float = 0.75
    pixel_pitch: float = 1.0

    max_iterations: int = Config.RECONSTRUCTION_MAX_ITERATIONS
    min_iterations: int = 5
    hard_threshold_step: float = 0.01
    wavelet_levels: int = 2
    use_marginal_mask: bool = False

    snr: float = 1.0
    out: Optional[str] = None

    @property
    def N(self) -> int:
        return self.side * self.side

    @property
    def optical(self) -> OpticalParams:
        return OpticalParams(
            lambda_p=self.lambda_p,
            L_z=self.L_z,
            sigma_p=self.sigma_p,
            flux=self.flux,
            t_proj=self.t_proj,
        )

    @property
    def reconstruction(self) -> ReconstructionConfig:
        return ReconstructionConfig(
            max_iterations=self.max_iterations,
            min_iterations=self.min_iterations,
            hard_threshold_step=self.hard_threshold_step,
            wavelet_levels=self.wavelet_levels,
            use_marginal_mask=self.use_marginal_mask,
        )
