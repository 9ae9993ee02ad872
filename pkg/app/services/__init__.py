from app.services.hadamard_service import HadamardService
from app.services.sampler_service import SamplerService
from app.services.info_service import InfoService
from app.services.wavelet_service import WaveletService
from app.services.simulation_service import SimulationService
from app.services.reconstruction_service import ReconstructionService
from app.services.storage_service import StorageService
from app.services.plot_service import PlotService
from app.services.experiment_service import ExperimentService

__all__ = [
    'HadamardService',
    'SamplerService',
    'InfoService',
    'WaveletService',
    'SimulationService',
    'ReconstructionService',
    'StorageService',
    'PlotService',
    'ExperimentService',
]
