from dataclasses import dataclass

import numpy as np

from app.errors import ShapeError, ValidationError
from app.models.distribution import OpticalParams
from app.models.sampler import JointSampler


@dataclass(frozen=True, eq=False)
class MeasurementRecord:
    """
    Four-channel coincidence record for one joint sampler.

    Channels pp, mm, pm, mp hold counts for the pattern pairs (P+_S, P+_I),
    (|P-_S|, |P-_I|), (P+_S, |P-_I|) and (|P-_S|, P+_I). Singles are per-detector
    totals over the four frames; the *_plus arrays hold the share recorded while
    the detector's SLM showed P+.
    """
    y: np.ndarray
    counts_pp: np.ndarray
    counts_mm: np.ndarray
    counts_pm: np.ndarray
    counts_mp: np.ndarray
    sampler: JointSampler
    params: OpticalParams
    singles_S: np.ndarray
    singles_I: np.ndarray
    singles_S_plus: np.ndarray
    singles_I_plus: np.ndarray

    def __post_init__(self):
        M = self.sampler.M
        for name in ('y', 'counts_pp', 'counts_mm', 'counts_pm', 'counts_mp',
                     'singles_S', 'singles_I', 'singles_S_plus', 'singles_I_plus'):
            array = np.asarray(getattr(self, name))
            if array.shape != (M,):
                raise ShapeError(f'{name} must have length {M}, got shape {array.shape}')
            array = array.copy()
            array.setflags(write=False)
            object.__setattr__(self, name, array)

        combined = self.counts_pp + self.counts_mm - self.counts_pm - self.counts_mp
        if not np.array_equal(np.asarray(combined, dtype=np.float64), np.asarray(self.y, dtype=np.float64)):
            raise ValidationError('y must equal counts_pp + counts_mm - counts_pm - counts_mp')
        if np.any(self.singles_S_plus > self.singles_S) or np.any(self.singles_I_plus > self.singles_I):
            raise ValidationError('P+ singles cannot exceed the detector totals')

    @property
    def M(self) -> int:
        return self.sampler.M

    @property
    def is_integral(self) -> bool:
        """True for photon-counting records; noiseless records hold expected (real) counts."""
        return all(np.issubdtype(getattr(self, name).dtype, np.integer)
                   for name in ('counts_pp', 'counts_mm', 'counts_pm', 'counts_mp', 'singles_S', 'singles_I'))

    @property
    def total_counts(self) -> np.ndarray:
        return self.counts_pp + self.counts_mm + self.counts_pm + self.counts_mp

    def singles_pair(self, detector: str):
        """(P+ counts, |P-| counts) for detector 'S' or 'I'."""
        if detector == 'S':
            return self.singles_S_plus, self.singles_S - self.singles_S_plus
        if detector == 'I':
            return self.singles_I_plus, self.singles_I - self.singles_I_plus
        raise ValidationError(f"Detector must be 'S' or 'I', got {detector!r}")

    def to_dict(self):
        return {
            'M': self.M,
            'total_coincidences': float(self.total_counts.sum()),
            'params': self.params.to_dict(),
            'sampler': self.sampler.to_dict(),
        }

    def __repr__(self):
        return f'<MeasurementRecord M={self.M}>'
