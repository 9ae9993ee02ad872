from dataclasses import dataclass
from typing import Optional

import numpy as np


@dataclass(frozen=True, eq=False)
class InfoReport:
    mutual_information_bits: float
    schmidt_number: float
    marginal_S: np.ndarray
    marginal_I: np.ndarray
    theoretical_max_bits: Optional[float] = None
    entropy_S_bits: Optional[float] = None
    entropy_I_bits: Optional[float] = None

    @property
    def N(self) -> int:
        return self.marginal_S.size

    def to_dict(self):
        return {
            'mutual_information_bits': self.mutual_information_bits,
            'schmidt_number': self.schmidt_number,
            'theoretical_max_bits': self.theoretical_max_bits,
            'entropy_S_bits': self.entropy_S_bits,
            'entropy_I_bits': self.entropy_I_bits,
            'N': self.N,
            'marginal_S_peak': int(np.argmax(self.marginal_S)) + 1,
            'marginal_I_peak': int(np.argmax(self.marginal_I)) + 1,
            'marginal_S_max': float(self.marginal_S.max()),
            'marginal_I_max': float(self.marginal_I.max()),
        }
