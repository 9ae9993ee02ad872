from dataclasses import dataclass, field
from functools import cached_property

import numpy as np


def _frozen(values, dtype=np.int64) -> np.ndarray:
    array = np.array(values, dtype=dtype)
    array.setflags(write=False)
    return array


@dataclass(frozen=True, eq=False)
class SignSplitRow:
    """Binary (0/1) halves of a ±1 pattern: row = positive - negative."""
    positive: np.ndarray
    negative: np.ndarray

    def to_dict(self):
        return {
            'positive': self.positive.tolist(),
            'negative': self.negative.tolist(),
        }


@dataclass(frozen=True, eq=False)
class SubspaceSampler:
    """
    One particle's randomized-Hadamard measurement plan.

    r, p and q are 1-based, as persisted; the 0-based views used for
    indexing are cached on first access.
    """
    N: int
    M: int
    r: np.ndarray
    p: np.ndarray
    q: np.ndarray
    seed: int = 0

    def __post_init__(self):
        object.__setattr__(self, 'r', _frozen(self.r))
        object.__setattr__(self, 'p', _frozen(self.p))
        object.__setattr__(self, 'q', _frozen(self.q))

    @cached_property
    def rows(self) -> np.ndarray:
        return self.r - 1

    @cached_property
    def perm(self) -> np.ndarray:
        return self.p - 1

    @cached_property
    def inv_perm(self) -> np.ndarray:
        return self.q - 1

    @property
    def side(self) -> int:
        return int(round(self.N ** 0.5))

    def to_dict(self):
        return {
            'N': self.N,
            'M': self.M,
            'seed': self.seed,
            'r': self.r.tolist(),
            'p': self.p.tolist(),
        }

    def __repr__(self):
        return f'<SubspaceSampler N={self.N} M={self.M} seed={self.seed}>'


@dataclass(frozen=True, eq=False)
class JointSampler:
    """Joint-space plan lifted from a signal and an idler SubspaceSampler (post-dedup)."""
    N: int
    M: int
    r_SI: np.ndarray
    p_SI: np.ndarray
    q_SI: np.ndarray
    signal: SubspaceSampler
    idler: SubspaceSampler
    dropped: int = field(default=0)

    def __post_init__(self):
        object.__setattr__(self, 'r_SI', _frozen(self.r_SI))
        object.__setattr__(self, 'p_SI', _frozen(self.p_SI))
        object.__setattr__(self, 'q_SI', _frozen(self.q_SI))

    @cached_property
    def rows(self) -> np.ndarray:
        return self.r_SI - 1

    @cached_property
    def perm(self) -> np.ndarray:
        return self.p_SI - 1

    @cached_property
    def inv_perm(self) -> np.ndarray:
        return self.q_SI - 1

    @property
    def dimension(self) -> int:
        return self.N * self.N

    @property
    def seed(self) -> int:
        return self.signal.seed

    def to_dict(self):
        return {
            'N': self.N,
            'M': self.M,
            'dropped': self.dropped,
            'seed': self.seed,
        }

    def __repr__(self):
        return f'<JointSampler N={self.N} M={self.M} dropped={self.dropped}>'
