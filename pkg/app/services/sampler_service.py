"""
Sampler Service
Randomized-Hadamard measurement plans and the matrix-free operators built on them
"""

from typing import Optional

import numpy as np

from app.errors import LengthError, RowIndexError, ShapeError, ValidationError
from app.models import JointSampler, SignSplitRow, SubspaceSampler
from app.providers.base import SparseBasis
from app.services.hadamard_service import HadamardService
from app.utils.logger import get_logger
from app.utils.random import make_generator, SIGNAL_STREAM, IDLER_STREAM

logger = get_logger(__name__)


class SamplerService:
    """Builds sampling plans and applies A = H_{N^2}[r_SI, p_SI] without materializing it"""

    @staticmethod
    def generate_subspace_sampler(
            N: int,
            M: int,
            seed: int,
            stream: int = SIGNAL_STREAM,
            include_first_row: bool = False
    ) -> SubspaceSampler:
        """
        Draw a subspace plan.

        Args:
            N: Subspace dimension (power of two)
            M: Number of patterns; M > N repeats rows
            seed: Unsigned 64-bit seed
            stream: Stream label separating signal and idler draws under one seed
            include_first_row: Admit the all-ones row 1 (total-flux projections)

        Returns:
            SubspaceSampler with r uniform on [2, N] (or [1, N]) and p a uniform permutation
        """
        if N < 2 or not HadamardService.is_power_of_two(N):
            raise LengthError(f'Subspace dimension must be a power of two >= 2, got {N}')
        if M < 1:
            raise ValidationError(f'Measurement count must be positive, got {M}')

        rng = make_generator(seed, stream)
        low = 1 if include_first_row else 2
        r = rng.integers(low, N + 1, size=M, dtype=np.int64)
        p = rng.permutation(N).astype(np.int64) + 1
        q = SamplerService.inverse_permutation(p, validate=False)
        return SubspaceSampler(N=N, M=M, r=r, p=p, q=q, seed=int(seed))

    @staticmethod
    def subspace_from_vectors(N: int, r, p, seed: int = 0) -> SubspaceSampler:
        """Rebuild a subspace plan from stored 1-based r and p."""
        if N < 2 or not HadamardService.is_power_of_two(N):
            raise LengthError(f'Subspace dimension must be a power of two >= 2, got {N}')
        r = np.asarray(r, dtype=np.int64)
        p = np.asarray(p, dtype=np.int64)
        if r.ndim != 1 or r.size < 1:
            raise ShapeError('Row-selection vector must be a non-empty vector')
        if p.shape != (N,):
            raise ShapeError(f'Permutation must have length {N}, got shape {p.shape}')
        if r.min() < 1 or r.max() > N:
            raise RowIndexError(f'Row indices must lie in [1, {N}]')
        q = SamplerService.inverse_permutation(p)
        return SubspaceSampler(N=N, M=int(r.size), r=r, p=p, q=q, seed=int(seed))

    @staticmethod
    def inverse_permutation(p, validate: bool = True) -> np.ndarray:
        """q[p[i]] = i for a 1-based permutation p."""
        p = np.asarray(p, dtype=np.int64)
        n = p.size
        if validate and not np.array_equal(np.sort(p), np.arange(1, n + 1)):
            raise ValidationError('Vector is not a permutation of 1..n')
        q = np.empty(n, dtype=np.int64)
        q[p - 1] = np.arange(1, n + 1, dtype=np.int64)
        return q

    @staticmethod
    def build_joint(signal: SubspaceSampler, idler: SubspaceSampler) -> JointSampler:
        """
        Lift two subspace plans to the joint space.

        r_SI[i] = N(r_S[i]-1) + r_I[i]; repeated joint rows are dropped, first
        occurrence wins, together with their r_S and r_I entries.
        p_SI[N(i-1)+j] = N(p_S[i]-1) + p_I[j].
        """
        if signal.N != idler.N:
            raise ShapeError(f'Signal and idler dimensions differ ({signal.N} vs {idler.N})')
        if signal.M != idler.M:
            raise ShapeError(f'Signal and idler pattern counts differ ({signal.M} vs {idler.M})')

        N = signal.N
        candidates = N * (signal.r - 1) + idler.r
        _, first = np.unique(candidates, return_index=True)
        keep = np.sort(first)
        dropped = signal.M - keep.size

        if dropped:
            signal = SubspaceSampler(N=N, M=int(keep.size), r=signal.r[keep], p=signal.p, q=signal.q, seed=signal.seed)
            idler = SubspaceSampler(N=N, M=int(keep.size), r=idler.r[keep], p=idler.p, q=idler.q, seed=idler.seed)

        r_SI = candidates[keep]
        p_SI = (N * (signal.p - 1))[:, None] + idler.p[None, :]
        p_SI = p_SI.ravel()
        q_SI = SamplerService.inverse_permutation(p_SI, validate=False)

        logger.info(f'Joint sampler built: N={N}, M={keep.size} ({dropped} duplicate joint rows dropped)')
        return JointSampler(
            N=N,
            M=int(keep.size),
            r_SI=r_SI,
            p_SI=p_SI,
            q_SI=q_SI,
            signal=signal,
            idler=idler,
            dropped=int(dropped),
        )

    @staticmethod
    def generate_joint_sampler(
            N: int,
            M: int,
            seed: int,
            include_first_row: bool = False,
            distinct: bool = False
    ) -> JointSampler:
        """
        Independent signal and idler draws under one seed, lifted and deduplicated.

        M counts requested rows, so the plan may hold fewer after duplicate
        joint rows are dropped. With ``distinct`` the draw is topped up from
        further (seed, stream, round) streams until M distinct joint rows exist.
        """
        signal = SamplerService.generate_subspace_sampler(N, M, seed, SIGNAL_STREAM, include_first_row)
        idler = SamplerService.generate_subspace_sampler(N, M, seed, IDLER_STREAM, include_first_row)
        joint = SamplerService.build_joint(signal, idler)
        if not distinct or joint.M == M:
            return joint

        low = 1 if include_first_row else 2
        available = (N - low + 1) ** 2
        if M > available:
            raise ValidationError(f'Only {available} distinct joint rows exist for N={N}, {M} requested')

        round_ = 0
        while joint.M < M:
            round_ += 1
            missing = M - joint.M
            r_S = np.concatenate([joint.signal.r, make_generator(seed, SIGNAL_STREAM, round_).integers(
                low, N + 1, size=missing, dtype=np.int64)])
            r_I = np.concatenate([joint.idler.r, make_generator(seed, IDLER_STREAM, round_).integers(
                low, N + 1, size=missing, dtype=np.int64)])
            joint = SamplerService.build_joint(
                SubspaceSampler(N=N, M=int(r_S.size), r=r_S, p=signal.p, q=signal.q, seed=signal.seed),
                SubspaceSampler(N=N, M=int(r_I.size), r=r_I, p=idler.p, q=idler.q, seed=idler.seed),
            )
        logger.info(f'Joint sampler topped up to {M} distinct rows in {round_} rounds')
        return joint

    @staticmethod
    def apply_A(sampler: JointSampler, x, sparse_hook: Optional[SparseBasis] = None) -> np.ndarray:
        """
        y = A . Psi^-1[x]

        Inverse-transform out of the sparse basis (when given), reorder by q_SI,
        fast transform, then pick the r_SI entries.
        """
        x = np.asarray(x)
        if x.shape != (sampler.dimension,):
            raise ShapeError(f'Expected a vector of length {sampler.dimension}, got shape {x.shape}')
        if sparse_hook is not None:
            x = sparse_hook.inverse(x)
        transformed = HadamardService.fwht(SamplerService._gather(x, sampler.inv_perm), inplace=True)
        return transformed[sampler.rows]

    @staticmethod
    def apply_At(sampler: JointSampler, y, sparse_hook: Optional[SparseBasis] = None) -> np.ndarray:
        """
        x = Psi[A^T . y], unnormalized

        Scatter y into a null vector at r_SI, fast transform, reorder by p_SI and
        forward-transform into the sparse basis (when given).
        """
        y = np.asarray(y)
        if y.shape != (sampler.M,):
            raise ShapeError(f'Expected a vector of length {sampler.M}, got shape {y.shape}')
        beta = np.zeros(sampler.dimension, dtype=SamplerService._work_dtype(y))
        beta[sampler.rows] = y
        x = HadamardService.fwht(beta, inplace=True)[sampler.perm]
        if sparse_hook is not None:
            x = sparse_hook.forward(x)
        return x

    @staticmethod
    def apply_subspace_A(sampler: SubspaceSampler, m) -> np.ndarray:
        """P . m for one particle, P = H_N[r, p]."""
        m = np.asarray(m)
        if m.shape != (sampler.N,):
            raise ShapeError(f'Expected a vector of length {sampler.N}, got shape {m.shape}')
        return HadamardService.fwht(SamplerService._gather(m, sampler.inv_perm), inplace=True)[sampler.rows]

    @staticmethod
    def apply_subspace_At(sampler: SubspaceSampler, y) -> np.ndarray:
        """P^T . y for one particle; repeated rows accumulate."""
        y = np.asarray(y)
        if y.shape != (sampler.M,):
            raise ShapeError(f'Expected a vector of length {sampler.M}, got shape {y.shape}')
        beta = np.zeros(sampler.N, dtype=SamplerService._work_dtype(y))
        np.add.at(beta, sampler.rows, y)
        return HadamardService.fwht(beta, inplace=True)[sampler.perm]

    @staticmethod
    def forward(sampler, x) -> np.ndarray:
        """Dispatch A.x on a joint or subspace plan."""
        if isinstance(sampler, JointSampler):
            return SamplerService.apply_A(sampler, x)
        return SamplerService.apply_subspace_A(sampler, x)

    @staticmethod
    def adjoint(sampler, y) -> np.ndarray:
        """Dispatch A^T.y on a joint or subspace plan."""
        if isinstance(sampler, JointSampler):
            return SamplerService.apply_At(sampler, y)
        return SamplerService.apply_subspace_At(sampler, y)

    @staticmethod
    def subspace_pattern(sampler: SubspaceSampler, i: int) -> np.ndarray:
        """±1 pattern P[i] = H_N[r[i], p] (1-based i)."""
        if not 1 <= i <= sampler.M:
            raise RowIndexError(f'Measurement index {i} outside [1, {sampler.M}]')
        row = HadamardService.hadamard_row(sampler.N, int(sampler.r[i - 1]))
        return row[sampler.perm]

    @staticmethod
    def subspace_pattern_pair(sampler: SubspaceSampler, i: int) -> SignSplitRow:
        """Binary SLM patterns (P+, |P-|) displayed for measurement i (1-based)."""
        return HadamardService.split_signs(SamplerService.subspace_pattern(sampler, i))

    @staticmethod
    def dense_matrix(sampler: JointSampler) -> np.ndarray:
        """H_{N^2}[r_SI, p_SI] built explicitly (small-instance oracle)."""
        H = HadamardService.hadamard_matrix(sampler.dimension)
        return H[np.ix_(sampler.rows, sampler.perm)]

    @staticmethod
    def rowwise_kron_matrix(sampler: JointSampler) -> np.ndarray:
        """Rows kron(P_S[i], P_I[i]) (small-instance oracle)."""
        return np.stack([
            HadamardService.kron(
                SamplerService.subspace_pattern(sampler.signal, i),
                SamplerService.subspace_pattern(sampler.idler, i),
            )
            for i in range(1, sampler.M + 1)
        ])

    @staticmethod
    def _work_dtype(values: np.ndarray):
        return np.int64 if np.issubdtype(values.dtype, np.integer) else np.float64

    @staticmethod
    def _gather(values: np.ndarray, index: np.ndarray) -> np.ndarray:
        return np.ascontiguousarray(values[index], dtype=SamplerService._work_dtype(values))
