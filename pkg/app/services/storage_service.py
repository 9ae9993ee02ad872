"""
Storage Service
Little-endian binary persistence for samplers, distributions and measurement
records; tab-separated reconstruction traces; text reports.

All stored index vectors are 1-based.
"""

import os
import struct
from typing import Iterable, List

import numpy as np

from app.config import Config
from app.errors import FileFormatError, StorageError, ValidationError
from app.models import (
    InfoReport,
    IterationRecord,
    JointDistribution,
    JointSampler,
    MeasurementRecord,
    OpticalParams,
)
from app.schemas import InfoReportSchema
from app.services.sampler_service import SamplerService
from app.utils.logger import get_logger

logger = get_logger(__name__)

SAMPLER_MAGIC = b'KFHS'
DISTRIBUTION_MAGIC = b'KFHD'
MEASUREMENT_MAGIC = b'KFHM'

U32_MAX = 2 ** 32 - 1

TRACE_HEADER = ('iteration', 'mutual_information_bits', 'relative_residual', 'nonzero', 'threshold')


class _Reader:
    """Cursor over a byte buffer; every failure reports the offset it happened at."""

    def __init__(self, data: bytes, path: str):
        self.data = data
        self.path = path
        self.offset = 0

    def take(self, size: int, what: str) -> bytes:
        end = self.offset + size
        if end > len(self.data):
            raise FileFormatError(f'{self.path}: truncated while reading {what}', offset=self.offset)
        chunk = self.data[self.offset:end]
        self.offset = end
        return chunk

    def scalar(self, fmt: str, what: str):
        return struct.unpack('<' + fmt, self.take(struct.calcsize(fmt), what))[0]

    def array(self, dtype: str, count: int, what: str) -> np.ndarray:
        size = np.dtype(dtype).itemsize * count
        return np.frombuffer(self.take(size, what), dtype=dtype).copy()

    def header(self, magic: bytes, expected: int = Config.FORMAT_VERSION):
        found = self.take(len(magic), 'magic')
        if found != magic:
            raise FileFormatError(f'{self.path}: bad magic {found!r}, expected {magic!r}', offset=self.offset - len(magic))
        start = self.offset
        version = self.scalar('H', 'format version')
        if version != expected:
            raise FileFormatError(
                f'{self.path}: unsupported format version {version}, expected {expected}', offset=start)

    def finish(self):
        if self.offset != len(self.data):
            raise FileFormatError(f'{self.path}: {len(self.data) - self.offset} trailing bytes', offset=self.offset)


class StorageService:
    """Reads and writes the persisted artifacts"""

    # Sampler block

    @staticmethod
    def encode_sampler(sampler: JointSampler) -> bytes:
        if sampler.N > U32_MAX or sampler.M > U32_MAX:
            raise StorageError('Sampler dimensions exceed the u32 file fields')
        parts = [
            SAMPLER_MAGIC,
            struct.pack('<HIIQ', Config.FORMAT_VERSION, sampler.N, sampler.M, sampler.seed),
            sampler.signal.r.astype('<u4').tobytes(),
            sampler.idler.r.astype('<u4').tobytes(),
            sampler.signal.p.astype('<u4').tobytes(),
            sampler.idler.p.astype('<u4').tobytes(),
        ]
        return b''.join(parts)

    @staticmethod
    def _decode_sampler(reader: _Reader) -> JointSampler:
        reader.header(SAMPLER_MAGIC)
        N = reader.scalar('I', 'N')
        M = reader.scalar('I', 'M')
        seed = reader.scalar('Q', 'seed')
        start = reader.offset
        r_S = reader.array('<u4', M, 'r_S').astype(np.int64)
        r_I = reader.array('<u4', M, 'r_I').astype(np.int64)
        p_S = reader.array('<u4', N, 'p_S').astype(np.int64)
        p_I = reader.array('<u4', N, 'p_I').astype(np.int64)
        try:
            signal = SamplerService.subspace_from_vectors(N, r_S, p_S, seed)
            idler = SamplerService.subspace_from_vectors(N, r_I, p_I, seed)
        except ValidationError as e:
            raise FileFormatError(f'{reader.path}: invalid sampler vectors: {e.message}', offset=start)
        joint = SamplerService.build_joint(signal, idler)
        if joint.dropped:
            raise FileFormatError(f'{reader.path}: stored sampler repeats {joint.dropped} joint rows', offset=start)
        return joint

    @staticmethod
    def write_sampler(path: str, sampler: JointSampler):
        StorageService.write_bytes(path, StorageService.encode_sampler(sampler))
        logger.info(f'Sampler written to {path}')

    @staticmethod
    def read_sampler(path: str) -> JointSampler:
        reader = _Reader(StorageService.read_bytes(path), path)
        sampler = StorageService._decode_sampler(reader)
        reader.finish()
        return sampler

    # Distribution

    @staticmethod
    def encode_distribution(distribution: JointDistribution) -> bytes:
        return b''.join([
            DISTRIBUTION_MAGIC,
            struct.pack('<HII', Config.FORMAT_VERSION, distribution.side, distribution.side),
            distribution.values.astype('<f8').tobytes(),
        ])

    @staticmethod
    def write_distribution(path: str, distribution: JointDistribution):
        StorageService.write_bytes(path, StorageService.encode_distribution(distribution))
        logger.info(f'Distribution written to {path}')

    @staticmethod
    def read_distribution(path: str) -> JointDistribution:
        reader = _Reader(StorageService.read_bytes(path), path)
        reader.header(DISTRIBUTION_MAGIC)
        side_S = reader.scalar('I', 'side_S')
        side_I = reader.scalar('I', 'side_I')
        if side_S != side_I or side_S < 1:
            raise FileFormatError(f'{path}: unsupported grid sides {side_S} x {side_I}', offset=reader.offset - 8)
        start = reader.offset
        values = reader.array('<f8', side_S ** 4, 'distribution values')
        reader.finish()
        try:
            return JointDistribution(side=side_S, values=values)
        except ValidationError as e:
            raise FileFormatError(f'{path}: {e.message}', offset=start)

    # Measurement record

    @staticmethod
    def encode_measurement(record: MeasurementRecord) -> bytes:
        if not record.is_integral:
            raise StorageError('Only photon-counting records can be stored; noiseless records hold real-valued counts')

        def counts(values):
            return np.asarray(values, dtype=np.int64).astype('<u8').tobytes()

        parts = [
            MEASUREMENT_MAGIC,
            struct.pack('<HI', Config.MEASUREMENT_FORMAT_VERSION, record.M),
            StorageService.encode_sampler(record.sampler),
            struct.pack('<5d', *record.params.as_tuple()),
            counts(record.counts_pp),
            counts(record.counts_mm),
            counts(record.counts_pm),
            counts(record.counts_mp),
            np.asarray(record.y, dtype='<f8').tobytes(),
            counts(record.singles_S),
            counts(record.singles_I),
            counts(record.singles_S_plus),
            counts(record.singles_I_plus),
        ]
        return b''.join(parts)

    @staticmethod
    def write_measurement(path: str, record: MeasurementRecord):
        StorageService.write_bytes(path, StorageService.encode_measurement(record))
        logger.info(f'Measurement record ({record.M} projections) written to {path}')

    @staticmethod
    def read_measurement(path: str) -> MeasurementRecord:
        reader = _Reader(StorageService.read_bytes(path), path)
        reader.header(MEASUREMENT_MAGIC, Config.MEASUREMENT_FORMAT_VERSION)
        M = reader.scalar('I', 'M')
        sampler_offset = reader.offset
        sampler = StorageService._decode_sampler(reader)
        if sampler.M != M:
            raise FileFormatError(f'{path}: record holds {M} projections, sampler {sampler.M}', offset=sampler_offset)

        params_offset = reader.offset
        values = struct.unpack('<5d', reader.take(40, 'optical parameters'))
        try:
            params = OpticalParams(*values)
        except ValidationError as e:
            raise FileFormatError(f'{path}: {e.message}', offset=params_offset)

        arrays = {}
        for name in ('counts_pp', 'counts_mm', 'counts_pm', 'counts_mp'):
            arrays[name] = StorageService._counts(reader, M, name)
        arrays['y'] = reader.array('<f8', M, 'y')
        for name in ('singles_S', 'singles_I', 'singles_S_plus', 'singles_I_plus'):
            arrays[name] = StorageService._counts(reader, M, name)
        reader.finish()

        try:
            return MeasurementRecord(sampler=sampler, params=params, **arrays)
        except ValidationError as e:
            raise FileFormatError(f'{path}: {e.message}', offset=params_offset)

    @staticmethod
    def _counts(reader: _Reader, M: int, name: str) -> np.ndarray:
        start = reader.offset
        raw = reader.array('<u8', M, name)
        if raw.size and raw.max() > np.iinfo(np.int64).max:
            raise FileFormatError(f'{reader.path}: {name} overflows int64', offset=start)
        return raw.astype(np.int64)

    # Trace and report text

    @staticmethod
    def format_trace(trace: Iterable[IterationRecord]) -> str:
        lines = ['\t'.join(TRACE_HEADER)]
        for record in trace:
            information = 'nan' if record.mutual_information is None else f'{record.mutual_information:.17g}'
            lines.append('\t'.join([
                str(record.iteration),
                information,
                f'{record.relative_residual:.17g}',
                str(record.nonzero),
                f'{record.threshold:.17g}',
            ]))
        return '\n'.join(lines) + '\n'

    @staticmethod
    def write_trace(path: str, trace: Iterable[IterationRecord]):
        StorageService.write_bytes(path, StorageService.format_trace(trace).encode('ascii'))

    @staticmethod
    def read_trace(path: str) -> List[IterationRecord]:
        text = StorageService.read_bytes(path).decode('ascii', errors='replace')
        lines = text.splitlines()
        if not lines or tuple(lines[0].split('\t')) != TRACE_HEADER:
            raise FileFormatError(f'{path}: missing trace header', offset=0)
        records = []
        for number, line in enumerate(lines[1:], start=2):
            fields = line.split('\t')
            try:
                iteration, information, residual, nonzero, threshold = fields
                records.append(IterationRecord(
                    iteration=int(iteration),
                    mutual_information=None if information == 'nan' else float(information),
                    relative_residual=float(residual),
                    nonzero=int(nonzero),
                    threshold=float(threshold),
                ))
            except ValueError:
                raise FileFormatError(f'{path}: malformed trace line {number}')
        return records

    @staticmethod
    def format_report(report: InfoReport) -> str:
        """key: value lines, one per report field."""
        lines = []
        for key, value in InfoReportSchema().dump(report.to_dict()).items():
            if value is None:
                continue
            lines.append(f'{key}: {value:.6f}' if isinstance(value, float) else f'{key}: {value}')
        return '\n'.join(lines) + '\n'

    # Raw I/O

    @staticmethod
    def write_bytes(path: str, data: bytes):
        try:
            directory = os.path.dirname(path)
            if directory:
                os.makedirs(directory, exist_ok=True)
            with open(path, 'wb') as handle:
                handle.write(data)
        except OSError as e:
            raise StorageError(f'Cannot write {path}: {e.strerror or e}')

    @staticmethod
    def read_bytes(path: str) -> bytes:
        try:
            with open(path, 'rb') as handle:
                return handle.read()
        except OSError as e:
            raise StorageError(f'Cannot read {path}: {e.strerror or e}')
