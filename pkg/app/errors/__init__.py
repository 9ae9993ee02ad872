from app.errors.exceptions import (
    AppError,
    ConfigError,
    ValidationError,
    LengthError,
    ShapeError,
    RowIndexError,
    WaveletDepthError,
    StorageError,
    FileFormatError,
    NumericalError,
    ThresholdOvershoot,
)

__all__= [
    'AppError',
    'ConfigError',
    'ValidationError',
    'LengthError',
    'ShapeError',
    'RowIndexError',
    'WaveletDepthError',
    'StorageError',
    'FileFormatError',
    'NumericalError',
    'ThresholdOvershoot',
]
