class AppError(Exception):
    exit_code = 1
    error = "Application error"

    def __init__(self, message, exit_code=None):
        super().__init__(message)
        if exit_code:
            self.exit_code = exit_code
        self.message = message


class ConfigError(AppError):
    exit_code = 2
    error = "Configuration error"


class ValidationError(AppError):
    exit_code = 2
    error = "Validation error"


class LengthError(ValidationError):
    error = "Length error"


class ShapeError(ValidationError):
    error = "Shape error"


class RowIndexError(ValidationError):
    error = "Index error"


class WaveletDepthError(ValidationError):
    error = "Wavelet depth error"


class StorageError(AppError):
    exit_code = 3
    error = "I/O error"


class FileFormatError(StorageError):
    error = "File format error"

    def __init__(self, message, offset=None, exit_code=None):
        if offset is not None:
            message = f'{message} (at byte offset {offset})'
        super().__init__(message, exit_code)
        self.offset = offset


class NumericalError(AppError):
    exit_code = 4
    error = "Numerical failure"


class ThresholdOvershoot(NumericalError):
    """Hard thresholding removed every entry; ``fallback`` holds the uniform
    distribution over the admissible support."""
    error = "Threshold overshoot"

    def __init__(self, message, fallback=None):
        super().__init__(message)
        self.fallback = fallback
