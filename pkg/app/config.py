import os

from dotenv import load_dotenv, dotenv_values

load_dotenv()


class Config:
    """Base configuration"""
    LOG_LEVEL = os.getenv('KRONHAD_LOG_LEVEL', 'INFO')
    LOG_DIR = os.getenv('KRONHAD_LOG_DIR', 'logs')

    DEFAULT_SEED = int(os.getenv('KRONHAD_DEFAULT_SEED', '7'))
    DEFAULT_OUTPUT_DIR = os.getenv('KRONHAD_OUTPUT_DIR', 'out')

    RECONSTRUCTION_MAX_ITERATIONS = int(os.getenv('KRONHAD_MAX_ITERATIONS', '200'))

    # Persisted binary formats; measurement records gained the P+ singles block in 2
    FORMAT_VERSION = 1
    MEASUREMENT_FORMAT_VERSION = 2


def load_experiment_config(path=None, overrides=None):
    """
    Build an ExperimentConfig from a flat key=value file plus CLI overrides.

    Precedence: overrides > file values > schema defaults.

    Args:
        path: Optional config file path
        overrides: Mapping of values given on the command line (None entries ignored)

    Returns:
        ExperimentConfig
    """
    from marshmallow import ValidationError as SchemaValidationError

    from app.errors import ConfigError
    from app.schemas import ExperimentConfigSchema

    raw = {}
    if path:
        if not os.path.isfile(path):
            raise ConfigError(f'Config file not found: {path}')
        raw.update({k: v for k, v in dotenv_values(path).items() if v is not None})

    for key, value in (overrides or {}).items():
        if value is not None:
            raw[key] = value

    try:
        return ExperimentConfigSchema().load(raw)
    except SchemaValidationError as e:
        details = '; '.join(f'{field}: {", ".join(map(str, msgs))}' for field, msgs in sorted(e.messages.items()))
        raise ConfigError(f'Invalid configuration - {details}')
