"""
Schemas Package
Marshmallow schemas for configuration validation and report serialization
"""

from app.schemas.experiment_schema import (
    ExperimentConfigSchema,
    InfoReportSchema
)


__all__ = [
    'ExperimentConfigSchema',
    'InfoReportSchema'
]
