from marshmallow import Schema, fields, validate, validates, validates_schema, post_load, ValidationError, RAISE

from app.config import Config
from app.models import ExperimentConfig
from app.utils.random import MAX_SEED


class ExperimentConfigSchema(Schema):
    """Flat experiment configuration (key=value file plus command-line overrides)"""

    class Meta:
        unknown = RAISE

    side = fields.Int(load_default=8, validate=validate.Range(min=2, max=65536))
    measurements = fields.Int(load_default=1000, validate=validate.Range(min=1))
    seed = fields.Int(load_default=Config.DEFAULT_SEED, validate=validate.Range(min=0, max=MAX_SEED))
    include_first_row = fields.Bool(load_default=False)
    distinct_rows = fields.Bool(load_default=False)

    lambda_p = fields.Float(load_default=325e-9, validate=validate.Range(min=0, min_inclusive=False))
    L_z = fields.Float(load_default=1e-3, validate=validate.Range(min=0, min_inclusive=False))
    sigma_p = fields.Float(load_default=3e-4, validate=validate.Range(min=0, min_inclusive=False))
    flux = fields.Float(load_default=1.6e4, validate=validate.Range(min=0))
    t_proj = fields.Float(load_default=2.0, validate=validate.Range(min=0, min_inclusive=False))
    accidental_rate = fields.Float(load_default=0.0, validate=validate.Range(min=0))

    sigma_plus = fields.Float(load_default=4.0, validate=validate.Range(min=0, min_inclusive=False))
    sigma_minus = fields.Float(load_default=0.75, validate=validate.Range(min=0, min_inclusive=False))
    pixel_pitch = fields.Float(load_default=1.0, validate=validate.Range(min=0, min_inclusive=False))

    max_iterations = fields.Int(load_default=Config.RECONSTRUCTION_MAX_ITERATIONS, validate=validate.Range(min=1))
    min_iterations = fields.Int(load_default=5, validate=validate.Range(min=1))
    hard_threshold_step = fields.Float(
        load_default=0.01, validate=validate.Range(min=0, max=1, min_inclusive=False, max_inclusive=False))
    wavelet_levels = fields.Int(load_default=2, validate=validate.Range(min=1))
    use_marginal_mask = fields.Bool(load_default=False)

    snr = fields.Float(load_default=1.0, validate=validate.Range(min=0, min_inclusive=False))
    out = fields.Str(load_default=None, allow_none=True)

    @validates('side')
    def validate_side(self, value, **kwargs):
        if value & (value - 1):
            raise ValidationError(f'side must be a power of two, got {value}')

    @validates_schema
    def validate_schedule(self, data, **kwargs):
        if data.get('min_iterations', 5) > data.get('max_iterations', Config.RECONSTRUCTION_MAX_ITERATIONS):
            raise ValidationError('min_iterations cannot exceed max_iterations', 'min_iterations')
        if data.get('sigma_plus', 4.0) < data.get('sigma_minus', 0.75):
            raise ValidationError('sigma_plus must not be smaller than sigma_minus', 'sigma_plus')

    @post_load
    def make_config(self, data, **kwargs):
        return ExperimentConfig(**data)


class InfoReportSchema(Schema):
    """Analysis report serialization"""
    mutual_information_bits = fields.Float(dump_only=True)
    schmidt_number = fields.Float(dump_only=True)
    theoretical_max_bits = fields.Float(dump_only=True, allow_none=True)
    entropy_S_bits = fields.Float(dump_only=True, allow_none=True)
    entropy_I_bits = fields.Float(dump_only=True, allow_none=True)
    N = fields.Int(dump_only=True)
    marginal_S_peak = fields.Int(dump_only=True)
    marginal_I_peak = fields.Int(dump_only=True)
    marginal_S_max = fields.Float(dump_only=True)
    marginal_I_max = fields.Float(dump_only=True)
