from app.utils.logger import get_logger, set_level
from app.utils.decorators import log_execution_time
from app.utils.random import make_generator

__all__ = ['get_logger', 'set_level', 'log_execution_time', 'make_generator']
