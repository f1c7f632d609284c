"""Custom exception classes"""


class CachingException(Exception):
    """Base exception for the caching planner"""
    pass


class ValidationException(CachingException):
    """Invalid model parameters; the message names the offending field"""

    def __init__(self, field: str, message: str):
        self.field = field
        super().__init__(f"{field}: {message}")


class InfeasibleLayoutException(ValidationException):
    """Layout caches more distinct ranks than the catalog holds"""
    pass


class OptimizationException(CachingException):
    """Optimizer could not produce a feasible solution"""
    pass


class SimulationException(CachingException):
    """Monte-Carlo simulation errors"""
    pass


class ConfigException(CachingException):
    """Experiment configuration file errors"""
    pass
