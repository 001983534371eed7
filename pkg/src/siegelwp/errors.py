"""Exception types shared across the package."""


class AliasingError(ValueError):
    """Too few samples for the requested band: coefficients would alias."""


class MonotonicityError(ValueError):
    """A circle map lift failed to be strictly increasing."""


class IllConditionedError(ValueError):
    """A linear solve was refused because the condition number exceeds its cap."""


class GridMismatchError(ValueError):
    """Two disc-sampled fields live on different quadrature grids."""


class DivergenceError(ValueError):
    """A hyperbolic integral does not decay toward the boundary circle."""


class ConfigError(ValueError):
    """Malformed experiment configuration or map specification."""
