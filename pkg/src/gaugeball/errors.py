"""Exception hierarchy shared by the library and the CLI."""


class GaugeballError(ValueError):
    """Base class for all library errors."""


class DimensionError(GaugeballError):
    """Vector or set dimensions do not agree."""


class UnsupportedCombination(GaugeballError):
    """No exact oracle exists for the requested (dynamics, target) pairing."""


class SchemaError(GaugeballError):
    """A problem file or JSON fragment is malformed."""


def check_dim(x, dim):
    if x.shape != (dim,):
        raise DimensionError(f"expected a vector of dimension {dim}, got shape {x.shape}")
