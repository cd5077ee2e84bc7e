"""Exception hierarchy for springcrank."""


class MechanismError(Exception):
    """Base class for all springcrank errors."""


class GeometryError(MechanismError):
    """Link lengths cannot form the requested mechanism."""


class AssemblyError(MechanismError):
    """Loop closure has no solution at a requested crank angle."""


class RootError(MechanismError):
    """Root finding produced an unexpected number of roots."""


class DegenerateCurveError(MechanismError):
    """Coupler curve collapsed to a point; no transition pair exists."""


class PlacementError(MechanismError):
    """No spring grounding point satisfies the clearance rule."""


class NumericalError(MechanismError):
    """A numerically ill-posed configuration (e.g. zero spring length)."""


class SizingError(MechanismError):
    """Spring sizing impossible (no usable length swing)."""


class TotalInfeasibleError(MechanismError):
    """Required load exceeds the transmissible torque everywhere."""


class ConfigError(MechanismError):
    """Invalid run configuration; message names the offending field."""


class DataError(MechanismError):
    """Malformed external data file (measured series)."""
