"""Exception types shared by the solver modules."""


class ShellgapError(Exception):
    """Base class for solver failures."""


class DomainError(ShellgapError, ValueError):
    """Argument outside the mathematical domain of a function."""


class PoleProximity(ShellgapError):
    """Evaluation point too close to a pole of the expression."""


class BesselZero(ShellgapError):
    """J_n(k_o xi) vanishes; the lattice-sum representation needs a shifted xi."""


class NoGap(ShellgapError):
    """Band branches overlap: no common gap on the scanned path."""


class NoRootFound(ShellgapError):
    """Root bracketing failed inside the allowed interval."""


class BranchAmbiguity(ShellgapError):
    """Two dispersion roots inside one frequency-grid cell; refine the grid."""


class DegenerateDenominator(ShellgapError):
    """Closed-form edge denominator vanishes for this parameter set."""


class DegenerateRadicand(ShellgapError):
    """Closed-form edge radicand is non-positive for this parameter set."""


class ConfigError(ShellgapError):
    """Malformed or inconsistent configuration input."""
