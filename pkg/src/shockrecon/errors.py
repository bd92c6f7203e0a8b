"""Exception types shared across the package.

Every domain failure raises one of these instead of a bare ValueError so
callers (and the CLI) can map failures to exit codes without string matching.
"""


class ShockreconError(Exception):
    """Base class for all domain errors raised by this package."""


# --- equation of state ---

class NonPositiveDensity(ShockreconError):
    pass


class CompressionSingularity(ShockreconError):
    """Compression too close to the 1/s1 pole of the cold-pressure curve."""


# --- hydro solver ---

class InvalidSetup(ShockreconError):
    pass


class TimestepCollapse(ShockreconError):
    pass


# --- radiography ---

class GridMismatch(ShockreconError):
    pass


class NegativeFraction(ShockreconError):
    pass


class NonPhysicalTransmission(ShockreconError):
    """Descattered signal non-positive over too many pixels to invert."""


# --- feature extraction ---

class NoShockFound(ShockreconError):
    pass


class NoEdgeFound(ShockreconError):
    pass


class NoRootInSegment(ShockreconError):
    """Neither root of the conservation quadratic lies inside the segment."""


class FeatureCountMismatch(ShockreconError):
    def __init__(self, msg, found=None, snapshot=None):
        super().__init__(msg)
        self.found = found          # peak radii that were located, outermost first
        self.snapshot = snapshot


class FeatureExtractionFailed(ShockreconError):
    """Per-snapshot extraction failure with the snapshot index attached."""

    def __init__(self, snapshot, cause):
        super().__init__(f"snapshot {snapshot}: {cause}")
        self.snapshot = snapshot
        self.cause = cause


# --- database ---

class SimulationFailed(ShockreconError):
    def __init__(self, index, cause):
        super().__init__(f"grid index {index}: {cause}")
        self.index = index
        self.cause = cause


class IoFailure(ShockreconError):
    pass


class NotFound(ShockreconError):
    pass


class CorruptRecord(ShockreconError):
    pass


class EmptyDatabase(ShockreconError):
    pass


# --- neural ---

class ShapeMismatch(ShockreconError):
    pass


class DivergedLoss(ShockreconError):
    pass


# --- manifold ---

class ZeroMass(ShockreconError):
    pass


class InsufficientSnapshots(ShockreconError):
    pass


class DegenerateCloud(ShockreconError):
    pass


# --- cli ---

class MissingArtifact(ShockreconError):
    pass
