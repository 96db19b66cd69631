"""Exception types shared across the toolkit."""


class ErtkitError(Exception):
    """Base class for all toolkit errors."""


class DimensionMismatch(ErtkitError):
    """Configurations, paths, or worlds disagree on dimension."""


class DegeneratePath(ErtkitError):
    """Fewer than two distinct waypoints, or zero total arc length."""


class PhaseOutOfRange(ErtkitError):
    """Phase value outside [0, 1]."""


class DegenerateSegment(ErtkitError):
    """Segment extraction with zero phase span."""


class DegenerateSpan(ErtkitError):
    """Segment-end sampling from a phase already at the directional extreme."""


class AnchorMismatch(ErtkitError):
    """Segment start state does not coincide with the tree node it extends."""


class EmptyLibrary(ErtkitError):
    """Experience selection from a library with no entries."""


class InvalidScenario(ErtkitError):
    """Scenario file whose start or goal is invalid in its world."""


class TemplateInfeasible(ErtkitError):
    """Scenario template that cannot produce valid instances."""


class GenerationFailed(ErtkitError):
    """Experience generation failed to solve a generator instance."""

    def __init__(self, index: int, message: str | None = None):
        self.index = index
        super().__init__(message or f"experience generation failed at instance {index}")


class EmptyRecords(ErtkitError):
    """Summary requested over an empty record set."""
