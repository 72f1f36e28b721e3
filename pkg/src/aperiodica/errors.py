"""Exception hierarchy shared by all modules."""


class AperiodicaError(Exception):
    pass


class DomainMismatchError(AperiodicaError):
    """Two descriptors live in different ambient groups."""


class MeasureInfiniteError(AperiodicaError):
    """Haar measure requested for an unbounded descriptor."""


class PreconditionError(AperiodicaError):
    """An operation was called outside its stated domain."""


class UnsupportedError(AperiodicaError):
    """The requested combination of scheme and operation is not modelled."""


class InternalCheckError(AperiodicaError):
    """A result failed one of its own post-condition checks."""
