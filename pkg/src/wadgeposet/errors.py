"""Exception hierarchy shared by every module of the package."""


class WadgeError(Exception):
    pass


class InvalidPosetError(WadgeError, ValueError):
    pass


class CycleError(InvalidPosetError):
    """The reflexive-transitive closure of the input relation is not antisymmetric."""


class ArityError(InvalidPosetError):
    pass


class NoBottomError(WadgeError):
    pass


class NotEmbeddingError(WadgeError):
    pass


class NotEmbeddableError(WadgeError):
    pass


class NotInCError(WadgeError):
    """A finite set lies outside the downward closure of the labels."""


class SupremumError(WadgeError):
    pass


class MonotonicityError(WadgeError):
    pass


class NotReductionError(WadgeError):
    pass


class BudgetExceeded(WadgeError):
    """A search hit its node budget before it could decide."""

    def __init__(self, nodes, message=None):
        self.nodes = nodes
        super().__init__(message or f"search budget exhausted after {nodes} nodes")


class UniverseTooLarge(WadgeError):
    pass


class UnknownFixture(WadgeError, KeyError):
    pass


class ParamError(WadgeError, ValueError):
    pass


class PhaseError(WadgeError):
    pass


class NotFinished(WadgeError):
    pass


class StrategyError(WadgeError, ValueError):
    pass
