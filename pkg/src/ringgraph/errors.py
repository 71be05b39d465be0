"""Exception types shared across the package."""

DEFAULT_MAX_ORDER = 70000


class SizeLimitError(ValueError):
    """A construction would exceed the configured enumeration limit."""


class NonUnitalError(ValueError):
    """A unital construction was requested on a ring without identity."""


class MorphismError(ValueError):
    """An element map failed ring-morphism validation."""


class NotInFamilyError(ValueError):
    """Graph is not a join of a universal loop-clique with disjoint loop-cliques."""


class UndecidedError(RuntimeError):
    """Isomorphism could not be decided by any available strategy."""


class DescriptorError(ValueError):
    """A ring descriptor string could not be parsed."""


def check_order(order: int, max_order: int | None, what: str) -> None:
    limit = DEFAULT_MAX_ORDER if max_order is None else max_order
    if order > limit:
        raise SizeLimitError(f"{what} has {order} elements, above the limit {limit}")
