"""Exception hierarchy shared by every module of the package."""

from __future__ import annotations


class GloverError(ValueError):
    """Base class for all input errors raised by this package."""


class GraphValidationError(GloverError):
    """An arc list violates the oriented-graph rules."""


class SelfLoopError(GraphValidationError):
    def __init__(self, node: int) -> None:
        super().__init__(f"self-loop at node {node}")
        self.node = node


class SymmetricPairError(GraphValidationError):
    def __init__(self, u: int, v: int) -> None:
        super().__init__(f"symmetric pair {u}->{v} and {v}->{u}")
        self.u, self.v = u, v


class DuplicateArcError(GraphValidationError):
    def __init__(self, u: int, v: int) -> None:
        super().__init__(f"duplicate arc {u}->{v}")
        self.u, self.v = u, v


class IdOutOfRangeError(GloverError, IndexError):
    def __init__(self, node: int, node_count: int) -> None:
        super().__init__(f"node id {node} outside [0, {node_count})")
        self.node, self.node_count = node, node_count


class EmptyGraphError(GloverError):
    pass


class NotAnArcError(GloverError):
    def __init__(self, u: int, v: int) -> None:
        super().__init__(f"{u}->{v} is not an arc of the graph")
        self.u, self.v = u, v


class NotParentChildError(GloverError):
    def __init__(self, u: int, v: int) -> None:
        super().__init__(f"{u}->{v} is not a parent-child arc of the layering")
        self.u, self.v = u, v


class BoundaryOutOfRangeError(GloverError):
    pass


class LayerTooSmallError(GloverError):
    pass


class OrientationInfeasibleError(GloverError):
    """A circulant assignment would need a step and its inverse (n <= 2i)."""


class UnreachableNodeError(GloverError):
    pass


class UnclassifiableTriangleError(GloverError):
    """A transitive triangle matches none of the six layer patterns."""

    def __init__(self, triangle: tuple[int, int, int], pattern: str) -> None:
        super().__init__(f"triangle {triangle} has unclassifiable arc pattern {pattern}")
        self.triangle, self.pattern = triangle, pattern


class CycleTooShortError(GloverError):
    pass


class UnknownFixtureError(GloverError, KeyError):
    pass


class DocumentError(GloverError):
    """Malformed graph document (bad JSON, wrong shape, non-integer ids)."""


class DanglingTargetError(DocumentError):
    def __init__(self, source: int, target: int) -> None:
        super().__init__(f"node {source} targets {target}, which has no entry")
        self.source, self.target = source, target
