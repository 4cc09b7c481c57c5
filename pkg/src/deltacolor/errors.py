"""Exception types shared across the package."""


class DeltaColorError(Exception):
    """Base class for all package errors."""


class GraphFormatError(DeltaColorError):
    """Malformed graph or coloring input (file or constructor)."""


class RoundLimitExceeded(DeltaColorError):
    """A synchronous run hit max_rounds before every node produced output."""


class ParamUnsupported(DeltaColorError):
    """Requested method/parameter combination is not implemented."""


class ListTooSmall(DeltaColorError):
    """A list-coloring instance violates the deg+1 precondition."""

    def __init__(self, node, list_size, required):
        self.node = node
        self.list_size = list_size
        self.required = required
        super().__init__(
            f"node {node} has list of size {list_size}, needs >= {required}"
        )


class LayerListViolation(DeltaColorError):
    """A layer node's available list fell below deg+1 (decomposition bug)."""

    def __init__(self, node, layer, list_size, required):
        self.node = node
        self.layer = layer
        self.list_size = list_size
        self.required = required
        super().__init__(
            f"layer {layer}: node {node} has list of size {list_size}, needs >= {required}"
        )


class NotNice(DeltaColorError):
    """Input graph is a path, a cycle, a clique, or disconnected."""


class BadPartial(DeltaColorError):
    """Partial coloring violates a completion precondition."""


class ComponentTooLarge(DeltaColorError):
    """A leftover component exceeded the configured size cap."""

    def __init__(self, size, cap, sample_node):
        self.size = size
        self.cap = cap
        self.sample_node = sample_node
        super().__init__(
            f"leftover component of size {size} exceeds cap {cap} (node {sample_node})"
        )


class TooLarge(DeltaColorError):
    """Instance exceeds a brute-force oracle's size cap."""


class InfeasibleFamily(DeltaColorError):
    """Generator parameters describe an impossible graph family."""


class RejectionBudgetExceeded(DeltaColorError):
    """A rejection-sampling generator ran out of attempts."""


class SearchBudgetExceeded(DeltaColorError):
    """An exact local search exceeded its work budget; result would be unreliable."""
