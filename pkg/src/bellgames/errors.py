"""Exception hierarchy shared by all analysis modules."""


class BellGameError(Exception):
    """Base class for errors raised by bellgames."""


class DimensionError(BellGameError, ValueError):
    """Tensor shapes of a game, behavior or expression do not agree."""


class UnsupportedScenarioError(BellGameError, ValueError):
    """The operation needs binary actions (or two players) and did not get them."""


class ResourceLimitError(BellGameError):
    """An enumeration or LP would exceed its configured size cap."""

    def __init__(self, what: str, count: int, cap: int):
        super().__init__(f"{what}: {count} exceeds cap {cap}")
        self.count = count
        self.cap = cap


class InvalidBehaviorError(BellGameError, ValueError):
    """Probabilities are negative or not normalised."""


class SignalingError(BellGameError, ValueError):
    """A behavior violates the no-signaling condition where one is required."""


class GameSyntaxError(BellGameError, ValueError):
    def __init__(self, message: str, line: int = 0, column: int = 0):
        loc = f"line {line}, column {column}: " if line else ""
        super().__init__(loc + message)
        self.line = line
        self.column = column


class GameValidationError(BellGameError, ValueError):
    def __init__(self, violations):
        self.violations = list(violations)
        super().__init__("invalid game: " + "; ".join(self.violations))
