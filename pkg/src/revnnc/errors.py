"""Exception hierarchy shared by all revnnc modules."""


class RevNNCError(Exception):
    """Base class for all errors raised by this package."""


class LayerMismatch(RevNNCError, TypeError):
    """An operation received a circuit of the wrong gate layer."""


class NotABijection(RevNNCError, ValueError):
    """A line mapping is not a permutation of ``range(n)``."""


class ControlNotBoolean(RevNNCError):
    """A two-qubit gate fired while its control line held V0 or V1."""

    def __init__(self, gate_index: int, gate, value):
        self.gate_index = gate_index
        self.gate = gate
        self.value = value
        super().__init__(f"gate #{gate_index} ({gate}) has control in state {value.name}")


class NotBooleanReversible(RevNNCError):
    """An elementary circuit does not realize a Boolean reversible function."""

    def __init__(self, message: str, input_index: int | None = None):
        self.input_index = input_index
        super().__init__(message)


class InsufficientFreeLines(RevNNCError):
    """A multiple-control gate cannot be decomposed without an idle line."""

    def __init__(self, gate, width: int):
        self.gate = gate
        self.width = width
        super().__init__(
            f"cannot decompose {gate} on {width} lines: no free line available "
            "(t_(n-1) with three or more controls needs gates outside NOT/CNOT/V/V+)"
        )


class NotFound(RevNNCError):
    """Exact synthesis found no realization within the cost budget."""

    def __init__(self, max_cost: int):
        self.max_cost = max_cost
        super().__init__(f"no realization with at most {max_cost} gates")


class MacroVerificationFailed(RevNNCError):
    """A macro realization does not match its pattern."""


class RealParseError(RevNNCError, ValueError):
    """Base class for ``.real`` parse failures."""

    def __init__(self, line: int | None, reason: str):
        self.line = line
        self.reason = reason
        where = f"line {line}: " if line is not None else ""
        super().__init__(f"{where}{reason}")


class RealSyntaxError(RealParseError):
    pass


class UnknownGate(RealParseError):
    pass


class ArityMismatch(RealParseError):
    pass


class MixedLayers(RealParseError):
    pass
