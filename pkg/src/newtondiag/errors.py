"""Exception types shared across the package."""


class PolynomialSyntaxError(ValueError):
    """Raised by the parser; carries the character offset of the problem."""

    def __init__(self, message, text, position):
        self.text = text
        self.position = position
        super().__init__(f"{message} at position {position}: {text!r}")


class DimensionError(ValueError):
    pass


class NotInHError(ValueError):
    """The polynomial is not in H (negative coefficient or not 1 on s = 1)."""


class TheoremContradiction(RuntimeError):
    """A proven inequality failed on a concrete input.

    ``dump`` holds a JSON-serialisable description of the counterexample.
    """

    def __init__(self, message, dump=None):
        self.dump = dump
        super().__init__(message)


class BudgetExceeded(RuntimeError):
    def __init__(self, message, assignments, budget):
        self.assignments = assignments
        self.budget = budget
        super().__init__(message)
