"""Exception hierarchy.

Every error carries the module and operation it came from so the CLI can
report a precise origin and map the failure to an exit code.  Budget
exhaustion (``budget = True``) is distinguished from domain errors because
"gave up searching" must never be confused with a negative mathematical
answer.
"""


class OrderkitError(Exception):
    module = "orderkit"
    operation = ""
    budget = False

    def __init__(self, message, *, operation=None):
        super().__init__(message)
        if operation is not None:
            self.operation = operation


# --- intmat ---------------------------------------------------------------

class NotSublattice(OrderkitError):
    module = "intmat"


class RankDeficient(OrderkitError):
    module = "intmat"


class IndexTooLarge(OrderkitError):
    module = "intmat"
    budget = True


# --- numberfield ----------------------------------------------------------

class NotMonic(OrderkitError):
    module = "numberfield"


class Reducible(OrderkitError):
    module = "numberfield"


class DegreeMismatch(OrderkitError):
    module = "numberfield"


# --- orders ---------------------------------------------------------------

class NotUnital(OrderkitError):
    module = "orders"


class NotClosed(OrderkitError):
    module = "orders"


class NotFullRank(OrderkitError):
    module = "orders"


class NeedsUserInput(OrderkitError):
    module = "orders"


class NotContained(OrderkitError):
    module = "orders"


class UnsupportedDegree(OrderkitError):
    module = "orders"


# --- ideals ---------------------------------------------------------------

class OrderMismatch(OrderkitError):
    module = "ideals"


class SearchBudgetExceeded(OrderkitError):
    module = "ideals"
    budget = True


class MethodDisagreement(OrderkitError):
    """Two independent routes to the same quantity disagree: a bug, not bad input."""

    module = "ideals"


class FactorizationViolation(OrderkitError):
    """The class census found a class outside Pic * intermediate set: a bug."""

    module = "ideals"


# --- gamma_structures -------------------------------------------------------

class NotFreeModule(OrderkitError):
    module = "gamma_structures"


class BoundViolation(OrderkitError):
    module = "gamma_structures"


class HypothesisViolated(OrderkitError):
    module = "gamma_structures"


# --- bounds ---------------------------------------------------------------

class NotPrime(OrderkitError):
    module = "bounds"
