class GtkitError(Exception):
    pass


class RingMismatchError(GtkitError, ValueError):
    pass


class NotHomogeneousError(GtkitError, ValueError):
    pass


class BudgetExceeded(GtkitError):
    """A Groebner computation hit one of its resource caps.

    Carries which cap tripped (``"pairs"``, ``"degree"`` or ``"seconds"``) so
    callers can report an inconclusive result instead of a wrong one.
    """

    def __init__(self, which: str, limit, detail: str = ""):
        self.which = which
        self.limit = limit
        msg = f"budget exceeded: {which} > {limit}"
        if detail:
            msg += f" ({detail})"
        super().__init__(msg)
