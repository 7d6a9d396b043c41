"""Exception hierarchy shared across the package.

Three failure families are kept apart because the CLI maps them to
distinct exit codes: bad input (2), exhausted search budget (3), and
internal inconsistency between the two computation paths (4).
"""


class DiagramError(ValueError):
    """Invalid input data: malformed document, broken invariant, unmet curve."""

    def __init__(self, message, code="invalid", detail=None):
        super().__init__(message)
        self.code = code
        self.detail = dict(detail or {})


class CurveUnmetError(DiagramError):
    """A curve with zero intersection points where a built complex is required."""

    def __init__(self, curves):
        curves = tuple(sorted(curves))
        super().__init__(
            "curve unmet: no intersection points on curve(s) %s"
            % ", ".join(str(c) for c in curves),
            code="curve-unmet",
            detail={"curves": curves},
        )
        self.curves = curves


class BudgetExceededError(RuntimeError):
    """A bounded search was asked to exceed its stated candidate budget."""

    def __init__(self, candidates, budget):
        super().__init__(
            "candidate count %d exceeds budget %d; nothing was computed"
            % (candidates, budget)
        )
        self.candidates = candidates
        self.budget = budget


class InternalInconsistencyError(RuntimeError):
    """The artifact disagrees with itself (builder bug or oracle mismatch)."""
