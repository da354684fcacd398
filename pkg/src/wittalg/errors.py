"""Exception types shared by every module.

Each carries a machine-readable ``code`` so the command line can report
structured errors without inspecting messages.
"""


class WittError(Exception):
    code = "E_INTERNAL"

    def to_dict(self):
        return {"code": self.code, "message": str(self)}


class DomainError(WittError, ValueError):
    code = "E_DOMAIN"


class ParseError(WittError, ValueError):
    code = "E_PARSE"

    def __init__(self, message, position=None, text=None):
        super().__init__(message)
        self.position = position
        self.text = text

    def to_dict(self):
        out = super().to_dict()
        out["position"] = self.position
        return out


class WindowExhausted(WittError, RuntimeError):
    """A finite-window search could not settle the question.

    ``suggested`` is a ``(lo, hi)`` pair worth retrying with.
    """

    code = "E_WINDOW"

    def __init__(self, message, suggested=None):
        super().__init__(message)
        self.suggested = suggested

    def to_dict(self):
        out = super().to_dict()
        if self.suggested is not None:
            out["suggested_window"] = f"{self.suggested[0]}:{self.suggested[1]}"
        return out


class VerificationFailure(WittError, AssertionError):
    """An internal certificate did not check out. Always a bug."""

    code = "E_VERIFY"
