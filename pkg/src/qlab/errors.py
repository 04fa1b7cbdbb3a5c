"""Exception hierarchy.

Theorem violations are kept distinct from input errors so that search
harnesses can use them as falsification signals rather than crashes.
"""


class QlabError(Exception):
    pass


class InputError(QlabError):
    """Malformed data: non-total tables, bad indices, unparsable files."""


class PreconditionError(QlabError):
    """An operation was invoked outside its contract (e.g. no unit declared)."""


class ResourceLimitError(QlabError):
    """A configured size bound was exceeded; never silently truncated."""


class UnsupportedCaseError(QlabError):
    """Input is valid but outside the implemented fragment (by design)."""


class TheoremViolation(QlabError):
    """A verified structural fact failed on a concrete instance.

    Carries a witness that replays the failure.
    """

    def __init__(self, law: str, witness=None, detail: str = ""):
        self.law = law
        self.witness = witness
        self.detail = detail
        msg = law if not detail else f"{law}: {detail}"
        if witness is not None:
            msg += f" (witness: {witness!r})"
        super().__init__(msg)
