"""Exception hierarchy.

Input problems derive from :class:`InputError` (CLI exit code 2); broken
internal identities derive from :class:`InternalInconsistency` (exit code 3).
"""


class CertError(Exception):
    """Base class for every error raised by this package."""


class InputError(CertError, ValueError):
    """The caller supplied data that cannot be processed."""


class EmptyGraph(InputError):
    pass


class NotBiregular(InputError):
    pass


class NotConnected(InputError):
    pass


class ParallelEdges(InputError):
    pass


class NotRegular(InputError):
    pass


class InvalidEdge(InputError):
    pass


class InfeasibleDegrees(InputError):
    pass


class RetryLimitExceeded(InputError):
    pass


class EdgeListSyntaxError(InputError):
    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class AcyclicGraph(InputError):
    """The graph is a tree: no primitive cycles, so no zeta polynomial."""


class SizeLimitExceeded(InputError):
    pass


class InvalidQ(InputError):
    pass


class UnsupportedXi(InputError):
    pass


class PoleAtMinusMu(InputError):
    pass


class ThetaSingular(CertError, ArithmeticError):
    pass


class InternalInconsistency(CertError, RuntimeError):
    """A theorem-level identity failed; this always indicates a bug."""

    def __init__(self, check, detail=""):
        self.check = check
        msg = f"consistency check failed: {check}"
        if detail:
            msg += f" ({detail})"
        super().__init__(msg)


class InconsistentFactorization(InternalInconsistency):
    def __init__(self, detail=""):
        super().__init__("zeta_factorization", detail)
