"""Exception hierarchy for the workbench.

Error class names double as the stable refusal tokens carried inside
reports, so renaming one is an interface change.
"""


class ProxError(Exception):
    """Base class for all workbench errors."""

    def token(self) -> str:
        return type(self).__name__


class UniverseMismatch(ProxError):
    """Two values from different universes were combined."""


class WrongUniverseKind(ProxError):
    """An operation was applied to a universe kind it does not support."""


class EmptyInput(ProxError):
    """A nonempty set was required."""


class NotStronglyBelow(ProxError):
    """Interpolation was requested for a pair that is not strongly below."""


class NoWitnessFound(ProxError):
    """No interpolation witness exists; the relation violates interpolation."""


class UnsupportedKind(ProxError):
    """The value kind is outside the decidable range of this operation."""


class NotZeroDimensional(ProxError):
    """The round trip requires a zero-dimensional proximity."""


class NotAChain(ProxError):
    """The sequence is provably not a descending strongly-below chain."""


class ChainOnlyProbed(ProxError):
    """Only finitely many chain levels could be certified."""


class PreconditionFailed(ProxError):
    """A declared operation precondition does not hold."""


class PreconditionNotEstablished(PreconditionFailed):
    """A required prior check did not come back positive."""


class LimitNotComputable(ProxError):
    """The pointwise limit has no closed form in the supported kinds."""


class NotFinitelyAtomic(ProxError):
    """The algebra has no finite atom decomposition."""


class NotAnIdeal(ProxError):
    """The proposed ideal is not an ideal of the algebra."""


class NotMeasurable(ProxError):
    """Some member preimage falls outside the source algebra."""


class NotOpen(ProxError):
    """The given set is not open in the induced topology."""


class SourceNotSigma(ProxError):
    """The source algebra is not closed under countable unions."""


class TargetUnsupported(ProxError):
    """The target proximity has no computable coreflection."""


class ArityMismatch(ProxError):
    """A law was invoked with the wrong number or types of subjects."""


class ParseError(ProxError):
    """Source text rejected, with position information."""

    def __init__(self, message: str, line: int, column: int):
        super().__init__(f"{line}:{column}: {message}")
        self.message = message
        self.line = line
        self.column = column
