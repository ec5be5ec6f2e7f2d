"""Exception types shared across the library."""


class MdlLabError(Exception):
    """Base class for all library errors."""


class AlphabetMismatchError(MdlLabError):
    """A string contains symbols outside the model's alphabet."""


class ZeroHistoryError(MdlLabError):
    """A predictor was queried on a history of value zero.

    Model conditionals define 0/0 as 0; predictors treat it as a caller
    bug instead, because such histories are outside the support of the
    true distribution in any well-posed experiment.
    """


class AllZeroError(MdlLabError):
    """Normalization was requested for an all-zero prediction vector."""


class IndeterminateTailError(MdlLabError):
    """The materialized prefix of an infinite class cannot certify the argmax.

    Raised when the weight mass of non-materialized models could contain
    a candidate at least as large as the best materialized one.
    """


class TooLargeError(MdlLabError):
    """An exact enumeration would exceed the configured node guard."""


class SamplingError(MdlLabError):
    """Sampling was requested from a strict semimeasure."""


class ZeroProbabilityError(MdlLabError):
    """Encoding was requested for a string of probability zero."""


class NonMeasureError(MdlLabError):
    """An operation requiring a proper measure received a semimeasure."""


class MalformedCodeError(MdlLabError):
    """A bitstring is not a valid two-part code for the given class."""


class DegenerateLikelihoodError(MdlLabError):
    """All joint densities vanished; the density MAP is undefined."""


class LossFunctionError(MdlLabError):
    """A loss function violates the required range constraints."""


class ConfigError(MdlLabError):
    """An experiment configuration is malformed."""
