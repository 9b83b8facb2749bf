"""Error types shared across the package.

The CLI maps these onto process exit codes: problems with input data
(missing files, malformed or inconsistent facts) exit with 2, problems
with configuration (out-of-range hyperparameters, malformed plans) exit
with 3.
"""

EXIT_OK = 0
EXIT_INPUT_ERROR = 2
EXIT_CONFIG_ERROR = 3


class RefSearchError(Exception):
    """Base class for errors raised by this package."""


class InputError(RefSearchError):
    """An input file is missing, malformed, or fails validation."""


class FactsParseError(InputError):
    """A code facts file could not be parsed."""


class FactsValidationError(InputError):
    """A code facts file parsed but violates a model invariant."""


class ConfigError(RefSearchError):
    """A hyperparameter or plan value is outside its documented range."""
