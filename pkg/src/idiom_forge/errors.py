"""Exception types shared across the pipeline."""


class IdiomForgeError(Exception):
    """Base class for all tool errors."""


class MiniHackSyntaxError(IdiomForgeError):
    """Malformed source input. Carries the offending location."""

    def __init__(self, message, file=None, line=None, col=None):
        self.file = file
        self.line = line
        self.col = col
        where = f"{file or '<input>'}:{line}:{col}" if line is not None else (file or "<input>")
        super().__init__(f"{where}: {message}")


class UnknownVariable(IdiomForgeError):
    """A variable reached the dataflow stage without a type entry."""


class EmptyCorpus(IdiomForgeError):
    """An operation that needs at least one tree received none."""


class UnknownProduction(IdiomForgeError):
    """A fragment uses a production absent from the base grammar."""


class DegenerateProbability(IdiomForgeError):
    """A base probability of zero where a positive one is required."""


class ConfigError(IdiomForgeError):
    """Invalid configuration value or file."""
