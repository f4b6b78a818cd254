"""Exception hierarchy.  Each class carries the CLI exit code it maps to."""


class IRDressError(Exception):
    exit_code = 1


class ConfigurationError(IRDressError, ValueError):
    exit_code = 2


class RegistryError(IRDressError, KeyError):
    exit_code = 3

    def __str__(self):
        return str(self.args[0]) if self.args else ""


class NoCrossingError(IRDressError):
    exit_code = 4


class DegeneracyError(IRDressError):
    exit_code = 5


class IntegratorError(IRDressError, RuntimeError):
    exit_code = 6

    def __init__(self, message, diagnostics=None):
        super().__init__(message)
        self.diagnostics = dict(diagnostics or {})


class ConstraintError(IRDressError):
    exit_code = 7
