class PDDError(Exception):
    """Base class for all errors raised by pddkit."""


class UnknownTaxonError(PDDError, KeyError):
    def __init__(self, names):
        names = sorted(names) if not isinstance(names, str) else [names]
        self.names = names
        super().__init__(f"unknown taxon: {', '.join(map(str, names))}")

    def __str__(self):
        return self.args[0]


class InvalidInstanceError(PDDError, ValueError):
    def __init__(self, violations):
        if isinstance(violations, str):
            violations = [violations]
        self.violations = list(violations)
        super().__init__("; ".join(self.violations))


class NotACliqueModulatorError(PDDError, ValueError):
    pass


class OracleTooLargeError(PDDError, ValueError):
    pass


class FormatError(PDDError, ValueError):
    """Malformed instance or graph file; carries the 1-based line number."""

    def __init__(self, message, line=None):
        self.line = line
        prefix = f"line {line}: " if line is not None else ""
        super().__init__(prefix + message)
