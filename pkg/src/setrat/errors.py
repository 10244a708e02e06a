"""Exception hierarchy shared by all modules."""


class SetratError(Exception):
    """Base class for every error raised by this package."""


class ParseError(SetratError, ValueError):
    """Malformed input text. ``line`` and ``column`` are 1-based."""

    def __init__(self, message, line=None, column=None):
        self.message = message
        self.line = line
        self.column = column
        where = ""
        if line is not None:
            where = f"line {line}" + (f", column {column}" if column is not None else "") + ": "
        super().__init__(where + message)


class ProfileSyntaxError(ParseError):
    pass


class TableSyntaxError(ParseError):
    pass


class UniverseError(SetratError, ValueError):
    """Alternative names or feasible sets that do not fit the universe."""


class PreconditionError(SetratError, ValueError):
    """An SCF was applied outside its preference domain."""


class NotATournament(PreconditionError):
    def __init__(self, pair):
        self.pair = tuple(pair)
        super().__init__(f"not a tournament: {self.pair[0]},{self.pair[1]} tied")


class NonLinearPreference(PreconditionError):
    def __init__(self, order):
        self.order = order
        super().__init__(f"ranking rule needs linear preferences, got '{order}'")


class NotSetRationalizable(SetratError):
    def __init__(self, witness):
        self.witness = witness
        super().__init__(f"table violates alpha_hat: {witness}")


class NotWellDefined(SetratError):
    """The minimal stable set of ``feasible`` is missing or not unique."""

    def __init__(self, feasible, minimal):
        self.feasible = feasible
        self.minimal = list(minimal)
        super().__init__(
            f"no unique minimal stable set in {_fmt(feasible)}: "
            f"{len(self.minimal)} minimal stable sets"
        )


class InternalError(SetratError, RuntimeError):
    """A cross-check between two independent routes disagreed."""


def _fmt(s):
    return "{" + ",".join(sorted(s)) + "}"
