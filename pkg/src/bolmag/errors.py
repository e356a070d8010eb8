"""Exception types.  Each CLI exit code maps to one family."""


class BolmagError(Exception):
    pass


class NoNeutral(BolmagError):
    pass


class NotBol(BolmagError):
    pass


class NotInvertible(BolmagError):
    def __init__(self, element):
        super().__init__(f"element {element} has no two-sided inverse")
        self.element = element


class NonUniqueInverse(BolmagError):
    """Two distinct two-sided inverses in a right Bol table (cannot happen on valid input)."""

    def __init__(self, element, inverses):
        super().__init__(f"element {element} has inverses {list(inverses)} in a right Bol table")
        self.element = element
        self.inverses = tuple(inverses)


class NotClosed(BolmagError):
    def __init__(self, pair, product=None):
        msg = f"invertible set not closed: {pair[0]}*{pair[1]}"
        if product is not None:
            msg += f" = {product}"
        super().__init__(msg + " is not invertible")
        self.pair = tuple(pair)
        self.product = product


class InvalidRing(BolmagError):
    def __init__(self, reports):
        failed = [r.property for r in reports if not r.holds]
        super().__init__(f"ring axioms fail: {', '.join(failed)}")
        self.reports = reports


class NoUnity(BolmagError):
    pass


class NotStronglyRightAlternative(BolmagError):
    pass


class NotAlternative(BolmagError):
    pass


class BudgetExceeded(BolmagError):
    def __init__(self, result):
        super().__init__("search budget exceeded before the space was covered")
        self.result = result


class TheoremViolation(BolmagError):
    """A finite input contradicts a proved statement; always an internal bug or corrupted input."""


class FormatError(BolmagError):
    def __init__(self, message, line=None, column=None, path=None):
        where = ""
        if path is not None:
            where += f"{path}:"
        if line is not None:
            where += f"{line}:"
            if column is not None:
                where += f"{column}:"
        super().__init__(f"{where} {message}" if where else message)
        self.line = line
        self.column = column
