"""Exception hierarchy shared by all modules."""


class HMatError(Exception):
    """Base class for every error raised by this package."""


class NotAMember(HMatError):
    pass


class EmptyFamily(HMatError):
    pass


class NotConstructible(HMatError):
    pass


class NotUnitIncreasing(HMatError):
    pass


class HNotInDomain(HMatError):
    pass


class DomainNotPowerSet(HMatError):
    pass


class EMissingFromDomain(HMatError):
    pass


class TooLargeForExhaustive(HMatError):
    pass


class OutOfRange(HMatError):
    pass


class ZeroMissing(HMatError):
    pass


class ZeroMissingFromH(HMatError):
    pass


class InvalidPoset(HMatError):
    def __init__(self, axiom: str, detail: str = ""):
        self.axiom = axiom
        super().__init__(f"{axiom}: {detail}" if detail else axiom)


class BudgetExceeded(HMatError):
    pass


class UnknownPredicate(HMatError):
    pass


class ParseError(HMatError):
    pass


class UnresolvedName(HMatError):
    pass
