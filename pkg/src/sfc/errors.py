"""Exception types shared across the package."""


class Error(Exception):
    """Base class for all sfc errors."""


class NotPrime(Error):
    def __init__(self, p):
        super().__init__(f"{p} is not prime")
        self.p = p


class FieldTooLarge(Error):
    def __init__(self, p, m, ceiling):
        super().__init__(f"GF({p}^{m}) exceeds the ceiling of {ceiling} elements")
        self.p, self.m, self.ceiling = p, m, ceiling


class MixedFields(Error):
    """Operands belong to different fields."""


class NotADivisor(Error):
    def __init__(self, l, m):
        super().__init__(f"{l} does not divide {m} as required")
        self.l, self.m = l, m


class VersionMismatch(Error):
    """Table cache file has an unsupported format version."""


class CorruptTable(Error):
    """Table cache file failed its checksum or structural checks."""


class FieldMismatch(Error):
    """Table cache file holds a different field than requested."""


class BudgetExceeded(Error):
    def __init__(self, needed, budget):
        super().__init__(f"enumeration needs {needed} steps, budget is {budget}")
        self.needed, self.budget = needed, budget


class UnsupportedDistance(Error):
    """Bound helper called with a distance it does not cover."""


class InconsistentDistribution(Error):
    """Power-moment equations have no non-negative integer solution."""


class InvalidBasis(Error):
    """Proposed basis is not linearly independent over the prime field."""


class OddCharacteristic(Error):
    """Operation requires characteristic 2."""


class EvenCharacteristic(Error):
    """Operation requires odd characteristic."""


class EvenM(Error):
    """Operation requires odd extension degree."""


class NonzeroAtZero(Error):
    """Operation requires f(0) = 0."""


class ZeroArgument(Error):
    """Multiplicative-group operation applied to zero."""


class NotApplicable(Error):
    def __init__(self, what, detail=""):
        msg = f"{what} is not applicable" + (f": {detail}" if detail else "")
        super().__init__(msg)
        self.what, self.detail = what, detail


class ValidationFailed(Error):
    """A catalog polynomial failed its validity check."""
