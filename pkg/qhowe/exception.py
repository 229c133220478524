class HoweException(Exception):
    """Base exception class for all errors
    """

    pass


class BadValue(HoweException):
    pass


class NotFound(HoweException):
    pass


class InexactDivision(HoweException):
    """Raised when a Laurent polynomial division leaves a remainder

    Outside :func:`qhowe.exactla.solve`, which raises it without logging
    for a target that has no coordinates in ``A``, every division the
    library performs is exact in theory and this points at a defect.
    """

    pass


class RankExceeded(HoweException):
    pass


class NotUnitriangular(HoweException):
    pass


class NegativeMultiplicity(HoweException):
    pass
