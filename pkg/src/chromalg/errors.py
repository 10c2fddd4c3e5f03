"""Exception taxonomy shared by all chromalg modules."""


class ChromalgError(Exception):
    """Base class for all library errors."""


# -- scalar / linear algebra --------------------------------------------------

class DomainMismatch(ChromalgError):
    pass


class DivisionByNonUnit(ChromalgError):
    pass


# -- rings and series ---------------------------------------------------------

class RingMismatch(ChromalgError):
    pass


class DegreeMismatch(ChromalgError):
    pass


class ImageOfInvertedNotUnit(ChromalgError):
    pass


class UnsupportedPresentation(ChromalgError):
    pass


class NonzeroConstantTerm(ChromalgError):
    pass


class LeadingCoefficientNotUnit(ChromalgError):
    pass


# -- formal group laws --------------------------------------------------------

class TorsionBase(ChromalgError):
    pass


class TruncationTooSmall(ChromalgError):
    pass


# -- Hopf algebroids ----------------------------------------------------------

class NotInvariant(ChromalgError):
    pass


# -- comodules ----------------------------------------------------------------

class InvalidCocycle(ChromalgError):
    pass


class InvalidCoaction(ChromalgError):
    pass


class WindowExceeded(ChromalgError):
    pass


class NonConnectiveBase(ChromalgError):
    pass


# -- Landweber / classification -----------------------------------------------

class Undecidable(ChromalgError):
    pass


class NotLandweberExact(ChromalgError):
    pass


class UnclassifiedAlgebra(ChromalgError):
    pass


# -- output -------------------------------------------------------------------

class EmptyTable(ChromalgError):
    pass


class InputError(ChromalgError):
    """Malformed user input (files, flags, poly strings)."""
