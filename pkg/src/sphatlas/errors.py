"""Exception types shared across the package."""


class SphatlasError(Exception):
    """Base class for all package errors."""


class DivisionByZero(SphatlasError):
    pass


class NonSquare(SphatlasError):
    pass


class UnsupportedType(SphatlasError):
    pass


class UnsupportedGroup(SphatlasError):
    pass


class NotARoot(SphatlasError):
    pass


class MixedRootSystems(SphatlasError):
    pass


class GroupTooLarge(SphatlasError):
    """Exhaustive Weyl group enumeration refused (order above the cap)."""


class KindUnavailable(SphatlasError):
    pass


class CascadeUnavailable(SphatlasError):
    pass


class BadRank(SphatlasError):
    pass


class NotInGroup(SphatlasError):
    """Matrix fails the determinant or bilinear-form membership test."""


class NotInWeylImage(SphatlasError):
    """Signed permutation outside the Weyl group of the context."""


class NotUnipotent(SphatlasError):
    pass


class IncompatibleRecipe(SphatlasError):
    pass


class WrongFamily(SphatlasError):
    pass


class NotOrthogonal(SphatlasError):
    pass


class NoMatrixModel(SphatlasError):
    """The class label has no classical matrix construction."""


class PreconditionViolated(SphatlasError):
    pass


class ParseError(SphatlasError):
    pass


class IncomparableMaxima(SphatlasError):
    """Sampled Bruhat cells admit no maximum; carries the maximal cells seen."""

    def __init__(self, maxima):
        self.maxima = list(maxima)
        words = [m.reduced_word() for m in self.maxima]
        super().__init__(f"no Bruhat maximum among sampled cells; maxima: {words}")
