"""Exception types shared across the package."""


class HomeolabError(Exception):
    """Base class for all errors raised by homeolab."""


class UnknownVertex(HomeolabError):
    pass


class DuplicateVertex(HomeolabError):
    pass


class SimplexNotInComplex(HomeolabError):
    pass


class NameCollision(HomeolabError):
    pass


class InvalidParameter(HomeolabError):
    pass


class NotASubcomplex(HomeolabError):
    pass


class NotAComplex(HomeolabError):
    """Consecutive differentials do not compose to zero."""


class NotASubgroup(HomeolabError):
    pass


class WrongVariant(HomeolabError):
    pass


class NotOrientable(HomeolabError):
    pass


class InvalidBlockComplex(HomeolabError):
    pass


class NotSimplicial(HomeolabError):
    def __init__(self, simplex, message=None):
        self.simplex = simplex
        super().__init__(message or f"image of {simplex} is not a simplex of the target")


class NotSolid(HomeolabError):
    def __init__(self, simplex, message=None):
        self.simplex = simplex
        super().__init__(message or f"map collapses the simplex {simplex}")


class NotMonotone(HomeolabError):
    pass


class PageMismatch(HomeolabError):
    pass


class NonFieldCoefficients(HomeolabError):
    pass
