"""Exception hierarchy.

Every error raised by the library derives from :class:`UltrametricError`,
which is a :class:`ValueError`, so callers can catch broadly or narrowly.
"""


class UltrametricError(ValueError):
    pass


# -- validation ---------------------------------------------------------------

class MatrixShapeError(UltrametricError):
    pass


class DuplicatePointId(UltrametricError):
    def __init__(self, point):
        super().__init__(f"duplicate point id {point!r}")
        self.point = point


class NonzeroDiagonal(UltrametricError):
    def __init__(self, point, value):
        super().__init__(f"d({point},{point}) = {value}, expected 0")
        self.point = point
        self.value = value


class NonSymmetric(UltrametricError):
    def __init__(self, a, b, dab, dba):
        super().__init__(f"d({a},{b}) = {dab} but d({b},{a}) = {dba}")
        self.pair = (a, b)


class ZeroOffDiagonal(UltrametricError):
    def __init__(self, a, b, value):
        super().__init__(f"d({a},{b}) = {value}; distinct points need a positive distance")
        self.pair = (a, b)


class StrongTriangleViolation(UltrametricError):
    """``d(x, y) > max(d(x, z), d(z, y))`` for the reported triple ``(x, y, z)``."""

    def __init__(self, x, y, z, dxy, dxz, dzy):
        super().__init__(
            f"strong triangle inequality fails at ({x},{y},{z}): "
            f"d({x},{y}) = {dxy} > max({dxz}, {dzy})"
        )
        self.triple = (x, y, z)


# -- operation preconditions --------------------------------------------------

class SingletonSpace(UltrametricError):
    pass


class LevelNotInSpectrum(UltrametricError):
    pass


class EmptyGraph(UltrametricError):
    pass


class NotMultipartite(UltrametricError):
    """Raised with ``witness``: a pair of vertices breaking complete multipartiteness."""

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class UnknownLeaf(UltrametricError):
    pass


class SamePoint(UltrametricError):
    pass


class NotABijection(UltrametricError):
    pass


class NotInU(UltrametricError):
    pass


class CapExceeded(UltrametricError):
    pass


class MalformedCode(UltrametricError):
    pass


class NotStrictlyBinary(UltrametricError):
    pass


class NonPositiveEpsilon(UltrametricError):
    pass


class EpsilonTooLarge(UltrametricError):
    pass


class UnknownAnchor(UltrametricError):
    pass
