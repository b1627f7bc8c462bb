"""Exception types raised across the package."""


class SegreCubeError(Exception):
    """Base class for every error raised by segrecube."""


class ZeroVector(SegreCubeError, ValueError):
    pass


class NotPowerOfTwo(SegreCubeError, ValueError):
    pass


class NotNormalized(SegreCubeError, ValueError):
    pass


class BadPauliIndex(SegreCubeError, ValueError):
    pass


class ImaginaryResidueTooLarge(SegreCubeError, ArithmeticError):
    """A Hermitian expectation came back with a sizeable imaginary part."""


class BadCut(SegreCubeError, ValueError):
    pass


class BadPermutation(SegreCubeError, ValueError):
    pass


class MixedArity(SegreCubeError, ValueError):
    pass


class ZeroState(SegreCubeError, ValueError):
    pass


class BadEngine(SegreCubeError, ValueError):
    pass


class ShapeMismatch(SegreCubeError, ValueError):
    pass


class InconsistentCuts(SegreCubeError, ArithmeticError):
    """Vanishing observables did not yield rank-1 factors; usually a badly tuned epsilon."""


class TooLarge(SegreCubeError, ValueError):
    pass
