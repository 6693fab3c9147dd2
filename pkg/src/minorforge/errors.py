"""Exception hierarchy shared by all modules.

The CLI maps these onto exit codes: bad input / unsupported ring -> 2,
a failed decision or missing representation -> 1, and an internal
consistency failure (a condition the underlying theorems guarantee
cannot occur on valid input) -> 3.
"""


class MinorForgeError(Exception):
    pass


class InputError(MinorForgeError, ValueError):
    """Malformed or out-of-contract input (bad ring string, wrong shape, ...)."""


class RingMismatchError(InputError):
    """Values or containers from different coefficient domains were combined."""


class UnsupportedRingError(InputError):
    """The requested procedure is not established over this ring (GF(3) for
    the hyperdeterminant criterion)."""


class DegenerateOrbitError(MinorForgeError):
    """The acted polynomial has leading coefficient zero, so no rescaling
    back into the image exists."""


class NoRepresentationError(MinorForgeError):
    """A determinantal representation was requested for a polynomial whose
    Rayleigh differences are not all squares."""

    def __init__(self, pair, delta):
        self.pair = pair
        self.delta = delta
        super().__init__(
            "Rayleigh difference for variable pair %s is not a square" % (pair,)
        )


class InternalInconsistencyError(MinorForgeError):
    """Reached a state the supporting theorems exclude for valid input;
    indicates an implementation bug or a corrupted certificate."""
