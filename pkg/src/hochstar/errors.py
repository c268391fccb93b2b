"""Exception types raised by the quantization pipeline."""


class HochstarError(Exception):
    """Base class for library errors."""


class InvalidPoisson(HochstarError):
    """The bivector fails the Jacobi identity; ``residuals`` maps (i, j, k) -> Poly."""

    def __init__(self, residuals):
        self.residuals = dict(residuals)
        bad = ", ".join(
            f"({i + 1},{j + 1},{k + 1}): {r}" for (i, j, k), r in sorted(self.residuals.items())
        )
        super().__init__(f"Jacobi identity fails: {bad}")


class ObstructionError(HochstarError):
    """delta Phi = Psi has no solution on block ``l``.

    ``residual`` is the cochain (I - delta delta+) Psi, ``order`` the star-product
    order being solved when known.
    """

    def __init__(self, l, residual, p=None, order=None):
        self.l = tuple(l)
        self.residual = residual
        self.p = p
        self.order = order
        super().__init__(self._message())

    def _message(self):
        where = f" at order {self.order}" if self.order is not None else ""
        return (
            f"obstruction{where} on degree block l={list(self.l)}: "
            f"right-hand side is not in the image of delta "
            f"({len(self.residual)} residual terms); a different lower-order "
            f"cocycle choice may be required"
        )

    def with_order(self, order):
        return ObstructionError(self.l, self.residual, p=self.p, order=order)


class InvariantViolation(HochstarError):
    """An internal consistency check failed (a bug, not bad input)."""
