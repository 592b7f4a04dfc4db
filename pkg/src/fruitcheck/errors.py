"""Exception types shared across the package."""


class DomainError(ValueError):
    """An input lies outside the domain of an operation."""


class UnsupportedPrime(DomainError):
    """No degree-1 unramified residue map exists for the requested prime."""


class PrecisionError(DomainError):
    """The 2-adic root is not known to enough bits for the requested modulus."""


class CostCapExceeded(RuntimeError):
    """A box search would evaluate more tuples than the configured cap."""

    def __init__(self, estimate: int, cap: int):
        self.estimate = estimate
        self.cap = cap
        super().__init__(
            f"search refused: {estimate} tuples to evaluate exceeds cost cap {cap}"
        )
