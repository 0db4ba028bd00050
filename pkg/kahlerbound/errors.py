"""Exception hierarchy. Verification failures are reported, never raised."""


class KahlerBoundError(Exception):
    pass


class DomainError(KahlerBoundError, ValueError):
    """A parameter lies outside the documented domain of an operation."""


class AdmissibilityError(DomainError):
    """The mixing parameter k violates (a18') or leaves the admissible interval."""


class DegenerateDomainError(DomainError):
    pass


class CatalogError(KahlerBoundError, KeyError):
    """Unknown expression or identity name, or an unbound variable."""

    def __str__(self) -> str:
        return str(self.args[0]) if self.args else "catalog error"


class SolverError(KahlerBoundError, RuntimeError):
    pass
