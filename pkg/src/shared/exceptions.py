"""
Shared exceptions for the END Optimizer application.
"""

from typing import Optional


class EndOptimizerException(Exception):
    """Base exception for END Optimizer."""

    def __init__(self, message: str, details: Optional[str] = None):
        self.message = message
        self.details = details
        super().__init__(self.message)


class DomainException(EndOptimizerException):
    """Domain layer exceptions."""
    pass


class ApplicationException(EndOptimizerException):
    """Application layer exceptions."""
    pass


class InfrastructureException(EndOptimizerException):
    """Infrastructure layer exceptions."""
    pass


class EntityNotFoundError(DomainException):
    """Raised when an entity is not found."""

    def __init__(self, entity_type: str, entity_id: str):
        super().__init__(f"{entity_type} with ID {entity_id} not found")


class ValidationError(DomainException):
    """Raised when domain validation fails."""
    pass


class BusinessRuleViolationError(DomainException):
    """Raised when a business rule is violated."""
    pass


class GraphNotUndirectedError(ValidationError):
    """Raised when an undirected graph is required but an edge has no reverse."""
    pass


class GraphDisconnectedError(ValidationError):
    """Raised when a connected graph is required."""
    pass


class GraphNotStronglyConnectedError(ValidationError):
    """Raised when a strongly connected graph is required."""
    pass


class MissingSelfLoopError(ValidationError):
    """Raised when a vertex lacks the self-loop a weight rule needs."""
    pass


class LayoutValidationError(BusinessRuleViolationError):
    """Raised when a layout violates the consistency requirements."""
    pass


class NotDifferentiableError(DomainException):
    """Raised when a gradient is requested from a nonsmooth cost."""
    pass


class MissingArgminOracleError(DomainException):
    """Raised when a cost cannot solve its local proximal subproblem."""
    pass


class UnsupportedProblemError(DomainException):
    """Raised when a solver does not handle the given problem class."""
    pass


class InnerSolverError(DomainException):
    """Raised when an inner numerical solve fails."""

    def __init__(self, message: str, residual: Optional[float] = None):
        self.residual = residual
        details = None if residual is None else f"residual={residual:.3e}"
        super().__init__(message, details)


class StochasticityViolationError(DomainException):
    """Raised when push-sum weights become non-positive."""
    pass


class ConditionsNotVerifiedError(BusinessRuleViolationError):
    """Raised when a convergence bound is requested without passing its conditions."""
    pass


class DivergenceError(DomainException):
    """Raised when iterates leave the monitored bounded region."""
    pass


class ScenarioGenerationError(ApplicationException):
    """Raised when no admissible random scenario is found."""
    pass


class IncompatibleExperimentError(ApplicationException):
    """Raised when an algorithm cannot run on the requested graphs."""
    pass


class SerializationError(InfrastructureException):
    """Raised when reading or writing a file fails."""

    def __init__(self, message: str, path: Optional[str] = None):
        self.path = path
        super().__init__(message, path)


class DatabaseError(InfrastructureException):
    """Raised when database operations fail."""
    pass
