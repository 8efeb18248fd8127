"""Exception hierarchy shared across the package."""


class PercohError(Exception):
    """Base class for all package errors."""


class BoundExceededError(PercohError):
    """A constructed group would pass the configured order bound."""


class BudgetExceededError(PercohError):
    """A search budget (coset limit, isomorphism node budget) was exhausted."""


class InvalidPermutationError(PercohError):
    """An image array is not a bijection on its domain."""


class NotNormalError(PercohError):
    """Quotient requested by a subgroup that is not normal."""


class ActionNotHomomorphicError(PercohError):
    """A semidirect-product action fails the homomorphism law."""


class ActionNotAutomorphismError(PercohError):
    """A semidirect-product action value is not an automorphism."""


class PresentationSyntaxError(PercohError):
    """Presentation text violates the grammar.

    `position` is the 0-based character offset of the offending token.
    """

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at position {position})")
        self.position = position


class UnknownGeneratorError(PresentationSyntaxError):
    """A word references a generator that was never declared."""


class RelatorViolationError(PercohError):
    """A realized group fails one of its own relators; indicates a bug."""


class NoSuitablePrimeError(PercohError):
    """No prime p ≡ 1 (mod exponent) with p > |G| below 2^31."""


class SplitFailureError(PercohError):
    """Eigenspace splitting did not reach one-dimensional subspaces; indicates a bug."""


class LiftFailureError(PercohError):
    """A modular residue has no lift in {-1, 0, 1}; indicates a bug."""


class PropositionViolationError(PercohError):
    """A runtime cross-check of an established equivalence failed; indicates a bug."""


class UnclassifiedFamilyError(PercohError):
    """A 4-periodic group with m_H <= 2 matched no classification family."""


class BadParametersError(PercohError):
    """Constructor parameters violate a family's domain constraints."""
