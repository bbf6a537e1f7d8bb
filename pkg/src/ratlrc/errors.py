"""Exception types shared across the package."""


class FieldMismatch(ValueError):
    """Operands belong to different fields."""


class CapExceeded(ValueError):
    """A desk-scale cap was hit; the operation refuses to degrade silently."""


class ZeroDenominator(ValueError):
    """Rational map with zero denominator."""


class DegreeZero(ValueError):
    """Rational map reduces to a constant."""


class Inseparable(ValueError):
    """Rational map defines an inseparable covering of the projective line."""


class AffineGenerator(ValueError):
    """Transform fixes the point at infinity, so the iterate-sum construction degenerates."""


class OrderOne(ValueError):
    """Transform is the identity."""


class EvenCharacteristic(ValueError):
    """Construction requires odd field size."""


class TheoremViolation(RuntimeError):
    """A verified structural invariant failed; should never fire."""


class NoErasure(ValueError):
    """Repair called on a complete codeword."""


class MultipleErasures(ValueError):
    """Repair handles exactly one erased coordinate."""
