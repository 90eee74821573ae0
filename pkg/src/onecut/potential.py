"""External fields: even polynomial potentials and varying-Jacobi fields.

Two families are supported:

* polynomial fields ``V(x) = sum c_k x^k`` with even degree >= 2 and a
  positive leading coefficient, so that the weight ``exp(-n V)`` decays
  faster than any power;
* Jacobi fields ``V(x) = -A log(1-x) - B log(1+x)`` on (-1, 1), whose
  weight is ``(1-x)^(A n) (1+x)^(B n)``.
"""

from __future__ import annotations

from dataclasses import dataclass

from mpmath import mp

from .errors import DomainError
from .precision import working_precision
from .series import poly_derivative, poly_eval

POLYNOMIAL = "poly"
JACOBI = "jacobi"


@dataclass(frozen=True)
class Potential:
    """Immutable description of the external field.

    ``poly_coeffs`` are ascending-degree mpmath reals (polynomial family
    only); ``jacobi_A``/``jacobi_B`` are the positive Jacobi exponents.
    """

    kind: str
    poly_coeffs: tuple = ()
    jacobi_A: object = None
    jacobi_B: object = None

    def __post_init__(self):
        if self.kind == POLYNOMIAL:
            coeffs = self.poly_coeffs
            deg = len(coeffs) - 1
            while deg > 0 and coeffs[deg] == 0:
                deg -= 1
            if deg < 2:
                raise DomainError("polynomial field needs degree >= 2")
            if deg % 2 != 0:
                raise DomainError("polynomial field needs even degree")
            if coeffs[deg] <= 0:
                raise DomainError("polynomial field needs a positive leading coefficient")
            object.__setattr__(self, "poly_coeffs", tuple(coeffs[: deg + 1]))
        elif self.kind == JACOBI:
            if self.jacobi_A is None or self.jacobi_B is None:
                raise DomainError("jacobi field needs both exponents")
            if not (self.jacobi_A > 0 and self.jacobi_B > 0):
                raise DomainError("jacobi field needs A > 0 and B > 0")
        else:
            raise DomainError(f"unknown potential kind {self.kind!r}")

    @property
    def degree(self) -> int:
        if self.kind != POLYNOMIAL:
            raise DomainError("degree only defined for polynomial fields")
        return len(self.poly_coeffs) - 1

    def is_even(self) -> bool:
        """True when V(x) = V(-x)."""
        if self.kind == POLYNOMIAL:
            return all(c == 0 for c in self.poly_coeffs[1::2])
        return self.jacobi_A == self.jacobi_B

    def spec(self) -> str:
        """Round-trippable text form (see parse_potential)."""
        if self.kind == POLYNOMIAL:
            return "poly:" + ",".join(mp.nstr(c, 30) for c in self.poly_coeffs)
        return f"jacobi:{mp.nstr(self.jacobi_A, 30)},{mp.nstr(self.jacobi_B, 30)}"


def polynomial_potential(coeffs, prec: int | None = None) -> Potential:
    """Build a polynomial field from decimal strings / numbers (ascending)."""
    with working_precision(prec):
        vals = tuple(mp.mpf(c) if not hasattr(c, "_mpf_") else c for c in coeffs)
    return Potential(kind=POLYNOMIAL, poly_coeffs=vals)


def jacobi_potential(A, B, prec: int | None = None) -> Potential:
    with working_precision(prec):
        a_val = mp.mpf(A) if not hasattr(A, "_mpf_") else A
        b_val = mp.mpf(B) if not hasattr(B, "_mpf_") else B
    return Potential(kind=JACOBI, jacobi_A=a_val, jacobi_B=b_val)


def parse_potential(text: str, prec: int | None = None) -> Potential:
    """Parse ``poly:c0,c1,...,cd`` or ``jacobi:A,B``.

    Decimal literals use '.' regardless of locale (mpmath parsing).
    """
    head, sep, rest = text.partition(":")
    if not sep:
        raise DomainError(f"potential spec {text!r} is missing the family prefix")
    parts = [p.strip() for p in rest.split(",") if p.strip()]
    try:
        if head == POLYNOMIAL:
            return polynomial_potential(parts, prec=prec)
        if head == JACOBI:
            if len(parts) != 2:
                raise DomainError("jacobi spec needs exactly two parameters")
            return jacobi_potential(parts[0], parts[1], prec=prec)
    except ValueError as exc:
        raise DomainError(f"could not parse potential spec {text!r}: {exc}") from exc
    raise DomainError(f"unknown potential family {head!r}")


def _check_jacobi_domain(p: Potential, x):
    if abs(x) >= 1:
        raise DomainError(f"jacobi field is only defined on (-1, 1), got x = {mp.nstr(x, 10)}")


def eval_V(p: Potential, x):
    """Value of the external field at a real point."""
    if p.kind == POLYNOMIAL:
        return poly_eval(p.poly_coeffs, x)
    _check_jacobi_domain(p, x)
    return -p.jacobi_A * mp.log(1 - x) - p.jacobi_B * mp.log(1 + x)


def eval_Vprime(p: Potential, x):
    """Exact derivative of the field; for Jacobi, A/(1-x) - B/(1+x)."""
    if p.kind == POLYNOMIAL:
        return poly_eval(poly_derivative(list(p.poly_coeffs)), x)
    _check_jacobi_domain(p, x)
    return p.jacobi_A / (1 - x) - p.jacobi_B / (1 + x)


def vprime_coeffs(p: Potential):
    """Ascending coefficients of V' (polynomial fields only)."""
    if p.kind != POLYNOMIAL:
        raise DomainError("vprime_coeffs only defined for polynomial fields")
    return poly_derivative(list(p.poly_coeffs))
