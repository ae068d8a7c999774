"""Foundation numeric types and stable elementary helpers.

Everything downstream works on plain Python complex scalars. This module
adds the few things the standard library does not give us directly: guarded
principal-branch wrappers, a complex expm1 that keeps full relative accuracy
near 0, exact real-coefficient polynomial arithmetic, and the shared result
record for function evaluations.

All operations are pure; nothing here holds mutable state.
"""

from __future__ import annotations

import cmath
from dataclasses import dataclass, field


class DomainError(ValueError):
    """Input outside the contract domain of an operation."""


class StructuralError(RuntimeError):
    """An internal algebraic invariant failed (indicates a bug, not bad input)."""


class ConvergenceError(RuntimeError):
    """An iteration failed to converge within its term budget."""


# ---------------------------------------------------------------------------
# complex scalar helpers (principal branches throughout)
# ---------------------------------------------------------------------------

def cdiv(x, y):
    """x / y with a domain error on division by exact zero."""
    y = complex(y)
    if y == 0:
        raise DomainError("division by zero")
    return complex(x) / y


def csqrt(w):
    """Principal square root: the root with nonnegative real part."""
    return cmath.sqrt(complex(w))


def clog(w):
    """Principal logarithm, Arg in (-pi, pi]; log(0) is a domain error."""
    w = complex(w)
    if w == 0:
        raise DomainError("log of zero")
    return cmath.log(w)


def cexp(w):
    return cmath.exp(complex(w))


def cpow(w, p):
    """w**p as exp(p*log w) on the principal branch; 0**p only for Re p > 0."""
    w = complex(w)
    p = complex(p)
    if w == 0:
        if p.real > 0:
            return 0j
        raise DomainError("0**p with Re p <= 0")
    return cmath.exp(p * cmath.log(w))


def cexpm1(w):
    """exp(w) - 1 with full relative accuracy for small |w|.

    Uses the Taylor series for |w| < 0.5 and exp(w) - 1 directly otherwise.
    """
    w = complex(w)
    if abs(w) >= 0.5:
        return cmath.exp(w) - 1.0
    s = 0j
    t = 1.0 + 0j
    n = 1
    while True:
        t *= w / n
        s += t
        if abs(t) <= 1e-18 * abs(s) and n >= 3:
            return s
        n += 1
        if n > 40:  # unreachable for |w| < 0.5
            return s


def phi1(w):
    """(exp(w) - 1)/w, the removable-singularity-safe ratio; phi1(0) = 1."""
    w = complex(w)
    if w == 0:
        return 1.0 + 0j
    return cexpm1(w) / w


# ---------------------------------------------------------------------------
# real polynomials, ascending coefficient order
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class RealPolynomial:
    """Polynomial with real coefficients, coeffs[i] multiplying x**i."""

    coeffs: tuple = (0.0,)

    @staticmethod
    def of(seq) -> "RealPolynomial":
        return RealPolynomial(_trim(tuple(float(c) for c in seq)))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __call__(self, x):
        s = 0.0
        for c in reversed(self.coeffs):
            s = s * x + c
        return s

    def derivative(self) -> "RealPolynomial":
        if len(self.coeffs) == 1:
            return RealPolynomial((0.0,))
        return RealPolynomial(_trim(tuple(i * c for i, c in enumerate(self.coeffs) if i > 0)))

    def antiderivative(self) -> "RealPolynomial":
        """Antiderivative with integration constant fixed to 0."""
        return RealPolynomial(_trim((0.0,) + tuple(c / (i + 1) for i, c in enumerate(self.coeffs))))

    def divide_by_var(self) -> "RealPolynomial":
        """p(x)/x; requires a structurally zero constant term."""
        if abs(self.coeffs[0]) > 1e-300:
            raise StructuralError("divide_by_var with nonzero constant term")
        if len(self.coeffs) == 1:
            return RealPolynomial((0.0,))
        return RealPolynomial(_trim(self.coeffs[1:]))

    def shift_up(self, k: int) -> "RealPolynomial":
        """p(x) * x**k."""
        return RealPolynomial(_trim((0.0,) * k + self.coeffs))

    def scaled(self, s: float) -> "RealPolynomial":
        return RealPolynomial(_trim(tuple(s * c for c in self.coeffs)))

    def __add__(self, other: "RealPolynomial") -> "RealPolynomial":
        n = max(len(self.coeffs), len(other.coeffs))
        a = self.coeffs + (0.0,) * (n - len(self.coeffs))
        b = other.coeffs + (0.0,) * (n - len(other.coeffs))
        return RealPolynomial(_trim(tuple(x + y for x, y in zip(a, b))))

    def __mul__(self, other: "RealPolynomial") -> "RealPolynomial":
        out = [0.0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a == 0.0:
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return RealPolynomial(_trim(tuple(out)))


def _trim(coeffs: tuple) -> tuple:
    n = len(coeffs)
    while n > 1 and coeffs[n - 1] == 0.0:
        n -= 1
    return coeffs[:n]


def poly_calc(p: RealPolynomial, op: str, *args) -> RealPolynomial:
    """Dispatch wrapper over the RealPolynomial methods.

    op is one of derivative | antiderivative | divide_by_z | scale | add | mul.
    """
    if op == "derivative":
        return p.derivative()
    if op == "antiderivative":
        return p.antiderivative()
    if op == "divide_by_z":
        return p.divide_by_var()
    if op == "scale":
        return p.scaled(args[0])
    if op == "add":
        return p + args[0]
    if op == "mul":
        return p * args[0]
    raise DomainError(f"unknown polynomial op {op!r}")


# ---------------------------------------------------------------------------
# shared evaluation record
# ---------------------------------------------------------------------------

@dataclass
class EvalOutcome:
    """Result of a function evaluation with convergence metadata.

    u_prime is None when the method does not produce the derivative.
    flags may contain "shifted_a", "near_integer_b", "truncated" and
    "negative_axis_z".
    """

    u: complex
    u_prime: complex | None = None
    terms_used: int = 0
    est_abs_error: float = 0.0
    method: str = ""
    flags: set = field(default_factory=set)
