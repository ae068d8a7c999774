"""Kummer function U(a,b,z) and its z-derivative for small arguments.

Three independent evaluation routes with built-in cross-validation:

* ``powerseries`` - paired power series, uniformly stable as b -> 0;
* ``slater``      - large-a asymptotics in modified Bessel functions;
* ``convergent``  - convergent Bessel-type expansion with forward
  recurrences and a backward stability probe;

supported by ``gammakit`` (reciprocal gamma, the G difference function with
series and contour-quadrature routes) and ``besselkit`` (I/K Bessel).
"""

from .numcore import (ConvergenceError, DomainError, EvalOutcome,
                      RealPolynomial, StructuralError, cexpm1)
from .gammakit import (EULER_GAMMA, QuadratureSpec, ReciprocalGammaTable,
                       RECIP_GAMMA_COEFFS, g_quadrature, g_resolve, g_series,
                       g_shift, gamma_eps, gamma_fn, generate_ck, recip_gamma,
                       zeta)
from .besselkit import bessel_i, bessel_k
from .powerseries import (KummerInput, eval_u, kummer_m_direct, raise_b,
                          series_step_coeffs, shift_a_down, u_prime_small_z,
                          u_small_z, w0)
from .slater import SlaterCoeffSet, SlaterEval, slater_coeffs, slater_m, slater_u
from .convergent import (ABCoefficients, FiveTermRow, ProbeReport,
                         backward_probe, eval_AB, five_term_coeffs,
                         forward_coeffs, init_alpha_beta, m_bessel_convergent,
                         u_bessel_convergent)

__version__ = "0.1.0"

__all__ = [
    "ABCoefficients", "ConvergenceError", "DomainError", "EULER_GAMMA",
    "EvalOutcome", "FiveTermRow", "KummerInput", "ProbeReport",
    "QuadratureSpec", "RECIP_GAMMA_COEFFS", "RealPolynomial",
    "ReciprocalGammaTable", "SlaterCoeffSet", "SlaterEval", "StructuralError",
    "backward_probe", "bessel_i", "bessel_k", "cexpm1", "eval_AB", "eval_u",
    "five_term_coeffs", "forward_coeffs", "g_quadrature", "g_resolve",
    "g_series", "g_shift", "gamma_eps", "gamma_fn", "generate_ck",
    "init_alpha_beta", "kummer_m_direct", "m_bessel_convergent", "raise_b",
    "recip_gamma", "series_step_coeffs", "shift_a_down", "slater_coeffs",
    "slater_m", "slater_u", "u_bessel_convergent", "u_prime_small_z",
    "u_small_z", "w0", "zeta",
]
