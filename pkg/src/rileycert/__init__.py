"""Riley polynomials of two-bridge knots and machine-checkable certificates
that cyclic branched covers are left-orderable, via bracketed roots y_n > 2
of phi_K(2cos(pi/n), y)."""

__version__ = "0.1.0"

from .dyadic import Dyadic, DyadicInterval  # noqa: E402
from .polyring import (SYPoly, XYPoly, compose_univariate, eval_interval,  # noqa: E402
                       leading_y_term, symmetric_rewrite)
from .chebyshev import (cheb_eval, cheb_poly, cheb_root_enclosures,  # noqa: E402
                        sl2_power, solve_recurrence)
from .knots import (DoubleTwistKnot, KlKnot, TwoBridgeFraction, Word,  # noqa: E402
                    hm_reduce, kl_fraction, run_length, sign_sequence,
                    word_double_twist, word_from_signs, word_kl)
from .riley import (RileyPolynomial, alpha_dt, lambda_dt, riley_double_twist,  # noqa: E402
                    riley_for_knot, riley_generic, riley_kl)
from .certify import (RootCertificate, ScanReport, find_root_gt2, lo_set,  # noqa: E402
                      solve_lambda_witness, verify_certificate,
                      witness_plan_for, xn_enclosure)

__all__ = [
    "Dyadic", "DyadicInterval",
    "SYPoly", "XYPoly", "compose_univariate", "eval_interval",
    "leading_y_term", "symmetric_rewrite",
    "cheb_eval", "cheb_poly", "cheb_root_enclosures", "sl2_power",
    "solve_recurrence",
    "DoubleTwistKnot", "KlKnot", "TwoBridgeFraction", "Word",
    "hm_reduce", "kl_fraction", "run_length", "sign_sequence",
    "word_double_twist", "word_from_signs", "word_kl",
    "RileyPolynomial", "alpha_dt", "lambda_dt", "riley_double_twist",
    "riley_for_knot", "riley_generic", "riley_kl",
    "RootCertificate", "ScanReport", "find_root_gt2", "lo_set",
    "solve_lambda_witness", "verify_certificate", "witness_plan_for",
    "xn_enclosure",
]
