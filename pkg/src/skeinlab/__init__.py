"""Exact Kauffman bracket skein calculus for the disk and the annulus,
with a verifier for the Dehn twist along the annulus core written as the
exponential of a skein element."""

from .atlcalc import (ATLDiagram, ATLElement, StrandElement, boxtimes, compose, dehn_twist,
                      reduce_annulus, sigma, wrap_left, wrap_right)
from .chebseries import a_coefficients, arccosh_sq_series, cheb_T, t_plus_one, xc_truncated
from .conventions import DEFAULT_PROFILE, Profile
from .dehnverify import calibrate, log_twist, sigma_xc, verify_lemma421, verify_main, verify_twist_powers
from .diagram import MorseWord, components, delete_components, parse
from .exactnum import LaurentPoly, TruncBivariate, UniPoly
from .filtration import epsilon, finite_type_sum, star_element, valuation_algebra, valuation_strand
from .tlcalc import TLElement, TLMatching, bracket, reduce_disk, star_bracket

__version__ = "0.1.0"

__all__ = [
    "ATLDiagram", "ATLElement", "StrandElement", "boxtimes", "compose", "dehn_twist", "reduce_annulus", "sigma",
    "wrap_left", "wrap_right", "a_coefficients", "arccosh_sq_series", "cheb_T", "t_plus_one", "xc_truncated",
    "DEFAULT_PROFILE", "Profile", "calibrate", "log_twist", "sigma_xc", "verify_lemma421",
    "verify_twist_powers", "verify_main", "MorseWord", "components", "delete_components", "parse",
    "LaurentPoly", "TruncBivariate", "UniPoly", "epsilon", "finite_type_sum", "star_element",
    "valuation_algebra", "valuation_strand", "TLElement", "TLMatching", "bracket", "reduce_disk",
    "star_bracket",
]
