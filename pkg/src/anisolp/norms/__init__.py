"""Sobolev, horizontal Besov, log-weighted, mixed and heat-flow norms."""

from anisolp.norms.besov import besov_h_norm, besov_h_slice_norms
from anisolp.norms.heat import heat_besov_l2, heat_besov_sup
from anisolp.norms.mixed import mixed_norm
from anisolp.norms.sobolev import hs_norm_3d, hs_slice_norm, hs_slice_norms, log_weighted_norm

__all__ = [
    "besov_h_norm",
    "besov_h_slice_norms",
    "heat_besov_l2",
    "heat_besov_sup",
    "hs_norm_3d",
    "hs_slice_norm",
    "hs_slice_norms",
    "log_weighted_norm",
    "mixed_norm",
]
