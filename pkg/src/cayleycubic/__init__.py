"""Exact point counting and constant verification for the Cayley ruled cubic.

The surface t0*t1*t2 - t0^2*t3 - t1^3 = 0 in P^3 carries a ruling by
lines; this package counts its rational points of bounded height exactly
(two independent algorithms), evaluates the leading constant of the
quadratic growth law by three routes (line series, Tamagawa densities,
Poisson summation with exact p-adic and archimedean Fourier factors),
and cross-checks everything in a verification harness.
"""

from .geometry import (GroupPoint, LineIndex, LineParam, ProjPoint, ScrollPoint,
                       cubic_form, discriminant_f, embed_group_point, group_act,
                       group_add, group_neg, is_on_v, line_det, line_of_point,
                       param_line, phi, phi_inverse_on_v, quad_form_of_line)
from .heights import HeightBound, height_affine, height_proj, padic_abs
from .enumeration import (count_affine_integers, count_by_lines, count_direct,
                          count_line, enumerate_direct, enumerate_line, z_partial)
from .constants import (BT_INVARIANTS, bt_constant, local_density,
                        omega_inf_closed, omega_inf_quad, predicted_constant,
                        series_s_half, tamagawa_line, zeta_const)
from .local_zeta import (CharIndex, PadicTruncation, cos_fourier_integral, e_m,
                         hhat_inf, hhat_p_annulus, hhat_p_closed,
                         hhat_p_components, hhat_p_grid_oracle, poisson_constant,
                         poisson_identity_check, sigma_minus2, t_h_integral,
                         unit_integral)
from .report import VerifyReport, run_verify

__version__ = "0.1.0"

__all__ = [
    "GroupPoint", "LineIndex", "LineParam", "ProjPoint", "ScrollPoint",
    "cubic_form", "discriminant_f", "embed_group_point", "group_act",
    "group_add", "group_neg", "is_on_v", "line_det", "line_of_point",
    "param_line", "phi", "phi_inverse_on_v", "quad_form_of_line",
    "HeightBound", "height_affine", "height_proj", "padic_abs",
    "count_affine_integers", "count_by_lines", "count_direct", "count_line",
    "enumerate_direct", "enumerate_line", "z_partial",
    "BT_INVARIANTS", "bt_constant", "local_density", "omega_inf_closed",
    "omega_inf_quad", "predicted_constant", "series_s_half", "tamagawa_line",
    "zeta_const",
    "CharIndex", "PadicTruncation", "cos_fourier_integral", "e_m", "hhat_inf",
    "hhat_p_annulus", "hhat_p_closed", "hhat_p_components",
    "hhat_p_grid_oracle", "poisson_constant", "poisson_identity_check",
    "sigma_minus2", "t_h_integral", "unit_integral",
    "VerifyReport", "run_verify",
]
