"""Grand Lebesgue Space norms, sharp Sobolev/trace constants, and numerical
verification of the associated functional inequalities."""

from .constants import (ConstantResult, bradley_B_power, bradley_Q, talenti,
                        trace_upper, trace_upper_besov, trace_upper_bradley)
from .errors import (ConfigError, DivergenceError, DomainError,
                     UnsupportedConfigurationError)
from .exponents import Setting, dilation_balance, p_of_q, p_range, q_of_p
from .gls import (GlsNormResult, PsiFunction, constant_psi, gls_norm,
                  natural_psi, nu_transform, power_blowup, tabulated_psi,
                  theta_transform, zeta_transform)
from .hardy import (HardyCheckResult, WeightPair, bradley_B_sup, custom_weights,
                    hardy_check, j1, j2, power_weights, trace_power_weights)
from .radial import (NormResult, RadialProfile, bump_profile, custom_profile,
                     dilate, gaussian_profile, grad_lp_norm, logpow_grad_norm_closed,
                     logpow_norm_closed, logpow_profile, lp_norm_quad,
                     scale_profile, trace_restrict, weighted_trace_norm_closed,
                     weighted_trace_norm_quad)
from .sharpness import (SweepRecord, ratio_limit_ordinary, ratio_ordinary,
                        ratio_trace, richardson_limit, sweep, v000,
                        verify_gls_theorem1, verify_sobolev)
from .specfun import LogValue, log_gamma, sphere_measure

__version__ = "0.1.0"
