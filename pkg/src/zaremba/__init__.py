"""The continuant sequence kappa of bounded partial quotients, as a k-regular sequence.

Modules: ``linrep`` (digit words, matrix products), ``kappa`` (fast tables and
growth), ``series`` (exact series and functional equations), ``spectrum``
(eigenvalue and radial asymptotics), ``omega`` (roots-of-unity factor),
``sums`` (partial sums, Takagi function) and ``cli``.
"""

from ._limits import ResourceLimitError
from .kappa import KappaTable, continuant, growth_report, kappa_range
from .linrep import DigitWord, LinearRep, eval_rep, kappa_rep, to_digits
from .omega import RootIndex, build_omega, check_omega_fe, check_weight_identity, omega_radial_estimate
from .series import IntSeries, check_homogeneous, check_mfe, kappa_series, mul, relation_probe, upsample
from .spectrum import alpha, char_poly, check_scaling, gamma, radial_profile
from .sums import export_comparison, oscillation_profile, partial_sums, takagi

__version__ = "0.1.0"
