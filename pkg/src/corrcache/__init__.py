"""Coded caching with correlated content over a degraded Gaussian channel.

The library models N files assembled from shared subfiles, places coded
cache contents under a per-sublibrary memory split, builds the multicast
delivery schedule for every demand, and evaluates the transmit power needed
to deliver it, together with matching lower and closed form upper bounds.
"""

from .delivery import (
    GroupDemand,
    MessageLedger,
    XorMessage,
    build_user_messages,
    demand_rate_profile,
    group,
    rate_profile,
    requested_subfiles,
    single_demand,
)
from .experiment import (
    ConfigError,
    SweepResult,
    SweepRow,
    SweepSpec,
    baseline_ignorant,
    default_inv_gain_sq,
    load_config_file,
    point_config,
    render_csv,
    run_sweep,
    spec_from_config,
)
from .model import (
    AlphaProfile,
    DemandVector,
    LibraryConfig,
    binom,
    rates_from_alpha,
    sublibrary_subfiles,
)
from .placement import (
    CacheAllocation,
    CachePlacement,
    PacketId,
    PartSplit,
    build_placement,
    cache_parameters,
)
from .power import (
    ClosedFormBound,
    PowerReport,
    closed_form_power,
    closed_form_upper,
    enumerate_demands,
    lower_bound,
    lower_bound_rates,
    min_power,
    optimize_allocation,
    peak_power,
)
from .verifier import VerificationFailure, VerificationReport, decodable, verify_all

__all__ = [
    "AlphaProfile",
    "CacheAllocation",
    "CachePlacement",
    "ClosedFormBound",
    "ConfigError",
    "DemandVector",
    "GroupDemand",
    "LibraryConfig",
    "MessageLedger",
    "PacketId",
    "PartSplit",
    "PowerReport",
    "SweepResult",
    "SweepRow",
    "SweepSpec",
    "VerificationFailure",
    "VerificationReport",
    "XorMessage",
    "baseline_ignorant",
    "binom",
    "build_placement",
    "build_user_messages",
    "cache_parameters",
    "closed_form_power",
    "closed_form_upper",
    "decodable",
    "default_inv_gain_sq",
    "demand_rate_profile",
    "enumerate_demands",
    "group",
    "load_config_file",
    "lower_bound",
    "lower_bound_rates",
    "min_power",
    "optimize_allocation",
    "peak_power",
    "point_config",
    "rate_profile",
    "rates_from_alpha",
    "render_csv",
    "requested_subfiles",
    "run_sweep",
    "single_demand",
    "spec_from_config",
    "sublibrary_subfiles",
    "verify_all",
]

__version__ = "0.1.0"
