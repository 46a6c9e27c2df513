"""Coverage and mobility-aware throughput for a single-tier PPP downlink
under best-connected association and cooperative handover skipping."""

__version__ = "0.1.0"

from .model import (  # noqa: F401
    Association,
    MobilityParams,
    NetworkParams,
    OrderedDistances,
    OverheadParams,
    SchemeSpec,
    SinrThreshold,
    db_to_linear,
    linear_to_db,
    validate_scheme,
)
