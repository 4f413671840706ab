"""Walrasian equilibria of unit-demand assignment markets: demand analysis,
a monotone price-adjusting map on the discrete price lattice, and Tarski
iteration to the extreme equilibrium price vectors.
"""

__version__ = "0.1.0"

from .analysis import (
    DemandCertificate,
    WECheck,
    check_we,
    check_we_by_characterization,
    demanders,
    exclusive_demanders,
    exists_overdemanded,
    exists_underdemanded,
    is_minimally_overdemanded,
    is_minimally_underdemanded,
    is_overdemanded,
    is_underdemanded,
    mplus,
)
from .fixedpoint import (
    ConvergenceError,
    EquilibriumReport,
    IterationTrace,
    LatticeCertificate,
    Prop2Report,
    enumerate_fixed_points,
    enumerate_we,
    equilibrium_report,
    fixed_point_we_comparison,
    greatest_fixed_point,
    iterate_from,
    lattice_check,
    least_fixed_point,
)
from .generator import random_market, random_suite
from .model import (
    DUMMY,
    Market,
    MarketError,
    demand,
    join,
    load_market,
    make_market,
    market_doc,
    meet,
    price_cap,
)
from .pricemap import Region, apply_f, apply_f_coord, classify_region
from .tipping import SearchBudgetError, TippingEngine, TippingProfile

__all__ = [name for name in dir() if not name.startswith("_")]
