"""Numerical tools for multiplicative functions on Pythagorean configurations:
grid factorization of sums of two squares, pretentious distances,
concentration harnesses, counting oracles, weighted pair averages and
level-set triple searches."""

from .errors import InvalidArgument, ResourceLimit, Unsupported
from .factor_engine import (
    Factorization,
    GridFactorSieve,
    SpfTable,
    build_spf_table,
    factorize,
    grid_quadratic_factorize,
    r2,
    sqrt_minus_one,
)
from .multfunc import (
    AddFuncSpec,
    Archimedean,
    MultFuncSpec,
    One,
    combine,
    decompose,
    dirichlet_character,
    dth_root,
    evaluate,
    indicator_one_mean,
    liouville,
    modify_character,
    parse_spec,
    values_at,
)

__version__ = "0.1.0"
