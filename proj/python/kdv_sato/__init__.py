from ._core import (
    Contour,
    FlowSingularity,
    Symbol,
    __version__,
    conformal_a,
    free_symbol,
    gaussian_symbol,
    m_function,
    potential,
    reference_integrate,
    soliton_symbol,
    solve,
    tau,
    weyl_shooting,
)

__all__ = [
    "Contour",
    "FlowSingularity",
    "Symbol",
    "conformal_a",
    "free_symbol",
    "gaussian_symbol",
    "m_function",
    "potential",
    "reference_integrate",
    "soliton_symbol",
    "solve",
    "tau",
    "weyl_shooting",
]
