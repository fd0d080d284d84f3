"""Sublinear/superlinear expectation solvers.

Thin python façade over the compiled ``_gexpect`` extension module.
"""

try:
    from ._gexpect import (  # type: ignore[import-not-found]
        bsb_price,
        counterexample_limit,
        extremal_bs_price,
        gaussian_expectation,
        mc_policy_value,
        picard_solve,
        quadvar_functional,
        representation_scan,
        solve_gheat,
        __version__,
    )
except ImportError:  # pragma: no cover - build-tree layout
    from _gexpect import (  # type: ignore[import-not-found]
        bsb_price,
        counterexample_limit,
        extremal_bs_price,
        gaussian_expectation,
        mc_policy_value,
        picard_solve,
        quadvar_functional,
        representation_scan,
        solve_gheat,
        __version__,
    )

__all__ = [
    "bsb_price",
    "counterexample_limit",
    "extremal_bs_price",
    "gaussian_expectation",
    "mc_policy_value",
    "picard_solve",
    "quadvar_functional",
    "representation_scan",
    "solve_gheat",
    "__version__",
]
