"""Python interface to the rdyn library."""

from ._rdyn import (
    EquationForm,
    Error,
    __version__,
    analyze_cycle,
    boundedness_condition,
    equilibria,
    largest_lyapunov,
    linearize_exact,
    lyapunov_scan,
    orbit,
    period2,
    reduce,
    run_cli,
    step,
)

__all__ = [
    "EquationForm",
    "Error",
    "__version__",
    "analyze_cycle",
    "boundedness_condition",
    "equilibria",
    "largest_lyapunov",
    "linearize_exact",
    "lyapunov_scan",
    "orbit",
    "period2",
    "reduce",
    "run_cli",
    "step",
]
