"""Security-game equilibrium solvers in exact rational arithmetic."""
