"""The check catalog. Importing this package registers C01-C52."""

from congruence_lab.checks import classical, harmonic, lifts, quadratic_cubic  # noqa: F401
