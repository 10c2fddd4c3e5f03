"""chromalg: exact computer algebra for truncated formal group laws, flat
Hopf algebroids, graded comodules with cobar Ext, and chromatic stratum
classification, with number-theoretic cross-checks."""

__version__ = "0.1.0"
