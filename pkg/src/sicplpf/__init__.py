"""Successive interference cancellation in Poisson path loss processes.

Submodules: ``specfun`` (special functions), ``netmodel`` (network
parameters and reductions), ``sampler`` (truncated process sampling),
``montecarlo`` (decoding and coverage estimators), ``bounds`` (closed
forms) and ``cli`` (sweeps and figure presets).
"""

__version__ = "0.1.0"
