"""
weakmag: weak-value amplified detection of weak magnetic fields through the
Faraday magneto-optic effect.

Modules:
    polarization  pre-/post-selection states, weak value, postselection probability
    faraday       Faraday phase per geometry, phase budget and compensator calibration
    geometries    pluggable amplification schemes (single pass, multi reflection, fiber coil)
    spectrum      probe spectra, spectrometer model, Gaussian fitting
    analysis      field sweeps, sensitivity, design recommendation
    cli           command-line front end (python -m weakmag)
"""

__version__ = "0.1.0"
