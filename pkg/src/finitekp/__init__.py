"""Finite Kronig-Penney chain: transmission, continuum limit and bands."""
from .chebyshev import ChebValue, cheb_u, m_power_cheb
from .dispersion import (Band, BandStructure, DiracCombParams, band_edges,
                         band_solve, band_structure, comb_band_edges,
                         comb_band_structure, continuum_dispersion,
                         dirac_comb_lhs)
from .errors import (BracketError, ChebyshevOverflowError, DomainError,
                     ResolutionError, SingularMatrixError)
from .kernel import (AmplitudeTrace, ModelParams, PhiKernel, amplitude_trace,
                     cell_geometry, e_threshold, phi_kernel, phi_value,
                     wave_numbers)
from .transport import (Resistivity, Transmission, resistivity_limit,
                        resistivity_n, transmission_limit, transmission_n)
from .units import ev_to_model, model_to_ev

__version__ = "0.1.0"
