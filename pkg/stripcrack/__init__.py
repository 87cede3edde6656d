"""
StripCrack - dynamic anti-plane strip crack solver for Kelvin-Voigt half-spaces.
"""

__version__ = "1.0.0"
