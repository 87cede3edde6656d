"""
Test suite for StripCrack.
"""
