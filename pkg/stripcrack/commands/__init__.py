"""
CLI commands for StripCrack.
"""
