"""
Core configuration, logging, caching and error types.
"""
