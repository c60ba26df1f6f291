"""Utility modules for configuration, logging, and metrics."""
