"""Test suite for the RD-WENO steady solver."""
