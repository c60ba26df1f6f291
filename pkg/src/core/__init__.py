"""Grids and WENO-ZQ quadrature."""
