"""RD-WENO Steady - residual distribution WENO-ZQ solver for steady conservation laws."""

__version__ = "1.0.0"
__author__ = "Zayd"
__description__ = "Fourth-order residual distribution finite difference solver with WENO-ZQ integration"
