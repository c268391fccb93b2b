"""Exact star products for polynomial Poisson structures via block pseudoinverses of the Hochschild coboundary."""
