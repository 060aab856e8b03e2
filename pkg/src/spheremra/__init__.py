"""Polynomial wavelet multiresolution analysis on n-dimensional spheres.

Subpackages cover Gegenbauer machinery (specfun), hyperspherical harmonics
(harmonics), exact trigonometric quadrature on equiangular grids (quadrature),
the scaling/wavelet multiresolution transforms (mra, transform), uncertainty
products for zonal functions (uncertainty), positive-definiteness
classification (posdef), a slow reference oracle (oracle), and a command-line
front end (cli).
"""

__version__ = "0.1.0"
