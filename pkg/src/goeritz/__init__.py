"""Jones polynomials from Goeritz matrices and HOMFLY-PT polynomials of
bipartite links from quadruple Goeritz matrices, with exact symbolic
arithmetic and brute-force state-sum oracles."""

from .polyring import (LaurentPoly, PolyValue, reduce_to_jones_vars,
                       substitute, to_q_poly, to_qu)
from .goeritz import (GoeritzMatrix, JonesNormData, UnreducedGoeritz,
                      determinant, jones, mu, reduce)
from .bipartite import (LockCounts, QuadEntry, QuadGoeritzMatrix, M, homfly,
                        reduce_quad, to_precursor)
from .families import (EvenCF, FamilySpec, build, closed_form,
                       even_continued_fraction, torus_transfer)
from .diagrams import (LockDiagram, PDDiagram, checkerboard, extract_goeritz,
                       extract_quad, kauffman_bracket, planar_decomposition)

__version__ = "0.1.0"
