"""Newton diagrams of polynomials constant on the hyperplane x1 + ... + xn = 1.

Exact polynomial arithmetic, the quotient q = (p - 1)/(s - 1), its sign
diagram with sinks, sources, views and faces, sharp generalized Whitney
polynomials, monomial ball maps, and brute-force checks of the degree bounds.
"""

from .diagram import NewtonDiagram, Sign, view
from .polynomial import Polynomial, divide_by_hyperplane, is_in_H, parse, term_count
from .whitney import check_degree_bound, generate, is_sharp_whitney

__version__ = "0.1.0"
