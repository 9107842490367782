from formal_path_integral.graphs.diagram import Diagram, automorphism_order, dump, parse_dump
from formal_path_integral.graphs.census import enumerate_diagrams, realizations
from formal_path_integral.graphs.pairings import pairings, count_pairings
from formal_path_integral.graphs.trees import LabelledTree, trees
