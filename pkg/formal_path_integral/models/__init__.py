# coding: utf-8

# import models into model package
from formal_path_integral.models.error import Error
from formal_path_integral.models.series_term import SeriesTerm
from formal_path_integral.models.diagram_term import DiagramTerm
from formal_path_integral.models.propagator_document import PropagatorDocument
