# coding: utf-8

from typing import List

from formal_path_integral.models.base_model_ import Model


class DiagramTerm(Model):
    """Contribution ``ev(Gamma) / |Aut Gamma|`` of one diagram."""

    def __init__(self, canonical=None, aut=None, loop_order=None, contribution=None, nodes=None):
        """DiagramTerm

        :param canonical: The canonical label of the diagram.
        :type canonical: str
        :param aut: The automorphism order of the diagram.
        :type aut: int
        :param loop_order: -chi of the diagram.
        :type loop_order: int
        :param contribution: D0 coefficients of the contribution, already divided by ``aut``.
        :type contribution: List[float]
        :param nodes: Quadrature nodes spent on the diagram.
        :type nodes: int
        """
        self.openapi_types = {
            'canonical': str,
            'aut': int,
            'loop_order': int,
            'contribution': List[float],
            'nodes': int
        }

        self.attribute_map = {
            'canonical': 'canonical',
            'aut': 'aut',
            'loop_order': 'loop_order',
            'contribution': 'contribution',
            'nodes': 'nodes'
        }

        self._canonical = canonical
        self._aut = aut
        self._loop_order = loop_order
        self._contribution = contribution
        self._nodes = nodes

    @classmethod
    def from_contribution(cls, item):
        """:rtype: DiagramTerm"""
        return cls(
            canonical=item.diagram.canonical_label,
            aut=int(item.automorphism_order),
            loop_order=int(item.diagram.loop_order),
            contribution=[float(c) for c in item.contribution.to_list()],
            nodes=int(item.nodes),
        )

    @property
    def canonical(self):
        return self._canonical

    @canonical.setter
    def canonical(self, canonical):
        if canonical is None:
            raise ValueError("Invalid value for `canonical`, must not be `None`")

        self._canonical = canonical

    @property
    def aut(self):
        """Gets the automorphism order of this DiagramTerm.

        :rtype: int
        """
        return self._aut

    @aut.setter
    def aut(self, aut):
        if aut is None:
            raise ValueError("Invalid value for `aut`, must not be `None`")
        if aut < 1:
            raise ValueError("Invalid value for `aut`, must be a value greater than or equal to `1`")

        self._aut = aut

    @property
    def loop_order(self):
        return self._loop_order

    @loop_order.setter
    def loop_order(self, loop_order):
        self._loop_order = loop_order

    @property
    def contribution(self):
        return self._contribution

    @contribution.setter
    def contribution(self, contribution):
        if contribution is None:
            raise ValueError("Invalid value for `contribution`, must not be `None`")

        self._contribution = contribution

    @property
    def nodes(self):
        return self._nodes

    @nodes.setter
    def nodes(self, nodes):
        self._nodes = nodes
