# coding: utf-8

from typing import List

from formal_path_integral.models.base_model_ import Model


class SeriesTerm(Model):
    """One loop order of U: the coefficients ``[c0, c1, ...]`` of a polynomial in D0."""

    def __init__(self, order=None, delta_poly=None):
        """SeriesTerm

        :param order: The loop order of this SeriesTerm.
        :type order: int
        :param delta_poly: The D0 coefficients of this SeriesTerm.
        :type delta_poly: List[float]
        """
        self.openapi_types = {
            'order': int,
            'delta_poly': List[float]
        }

        self.attribute_map = {
            'order': 'order',
            'delta_poly': 'delta_poly'
        }

        self._order = order
        self._delta_poly = delta_poly

    @property
    def order(self):
        """Gets the order of this SeriesTerm.

        :rtype: int
        """
        return self._order

    @order.setter
    def order(self, order):
        """Sets the order of this SeriesTerm.

        :type order: int
        """
        if order is None:
            raise ValueError("Invalid value for `order`, must not be `None`")
        if order < 0:
            raise ValueError("Invalid value for `order`, must be a value greater than or equal to `0`")

        self._order = order

    @property
    def delta_poly(self):
        """Gets the delta_poly of this SeriesTerm.

        :rtype: List[float]
        """
        return self._delta_poly

    @delta_poly.setter
    def delta_poly(self, delta_poly):
        if delta_poly is None:
            raise ValueError("Invalid value for `delta_poly`, must not be `None`")

        self._delta_poly = delta_poly
