# coding: utf-8

from typing import List

from formal_path_integral.models.base_model_ import Model
from formal_path_integral.models.diagram_term import DiagramTerm
from formal_path_integral.models.series_term import SeriesTerm


class PropagatorDocument(Model):
    """Serialised PropagatorResult: prefactor data, the loop series and per-diagram terms."""

    def __init__(self, d=None, t0=None, t1=None, q0=None, q1=None, s=None, log_abs_det_w=None,
                 morse_index=None, sign_convention=None, quad_order=None, jet_order=None,
                 series=None, diagrams=None):
        self.openapi_types = {
            'd': int,
            't0': float,
            't1': float,
            'q0': List[float],
            'q1': List[float],
            's': float,
            'log_abs_det_w': float,
            'morse_index': int,
            'sign_convention': str,
            'quad_order': int,
            'jet_order': int,
            'series': List[SeriesTerm],
            'diagrams': List[DiagramTerm]
        }

        self.attribute_map = {
            'd': 'd',
            't0': 't0',
            't1': 't1',
            'q0': 'q0',
            'q1': 'q1',
            's': 'S',
            'log_abs_det_w': 'log_abs_det_W',
            'morse_index': 'morse_index',
            'sign_convention': 'sign_convention',
            'quad_order': 'quad_order',
            'jet_order': 'jet_order',
            'series': 'series',
            'diagrams': 'diagrams'
        }

        self._d = d
        self._t0 = t0
        self._t1 = t1
        self._q0 = q0
        self._q1 = q1
        self._s = s
        self._log_abs_det_w = log_abs_det_w
        self._morse_index = morse_index
        self._sign_convention = sign_convention
        self._quad_order = quad_order
        self._jet_order = jet_order
        self._series = series
        self._diagrams = diagrams

    @classmethod
    def from_result(cls, result):
        """:rtype: PropagatorDocument"""
        return cls(
            d=int(result.dimension),
            t0=float(result.t0),
            t1=float(result.t1),
            q0=[float(x) for x in result.q0],
            q1=[float(x) for x in result.q1],
            s=float(result.action),
            log_abs_det_w=result.log_abs_det_w,
            morse_index=int(result.morse_index),
            sign_convention=result.sign_convention,
            quad_order=result.quad_order,
            jet_order=result.jet_order,
            series=[SeriesTerm(order, result.series[order].to_list()) for order in sorted(result.series)],
            diagrams=[DiagramTerm.from_contribution(item) for item in result.contributions],
        )

    @property
    def d(self):
        """Gets the dimension of this PropagatorDocument.

        :rtype: int
        """
        return self._d

    @d.setter
    def d(self, d):
        if d is None:
            raise ValueError("Invalid value for `d`, must not be `None`")
        if d < 1:
            raise ValueError("Invalid value for `d`, must be a value greater than or equal to `1`")

        self._d = d

    @property
    def t0(self):
        return self._t0

    @t0.setter
    def t0(self, t0):
        if t0 is None:
            raise ValueError("Invalid value for `t0`, must not be `None`")

        self._t0 = t0

    @property
    def t1(self):
        return self._t1

    @t1.setter
    def t1(self, t1):
        if t1 is None:
            raise ValueError("Invalid value for `t1`, must not be `None`")

        self._t1 = t1

    @property
    def q0(self):
        return self._q0

    @q0.setter
    def q0(self, q0):
        self._q0 = q0

    @property
    def q1(self):
        return self._q1

    @q1.setter
    def q1(self, q1):
        self._q1 = q1

    @property
    def s(self):
        """Gets the action S of this PropagatorDocument.

        :rtype: float
        """
        return self._s

    @s.setter
    def s(self, s):
        if s is None:
            raise ValueError("Invalid value for `s`, must not be `None`")

        self._s = s

    @property
    def log_abs_det_w(self):
        """Gets log|det W| of this PropagatorDocument.

        :rtype: float
        """
        return self._log_abs_det_w

    @log_abs_det_w.setter
    def log_abs_det_w(self, log_abs_det_w):
        if log_abs_det_w is None:
            raise ValueError("Invalid value for `log_abs_det_w`, must not be `None`")

        self._log_abs_det_w = log_abs_det_w

    @property
    def morse_index(self):
        return self._morse_index

    @morse_index.setter
    def morse_index(self, morse_index):
        if morse_index is None or morse_index < 0:
            raise ValueError("Invalid value for `morse_index`, must be a value greater than or equal to `0`")

        self._morse_index = morse_index

    @property
    def sign_convention(self):
        return self._sign_convention

    @sign_convention.setter
    def sign_convention(self, sign_convention):
        self._sign_convention = sign_convention

    @property
    def quad_order(self):
        return self._quad_order

    @quad_order.setter
    def quad_order(self, quad_order):
        self._quad_order = quad_order

    @property
    def jet_order(self):
        return self._jet_order

    @jet_order.setter
    def jet_order(self, jet_order):
        self._jet_order = jet_order

    @property
    def series(self):
        """Gets the loop series of this PropagatorDocument.

        :rtype: List[SeriesTerm]
        """
        return self._series

    @series.setter
    def series(self, series):
        if series is None:
            raise ValueError("Invalid value for `series`, must not be `None`")

        self._series = series

    @property
    def diagrams(self):
        return self._diagrams

    @diagrams.setter
    def diagrams(self, diagrams):
        self._diagrams = diagrams
