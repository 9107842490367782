# coding: utf-8

from formal_path_integral.models.base_model_ import Model


class Error(Model):
    """Document emitted when a run stops on a configuration or computation error."""

    def __init__(self, error=None, module=None, subcommand=None):
        """Error - an error document

        :param error: The error of this Error.
        :type error: str
        :param module: The module the error originates from.
        :type module: str
        :param subcommand: The subcommand that failed.
        :type subcommand: str
        """
        self.openapi_types = {
            'error': str,
            'module': str,
            'subcommand': str
        }

        self.attribute_map = {
            'error': 'error',
            'module': 'module',
            'subcommand': 'subcommand'
        }

        self._error = error
        self._module = module
        self._subcommand = subcommand

    @property
    def error(self):
        """Gets the error of this Error.

        :rtype: str
        """
        return self._error

    @error.setter
    def error(self, error):
        if error is None:
            raise ValueError("Invalid value for `error`, must not be `None`")

        self._error = error

    @property
    def module(self):
        return self._module

    @module.setter
    def module(self, module):
        self._module = module

    @property
    def subcommand(self):
        return self._subcommand

    @subcommand.setter
    def subcommand(self, subcommand):
        self._subcommand = subcommand
