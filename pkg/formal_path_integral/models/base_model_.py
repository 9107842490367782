import pprint


def _plain(value):
    if hasattr(value, "to_dict"):
        return value.to_dict()
    if isinstance(value, list):
        return [_plain(item) for item in value]
    if isinstance(value, dict):
        return {key: _plain(item) for key, item in value.items()}
    return value


class Model(object):
    # openapi_types: attribute name -> attribute type
    openapi_types = {}

    # attribute_map: attribute name -> key in the emitted document
    attribute_map = {}

    def to_dict(self):
        """Returns the model as a dict keyed by document names

        :rtype: dict
        """
        return {self.attribute_map[attr]: _plain(getattr(self, attr)) for attr in self.openapi_types}

    def to_str(self):
        """Returns the string representation of the model

        :rtype: str
        """
        return pprint.pformat(self.to_dict())

    def __repr__(self):
        """For `print` and `pprint`"""
        return self.to_str()

    def __eq__(self, other):
        return type(self) is type(other) and self.to_dict() == other.to_dict()

    def __ne__(self, other):
        return not self == other
