from marshmallow import Schema, fields, validate, validates_schema, ValidationError, EXCLUDE

from formal_path_integral.stphase import SIGN_CONVENTIONS

# Schemas matching the sections of a run configuration file (INI)


class FloatList(fields.Field):
    """Comma-separated numbers, e.g. ``1.0, 2.5``."""

    default_error_messages = {"invalid": "Not a comma-separated list of numbers."}

    def _deserialize(self, value, attr, data, **kwargs):
        if isinstance(value, (list, tuple)):
            items = value
        else:
            items = [item for item in str(value).split(",") if item.strip()]
        try:
            return [float(item) for item in items]
        except (TypeError, ValueError):
            raise self.make_error("invalid")

    def _serialize(self, value, attr, obj, **kwargs):
        if value is None:
            return None
        return ", ".join(repr(float(item)) for item in value)


class ExpressionList(fields.Field):
    """``;``-separated expressions (coordinate map components)."""

    def _deserialize(self, value, attr, data, **kwargs):
        return [item.strip() for item in str(value).split(";") if item.strip()]

    def _serialize(self, value, attr, obj, **kwargs):
        return "; ".join(value) if value is not None else None


class ProblemSchema(Schema):
    class Meta:
        unknown = EXCLUDE

    dimension = fields.Integer(required=True, validate=validate.Range(min=1))
    lagrangian = fields.String(required=True, validate=validate.Length(min=1))
    t0 = fields.Float(required=True)
    t1 = fields.Float(required=True)
    q0 = FloatList(required=True)
    q1 = FloatList(required=True)
    v0_guess = FloatList(load_default=None)

    @validates_schema
    def validate_problem(self, data, **kwargs):
        errors = {}
        if data["t0"] >= data["t1"]:
            errors["t1"] = [f"must be greater than t0 ({data['t0']})"]
        for key in ("q0", "q1", "v0_guess"):
            value = data.get(key)
            if value is not None and len(value) != data["dimension"]:
                errors[key] = [f"expected {data['dimension']} components, got {len(value)}"]
        if errors:
            raise ValidationError(errors)


class ComputeSchema(Schema):
    class Meta:
        unknown = EXCLUDE

    loop_order = fields.Integer(load_default=None, validate=validate.Range(min=0, max=4))
    quad_order = fields.Integer(load_default=None, validate=validate.Range(min=1))
    grid = fields.Integer(load_default=None, validate=validate.Range(min=2))
    jet_order = fields.Integer(load_default=None, validate=validate.Range(min=1))
    fd_steps = FloatList(load_default=None)
    sign_convention = fields.String(load_default=None, validate=validate.OneOf(SIGN_CONVENTIONS))

    @validates_schema
    def validate_steps(self, data, **kwargs):
        steps = data.get("fd_steps")
        if steps is not None and (len(steps) != 2 or not steps[0] > steps[1] > 0):
            raise ValidationError({"fd_steps": ["expected two decreasing positive steps, e.g. `1e-2, 5e-3`"]})


class FubiniSchema(Schema):
    class Meta:
        unknown = EXCLUDE

    split_time = fields.Float(required=True)
    tree_cross_check = fields.Boolean(load_default=False)


class CoordsSchema(Schema):
    class Meta:
        unknown = EXCLUDE

    map = ExpressionList(required=True)


class StphaseSchema(Schema):
    class Meta:
        unknown = EXCLUDE

    potential = fields.String(required=True)
    dimension = fields.Integer(load_default=1, validate=validate.Range(min=1, max=2))
    center = FloatList(required=True)
    region = FloatList(required=True)
    hbar = FloatList(required=True)
    loop_order = fields.Integer(load_default=1, validate=validate.Range(min=0, max=3))


class GreenSchema(Schema):
    class Meta:
        unknown = EXCLUDE

    points = fields.Integer(load_default=50, validate=validate.Range(min=2))
    derivatives = fields.String(load_default="G")


class RunConfigSchema(Schema):
    problem = fields.Nested(ProblemSchema, load_default=None)
    parameters = fields.Dict(keys=fields.String(), values=fields.Float(), load_default=dict)
    compute = fields.Nested(ComputeSchema, load_default=dict)
    fubini = fields.Nested(FubiniSchema, load_default=None)
    coords = fields.Nested(CoordsSchema, load_default=None)
    stphase = fields.Nested(StphaseSchema, load_default=None)
    green = fields.Nested(GreenSchema, load_default=dict)
