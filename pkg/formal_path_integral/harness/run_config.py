import configparser
import re
from dataclasses import dataclass, field

from marshmallow import ValidationError

from formal_path_integral import Config, generalLogger
from formal_path_integral.amplitude import QuadratureConfig
from formal_path_integral.classical import Problem
from formal_path_integral.errors import ConfigValidationError, PathIntegralError
from formal_path_integral.expr import parse
from formal_path_integral.models.config_schemas import RunConfigSchema

SECTION_REGEX = re.compile(r"^\s*\[(?P<section>[^\]]+)\]\s*$")
KEY_REGEX = re.compile(r"^\s*(?P<key>[^=:#;\s][^=:]*?)\s*[=:]")


def _key_lines(text):
    """``{"section.key": line}`` (1-based) for every key and ``{"section": line}`` for headers."""
    lines = {}
    section = None
    for number, line in enumerate(text.splitlines(), start=1):
        header = SECTION_REGEX.match(line)
        if header:
            section = header.group("section").strip()
            lines.setdefault(section, number)
            continue
        key = KEY_REGEX.match(line)
        if key and section is not None:
            lines.setdefault(f"{section}.{key.group('key').strip()}", number)
    return lines


def _flatten(messages, prefix=""):
    flat = {}
    for key, value in messages.items():
        name = f"{prefix}{key}"
        if isinstance(value, dict):
            flat.update(_flatten(value, name + "."))
        else:
            flat[name] = value if isinstance(value, list) else [value]
    return flat


@dataclass
class RunConfig:
    """A validated run configuration with every expression already parsed.

    Attributes:
        sections (dict): validated values per section.
        raw (dict): the file contents per section, kept for provenance.
        lines (dict): line number per ``section.key``.
    """

    path: str
    sections: dict
    raw: dict
    lines: dict = field(default_factory=dict)
    lagrangian: object = None
    coordinate_map: list = None
    potential: object = None
    # --max-order on the command line
    max_order: int = None

    # ---------------------- sections ---------------------- #

    @property
    def problem(self):
        return self.sections.get("problem")

    @property
    def parameters(self):
        return self.sections.get("parameters") or {}

    @property
    def compute(self):
        return self.sections.get("compute") or {}

    @property
    def fubini(self):
        return self.sections.get("fubini")

    @property
    def coords(self):
        return self.sections.get("coords")

    @property
    def stphase(self):
        return self.sections.get("stphase")

    @property
    def green(self):
        return self.sections.get("green") or {}

    # ---------------------- derived settings ---------------------- #

    def _compute(self, key, default):
        value = self.compute.get(key)
        return default if value is None else value

    @property
    def loop_order(self):
        if self.max_order is not None:
            return self.max_order
        return self._compute("loop_order", Config.LOOP_ORDER)

    @property
    def fd_steps(self):
        return tuple(self._compute("fd_steps", Config.FD_STEPS))

    @property
    def sign_convention(self):
        return self._compute("sign_convention", Config.SIGN_CONVENTION)

    def quadrature(self):
        return QuadratureConfig(order=self._compute("quad_order", Config.QUAD_ORDER),
                                jet_order=self.compute.get("jet_order"))

    def require(self, section, subcommand):
        if self.sections.get(section) is None:
            raise ConfigValidationError({section: [f"section is required for `{subcommand}`"]}, self.lines)
        return self.sections[section]

    def build_problem(self):
        """:rtype: Problem"""
        problem = self.require("problem", "this run")
        return Problem(self.lagrangian, problem["t0"], problem["t1"], problem["q0"], problem["q1"],
                       problem.get("v0_guess"), self.compute.get("grid"))

    def snapshot(self):
        return {section: dict(values) for section, values in self.raw.items()}


def _parse_expression(source, dimension, parameters, key, lines):
    try:
        return parse(source, dimension, parameters)
    except (PathIntegralError, ValueError) as e:
        raise ConfigValidationError({key: [str(e)]}, lines)


def load_config(path):
    """Read and validate a run configuration file.

    :rtype: RunConfig
    """
    parser = configparser.ConfigParser(interpolation=None)
    parser.optionxform = str
    try:
        with open(path) as stream:
            text = stream.read()
        parser.read_string(text, source=str(path))
    except (OSError, configparser.Error) as e:
        raise ConfigValidationError({"file": [repr(e)]})

    lines = _key_lines(text)
    raw = {section: dict(parser[section]) for section in parser.sections()}
    try:
        sections = RunConfigSchema().load(raw)
    except ValidationError as err:
        raise ConfigValidationError(_flatten(err.messages), lines)

    config = RunConfig(str(path), sections, raw, lines)
    parameters = config.parameters
    if config.problem is not None:
        dimension = config.problem["dimension"]
        config.lagrangian = _parse_expression(config.problem["lagrangian"], dimension, parameters,
                                              "problem.lagrangian", lines)
        if config.coords is not None:
            config.coordinate_map = [
                _parse_expression(component, dimension, parameters, "coords.map", lines)
                for component in config.coords["map"]
            ]
            if len(config.coordinate_map) != dimension:
                raise ConfigValidationError(
                    {"coords.map": [f"expected {dimension} components, got {len(config.coordinate_map)}"]}, lines)
    if config.stphase is not None:
        stphase = config.stphase
        config.potential = _parse_expression(stphase["potential"], stphase["dimension"], parameters,
                                             "stphase.potential", lines)
        for key in ("center", "region"):
            expected = stphase["dimension"] * (1 if key == "center" else 2)
            if len(stphase[key]) != expected:
                raise ConfigValidationError(
                    {f"stphase.{key}": [f"expected {expected} numbers, got {len(stphase[key])}"]}, lines)

    generalLogger.debug(f"Loaded configuration {path} with sections {sorted(raw)}")
    return config
