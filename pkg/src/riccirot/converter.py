# -*- coding: utf-8 -*-
# vim: set ft=python ts=4 sw=4 expandtab:
# pylint: disable=line-too-long:

"""
Converter to serialize and deserialize ricci-rot objects as JSON and YAML.
"""
import json
import math
from typing import Any, Type, TypeVar, Union

import yaml
from attrs import fields, has
from cattrs import GenConverter
from cattrs.gen import make_dict_structure_fn, make_dict_unstructure_fn, override

from .interface import ConfigError, JobConfig

T = TypeVar("T")  # pylint: disable=invalid-name:


def serialize_float(value: float) -> Union[float, str]:
    """Serialize a float, writing infinities as the tokens "inf" and "-inf"."""
    # JSON has no literal for infinity, and interval endpoints are often infinite
    if math.isinf(value):
        return "inf" if value > 0 else "-inf"
    return float(value)


def deserialize_float(value: Union[float, int, str]) -> float:
    """Deserialize a float, accepting the tokens written by serialize_float()."""
    if isinstance(value, str):
        token = value.strip().lower()
        if token not in ("inf", "+inf", "-inf"):
            raise ValueError("Unknown float token: %s" % value)
        return math.inf if not token.startswith("-") else -math.inf
    return float(value)


def camel_case(name: str) -> str:
    """Convert a snake_case attribute name like s0_anchor to camelCase (s0Anchor)."""
    head, *rest = name.split("_")
    return head + "".join(part.title() for part in rest)


# noinspection PyMethodMayBeStatic
class RicciConverter(GenConverter):
    """
    Cattrs converter for ricci-rot classes, with camelCase keys and infinity tokens for floats.

    GenConverter is required rather than Converter because the interface uses postponed annotations.
    """

    def __init__(self, forbid_extra_keys: bool = False) -> None:
        super().__init__(forbid_extra_keys=forbid_extra_keys)
        self.register_unstructure_hook_factory(has, self._unstructure_camel_case)
        self.register_structure_hook_factory(has, self._structure_camel_case)
        self.register_unstructure_hook(float, serialize_float)
        self.register_structure_hook(float, self._structure_float)

    def to_json(self, obj: Any) -> str:
        """Serialize an object to JSON."""
        return json.dumps(self.unstructure(obj), indent="  ")

    def from_json(self, data: str, cls: Type[T]) -> T:
        """Deserialize an object from JSON."""
        return self.structure(json.loads(data), cls)

    def to_yaml(self, obj: Any) -> str:
        """Serialize an object to YAML."""
        return yaml.safe_dump(self.unstructure(obj), sort_keys=False)

    def from_yaml(self, data: str, cls: Type[T]) -> T:
        """Deserialize an object from YAML."""
        return self.structure(yaml.safe_load(data), cls)

    def _renames(self, cls):  # type: ignore
        return {a.name: override(rename=camel_case(a.name)) for a in fields(cls)}

    def _unstructure_camel_case(self, cls):  # type: ignore
        return make_dict_unstructure_fn(cls, self, **self._renames(cls))  # type: ignore

    def _structure_camel_case(self, cls):  # type: ignore
        return make_dict_structure_fn(cls, self, _cattrs_forbid_extra_keys=self.forbid_extra_keys, **self._renames(cls))  # type: ignore

    def _structure_float(self, value: Union[float, int, str], _: Type[float]) -> float:
        return deserialize_float(value)


def load_config(data: str) -> JobConfig:
    """Load a job configuration from YAML text, rejecting unknown keys and invalid tolerances."""
    try:
        parsed = yaml.safe_load(data)
        if parsed is None:
            return JobConfig()
        if not isinstance(parsed, dict):
            raise ValueError("Configuration must be a mapping")
        return STRICT_CONVERTER.structure(parsed, JobConfig)
    except Exception as e:  # pylint: disable=broad-except:
        raise ConfigError("Invalid configuration: %s" % e) from e


CONVERTER = RicciConverter()
STRICT_CONVERTER = RicciConverter(forbid_extra_keys=True)
