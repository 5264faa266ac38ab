"""
Typed configuration options, validated from a YAML config file.
"""

import re
from datetime import date, datetime
from pathlib import Path

import yaml

from . import OPTIONS_ANALYSIS_DEFAULT
from .corpus import generate_intervals, parse_timestamp
from .models import AnalysisConfig, BrandSpec, Standardization, TimeRange
from .preprocess import load_stopwords, normalize_brands, supported_languages
from .utils import ConfigError, validate_name

_RE_BRAND_ID = re.compile(r"^\w+$")


class BaseOption:
    required = False

    def __init__(self, key: str, description: str, default, base_dir: Path):
        self.key = key
        self.description = description
        self.default = default
        self.base_dir = base_dir
        self.value = self.validate(default) if default is not None else None

    def set(self, value):
        if value is None:
            if self.required:
                raise ValueError(f"'{self.key}' is required.")
            self.value = None
        else:
            self.value = self.validate(value)
        return self

    def validate(self, value):
        return value

    def display(self) -> str:
        return "" if self.value is None else str(self.value)


class Integer(BaseOption):
    minimum = None

    def validate(self, value):
        if isinstance(value, bool) or not isinstance(value, (int, str)):
            raise ValueError(f"'{self.key}' must be an integer.")
        try:
            value = int(value)
        except ValueError:
            raise ValueError(f"'{self.key}' must be an integer.")
        if self.minimum is not None and value < self.minimum:
            raise ValueError(f"'{self.key}' must be at least {self.minimum}.")
        return value


class PositiveInteger(Integer):
    minimum = 1


class Float(BaseOption):
    def validate(self, value):
        if isinstance(value, bool):
            raise ValueError(f"'{self.key}' must be a number.")
        try:
            return float(value)
        except (TypeError, ValueError):
            raise ValueError(f"'{self.key}' must be a number.")


class NonNegativeFloat(Float):
    def validate(self, value):
        if (value := super().validate(value)) < 0:
            raise ValueError(f"'{self.key}' must not be negative.")
        return value


class OptionalFloat(NonNegativeFloat):
    pass


class UnitFraction(Float):
    def validate(self, value):
        if not 0 < (value := super().validate(value)) <= 1:
            raise ValueError(f"'{self.key}' must lie in (0, 1].")
        return value


class PathOption(BaseOption):
    def validate(self, value):
        path = Path(str(value))
        return path if path.is_absolute() else self.base_dir / path


class File(PathOption):
    required = True

    def validate(self, value):
        if not (path := super().validate(value)).is_file():
            raise ValueError(f"'{self.key}' file {path} does not exist.")
        return path


class Language(BaseOption):
    def validate(self, value):
        if (value := str(value).lower()) not in supported_languages():
            raise ValueError(
                f"'{self.key}' must be one of {', '.join(supported_languages())}."
            )
        return value


class StandardizationOption(BaseOption):
    def validate(self, value):
        try:
            return Standardization(str(value))
        except ValueError:
            choices = ", ".join(s.value for s in Standardization)
            raise ValueError(f"'{self.key}' must be one of {choices}.")


def _moment(value, key: str) -> datetime:
    if isinstance(value, (date, datetime)):
        value = value.isoformat()
    try:
        return parse_timestamp(str(value))
    except ValueError:
        raise ValueError(f"'{key}' has an invalid date '{value}'.")


class Intervals(BaseOption):
    required = True

    def validate(self, value):
        if isinstance(value, dict) and "frequency" in value:
            try:
                return tuple(
                    generate_intervals(
                        _moment(value.get("start"), self.key),
                        _moment(value.get("end"), self.key),
                        str(value["frequency"]),
                    )
                )
            except (ConfigError, ValueError) as err:
                raise ValueError(f"'{self.key}': {err}")
        if not isinstance(value, list) or not value:
            raise ValueError(f"'{self.key}' must be a nonempty list of {{start, end}} mappings.")
        out = list()
        for entry in value:
            if not isinstance(entry, dict) or not {"start", "end"} <= set(entry):
                raise ValueError(f"'{self.key}' entries need start and end.")
            try:
                out.append(
                    TimeRange(_moment(entry["start"], self.key), _moment(entry["end"], self.key))
                )
            except ConfigError as err:
                raise ValueError(f"'{self.key}': {err}")
        return tuple(out)

    def display(self):
        if not self.value:
            return ""
        return ", ".join(f"{i.label}..{i.end.date().isoformat()}" for i in self.value)


class Brands(BaseOption):
    required = True

    def validate(self, value):
        if not isinstance(value, list) or not value:
            raise ValueError(f"'{self.key}' must be a nonempty list.")
        out = list()
        for entry in value:
            if isinstance(entry, str):
                entry = {"id": entry, "aliases": [entry]}
            if not isinstance(entry, dict) or "id" not in entry:
                raise ValueError(f"'{self.key}' entries need an id.")
            try:
                brand_id = validate_name(
                    str(entry["id"]), thing_type="Brand id", matcher=_RE_BRAND_ID
                ).lower()
            except ConfigError as err:
                raise ValueError(str(err))
            aliases = entry.get("aliases") or [brand_id]
            if isinstance(aliases, str):
                aliases = [aliases]
            if not isinstance(aliases, list) or not all(
                isinstance(a, str) and a.strip() for a in aliases
            ):
                raise ValueError(f"'{self.key}' aliases of {brand_id} must be a list of names.")
            out.append(BrandSpec(brand_id, tuple(aliases)))
        return tuple(out)

    def display(self):
        if not self.value:
            return ""
        return "; ".join(f"{b.canonical_id}: {', '.join(b.aliases)}" for b in self.value)


class WordList(BaseOption):
    def validate(self, value):
        if isinstance(value, str):
            value = value.split(",")
        if not isinstance(value, list):
            raise ValueError(f"'{self.key}' must be a list of words.")
        return tuple(str(v).strip().lower() for v in value if str(v).strip())

    def display(self):
        return ", ".join(self.value or ())


OPTION_TYPES = {
    "Integer": Integer,
    "PositiveInteger": PositiveInteger,
    "NonNegativeFloat": NonNegativeFloat,
    "OptionalFloat": OptionalFloat,
    "Fraction": UnitFraction,
    "Path": PathOption,
    "File": File,
    "Language": Language,
    "Standardization": StandardizationOption,
    "Intervals": Intervals,
    "Brands": Brands,
    "WordList": WordList,
}


class OptionHandler:
    """
    Holds one option object per key of options_dict, whose entries are
    [description, option type name, default].
    """

    def __init__(self, options_dict: dict | None = None, base_dir: Path | None = None):
        self.options_dict = options_dict or OPTIONS_ANALYSIS_DEFAULT
        self.base_dir = Path(base_dir or ".")
        self.options = dict()
        for key, (description, type_name, default) in self.options_dict.items():
            self.options[key] = OPTION_TYPES[type_name](key, description, default, self.base_dir)

    def get(self, key: str):
        if not (option := self.options.get(key)):
            raise KeyError(key)
        return option.value

    def set(self, key: str, value) -> BaseOption:
        if not (option := self.options.get(key)):
            raise ValueError(f"Unknown option '{key}'.")
        return option.set(value)

    def all(self, return_objs: bool = False):
        if return_objs:
            return list(self.options.values())
        return {key: option.value for key, option in self.options.items()}

    def check_required(self):
        for option in self.options.values():
            if option.required and option.value is None:
                raise ValueError(f"'{option.key}' is required.")

    def serialize(self):
        out = dict()
        for key, option in self.options.items():
            value = option.value
            if isinstance(value, Path):
                value = value.as_posix()
            elif key in ("intervals", "brands"):
                value = [v.serialize() for v in value] if value else None
            elif isinstance(value, tuple):
                value = list(value)
            elif isinstance(value, Standardization):
                value = value.value
            out[key] = value
        return out


def load_options(path: Path, overrides: dict | None = None) -> OptionHandler:
    path = Path(path)
    try:
        data = yaml.safe_load(path.read_text(encoding="utf-8")) or dict()
    except OSError as err:
        raise ConfigError(f"cannot read {path} ({err.strerror})")
    except yaml.YAMLError as err:
        raise ConfigError(f"{path} is not valid YAML ({err})")
    if not isinstance(data, dict):
        raise ConfigError(f"{path} must hold a mapping of options.")

    handler = OptionHandler(base_dir=path.parent)
    try:
        for key, value in data.items():
            handler.set(str(key), value)
        for key, value in (overrides or dict()).items():
            if value is not None:
                handler.set(key, value)
        handler.check_required()
    except ValueError as err:
        raise ConfigError(str(err))
    return handler


def analysis_config(handler: OptionHandler) -> AnalysisConfig:
    language = handler.get("language")
    stopwords_path = handler.get("stopwords")
    try:
        stopwords = load_stopwords(language, stopwords_path)
    except OSError as err:
        raise ConfigError(f"cannot read stopwords ({err.strerror})")
    return AnalysisConfig(
        intervals=handler.get("intervals"),
        brands=normalize_brands(handler.get("brands"), stopwords, language),
        language=language,
        cooc_range=handler.get("cooc_range"),
        min_cooc=handler.get("min_cooc"),
        text_fraction=handler.get("text_fraction"),
        standardization=handler.get("standardization"),
        stopwords_path=stopwords_path,
    )
