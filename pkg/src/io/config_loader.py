"""Load run configurations from YAML or JSON files."""

from pathlib import Path
from typing import Any, Dict, Optional, Union

import yaml
from pydantic import ValidationError

from ..models.config import describe_validation_error
from ..models.errors import InvalidConfig, IoError, ParseError, SchemaError
from ..models.run import RunConfig
from ..utils.logging_config import get_logger

logger = get_logger(__name__)

_SCHEMA_ERROR_TYPES = {"extra_forbidden", "missing"}


def parse_config(text: str) -> RunConfig:
    """Parse and validate a run configuration.

    JSON is a subset of YAML, so both go through yaml.safe_load.

    Args:
        text: Configuration document.

    Returns:
        Validated RunConfig with defaults applied.

    Raises:
        ParseError: text is empty, malformed, or not a mapping.
        SchemaError: unknown or missing keys; keys lists their dotted paths.
        InvalidConfig: values violate the model, grid or run invariants.
    """
    if not text or not text.strip():
        raise ParseError("configuration is empty")
    try:
        raw = yaml.safe_load(text)
    except yaml.YAMLError as e:
        raise ParseError(f"configuration is not well-formed: {e}") from e
    if not isinstance(raw, dict):
        raise ParseError("configuration must be a mapping at the top level")

    try:
        config = RunConfig.model_validate(raw)
    except ValidationError as e:
        schema = [err for err in e.errors() if err["type"] in _SCHEMA_ERROR_TYPES]
        if schema:
            keys = [".".join(str(p) for p in err["loc"]) for err in schema]
            unknown = [k for k, err in zip(keys, schema) if err["type"] == "extra_forbidden"]
            missing = [k for k, err in zip(keys, schema) if err["type"] == "missing"]
            parts = []
            if unknown:
                parts.append(f"unknown keys: {', '.join(unknown)}")
            if missing:
                parts.append(f"missing keys: {', '.join(missing)}")
            raise SchemaError("; ".join(parts), keys) from e
        raise InvalidConfig(f"invalid configuration: {describe_validation_error(e)}") from e
    return config


class ConfigLoader:
    """Load and cache run configurations from a config directory."""

    def __init__(self, config_dir: Optional[Union[str, Path]] = None):
        """
        Initialize the config loader.

        Args:
            config_dir: Directory holding config files. If None, uses ./config
        """
        self.config_dir = Path(config_dir) if config_dir is not None else Path("config")
        self._cache: Dict[str, RunConfig] = {}

    def _resolve(self, name: Union[str, Path]) -> Path:
        path = Path(name)
        if path.exists():
            return path
        if path.suffix not in (".yaml", ".yml", ".json"):
            for suffix in (".yaml", ".yml", ".json"):
                candidate = self.config_dir / f"{path.name}{suffix}"
                if candidate.exists():
                    return candidate
        return self.config_dir / path

    def load(self, name: Union[str, Path]) -> RunConfig:
        """
        Load a configuration file.

        Args:
            name: A path, or a file name (extension optional) under config_dir

        Returns:
            Validated RunConfig

        Raises:
            IoError: If the file doesn't exist or can't be read
            ParseError, SchemaError, InvalidConfig: see parse_config
        """
        key = str(name)
        if key in self._cache:
            return self._cache[key]

        path = self._resolve(name)
        if not path.is_file():
            raise IoError(f"config file not found: {path}")
        try:
            text = path.read_text(encoding="utf-8")
        except OSError as e:
            raise IoError(f"cannot read config file {path}: {e}") from e

        config = parse_config(text)
        logger.debug("config_loaded", path=str(path))
        self._cache[key] = config
        return config

    def reload(self, name: Union[str, Path]) -> RunConfig:
        """Force reload a config file, bypassing the cache."""
        self._cache.pop(str(name), None)
        return self.load(name)

    @staticmethod
    def schema() -> Dict[str, Any]:
        """JSON schema of the run configuration."""
        return RunConfig.model_json_schema()
