import os
from dataclasses import dataclass
from typing import Any, Dict, Mapping, Optional

from mashumaro import DataClassDictMixin

from sqfree.events import ToolkitLogger
from sqfree.exceptions import raise_validation_error
from sqfree.homalg import FieldSpec

logger = ToolkitLogger("Config")

FIELD_ENV = "SQFREE_FIELD"
MAX_FACETS_ENV = "SQFREE_MAX_FACETS"

# beyond this the forest check walks 2^q subcollections and gets slow
LARGE_MAX_FACETS = 20


@dataclass
class ToolkitConfig(DataClassDictMixin):
    field: str = "q"
    json: bool = False
    oracle: bool = False
    max_facets: int = 15
    cert_dir: Optional[str] = None
    debug: bool = False
    search_budget: int = 200000

    def __post_init__(self):
        FieldSpec.parse(self.field)
        if self.max_facets < 1:
            raise_validation_error(
                "--max-facets must be at least 1, got {}".format(self.max_facets)
            )
        if self.search_budget < 1:
            raise_validation_error(
                "the search budget must be at least 1, got {}".format(self.search_budget)
            )
        if self.max_facets > LARGE_MAX_FACETS:
            logger.warning(
                "--max-facets {} allows forest checks over 2^{} subcollections",
                self.max_facets, self.max_facets,
            )

    @property
    def field_spec(self) -> FieldSpec:
        return FieldSpec.parse(self.field)

    @classmethod
    def defaults_from_env(cls, environ: Optional[Mapping[str, str]] = None) -> Dict[str, Any]:
        environ = os.environ if environ is None else environ
        defaults: Dict[str, Any] = {}
        if environ.get(FIELD_ENV):
            defaults["field"] = environ[FIELD_ENV]
        if environ.get(MAX_FACETS_ENV):
            value = environ[MAX_FACETS_ENV]
            if not value.strip().isdigit():
                raise_validation_error("{}={!r} is not a number".format(MAX_FACETS_ENV, value))
            defaults["max_facets"] = int(value)
        return defaults

    @classmethod
    def from_args(cls, args, environ: Optional[Mapping[str, str]] = None) -> "ToolkitConfig":
        """Flags override the environment, which overrides the defaults."""
        values = cls.defaults_from_env(environ)
        for name in ("field", "max_facets", "cert_dir", "search_budget"):
            flag = getattr(args, name, None)
            if flag is not None:
                values[name] = flag
        for name in ("json", "oracle", "debug"):
            values[name] = bool(getattr(args, name, False))
        return cls(**values)
