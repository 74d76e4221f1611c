"""Problem instances and their JSON serialization."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from functools import lru_cache
from importlib import resources
from pathlib import Path
from typing import Any

import jsonschema

from .errors import InstanceError, ParameterError, SchemaError
from .oracles import FunctionOracle, oracle_from_dict
from .properties import check_normalized, check_positive_singletons
from .sets import TOL


@lru_cache(maxsize=None)
def load_schema(name: str) -> dict:
    text = resources.files("subcons").joinpath("schemas", name).read_text()
    return json.loads(text)


def validate_json(doc: Any, schema_name: str) -> None:
    try:
        jsonschema.validate(doc, load_schema(schema_name))
    except jsonschema.ValidationError as exc:
        raise SchemaError(f"{schema_name}: {exc.message}") from None


@dataclass(frozen=True)
class ProblemInstance:
    """``f`` (cost) and ``g`` (coverage) on one ground set, plus a cover or a budget."""

    f: FunctionOracle
    g: FunctionOracle
    cover: float | None = None
    budget: float | None = None

    def __post_init__(self) -> None:
        if (self.cover is None) == (self.budget is None):
            raise ParameterError("give exactly one of cover (SCSC) or budget (SCSK)")
        if self.f.n != self.g.n:
            raise InstanceError("f and g must share one ground set")
        for name, o in (("f", self.f), ("g", self.g)):
            for check in (check_normalized(o), check_positive_singletons(o)):
                if not check.passed:
                    raise InstanceError(f"{name}: {check.name} check failed ({check.detail})")
        if self.cover is not None:
            lo, hi = self.g.singletons().min(), self.g._value(self.g.full)
            if not lo - TOL <= self.cover <= hi + TOL:
                raise ParameterError(f"cover {self.cover!r} outside [min_j g(j), g(V)] = [{lo!r}, {hi!r}]")
        else:
            lo, hi = self.f.singletons().min(), self.f._value(self.f.full)
            if not lo - TOL <= self.budget <= hi + TOL:
                raise ParameterError(f"budget {self.budget!r} outside [min_j f(j), f(V)] = [{lo!r}, {hi!r}]")

    @property
    def problem(self) -> str:
        return "scsc" if self.cover is not None else "scsk"

    @property
    def bound(self) -> float:
        return self.cover if self.cover is not None else self.budget

    @property
    def n(self) -> int:
        return self.f.n


@dataclass
class InstanceSpec:
    """Serializable problem description: catalog entries, bound, generator provenance."""

    n: int
    f: dict[str, Any]
    g: dict[str, Any]
    bound: dict[str, float]
    seed: int | None = None
    kind: str = "custom"
    params: dict[str, Any] = field(default_factory=dict)

    def to_dict(self) -> dict[str, Any]:
        return {
            "n": self.n,
            "kind": self.kind,
            "seed": self.seed,
            "params": self.params,
            "bound": self.bound,
            "f": self.f,
            "g": self.g,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=1, allow_nan=False) + "\n"

    def write(self, path: str | Path) -> None:
        Path(path).write_text(self.to_json())

    @classmethod
    def from_dict(cls, d: dict[str, Any]) -> "InstanceSpec":
        validate_json(d, "instance.schema.json")
        return cls(
            n=d["n"], f=d["f"], g=d["g"], bound=d["bound"],
            seed=d.get("seed"), kind=d.get("kind", "custom"), params=d.get("params", {}),
        )

    @classmethod
    def read(cls, path: str | Path) -> "InstanceSpec":
        path = Path(path)
        try:
            doc = json.loads(path.read_text())
        except json.JSONDecodeError as exc:
            raise SchemaError(f"{path}: {exc}") from None
        spec = cls.from_dict(doc)
        spec._base_dir = path.parent
        return spec

    def build(self) -> tuple[FunctionOracle, FunctionOracle]:
        base = getattr(self, "_base_dir", None)
        f = oracle_from_dict(self.f, base)
        g = oracle_from_dict(self.g, base)
        if f.n != self.n or g.n != self.n:
            raise SchemaError(f"oracle sizes ({f.n}, {g.n}) disagree with n = {self.n}")
        return f, g

    def problem_instance(self) -> ProblemInstance:
        f, g = self.build()
        if "cover" in self.bound:
            return ProblemInstance(f, g, cover=self.bound["cover"])
        return ProblemInstance(f, g, budget=self.bound["budget"])

    @classmethod
    def from_oracles(cls, f: FunctionOracle, g: FunctionOracle, bound: dict[str, float], **kw) -> "InstanceSpec":
        return cls(n=f.n, f=f.to_dict(), g=g.to_dict(), bound=bound, **kw)
