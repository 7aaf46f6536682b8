"""JSON code files for linear and operator-matrix codes."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Optional, Union

from . import __version__
from .construction import CodeParams, LinearLrcCode
from .f4family import OperatorMatrix, family_matrix
from .gf import FieldSpec
from .linalg import FieldMatrix

FORMAT_VERSION = 1

__all__ = ["CodeFile", "CodeFileError", "dumps", "loads", "save", "load"]


class CodeFileError(ValueError):
    pass


@dataclass
class CodeFile:
    code: Union[LinearLrcCode, OperatorMatrix]
    repair_sets: Optional[list] = None
    provenance: dict = field(default_factory=dict)
    r: Optional[int] = None  # locality of an operator code, when known

    @property
    def kind(self) -> str:
        return "linear" if isinstance(self.code, LinearLrcCode) else "operator"

    def to_json(self) -> dict:
        code = self.code
        prov = {"tool_version": __version__, **self.provenance}
        if isinstance(code, LinearLrcCode):
            prov.setdefault("seed", code.seed)
            obj = {
                "format": FORMAT_VERSION,
                "kind": "linear",
                "field": code.field.to_json(),
                "params": {"n": code.n, "k": code.k, "r": code.r},
                "generator": [list(row) for row in code.generator.entries],
                "groups": [list(g) for g in code.groups],
            }
            if code.replicated_column is not None:
                obj["replicated_column"] = code.replicated_column
        else:
            if code.family != "custom":
                matrix = {"family": code.family, "i": code.i}
            else:
                matrix = {"ops": [list(row) for row in code.ops]}
            obj = {
                "format": FORMAT_VERSION,
                "kind": "operator",
                "field": {"p": 2, "m": 2, "modulus": 7},
                "params": {"n": code.n, "k": code.k, "r": self.r},
                "matrix": matrix,
            }
        if self.repair_sets is not None:
            obj["repair_sets"] = [None if s is None else list(s) for s in self.repair_sets]
        obj["provenance"] = prov
        return obj

    @classmethod
    def from_json(cls, obj: dict) -> "CodeFile":
        try:
            if obj.get("format") != FORMAT_VERSION:
                raise CodeFileError(f"unsupported format version {obj.get('format')!r}")
            kind = obj["kind"]
            F = FieldSpec.from_json(obj["field"])
            params = obj["params"]
            prov = dict(obj.get("provenance", {}))
            prov.pop("tool_version", None)
            repair_sets = obj.get("repair_sets")
            if kind == "linear":
                if "matrix" in obj:
                    raise CodeFileError("linear code files carry a generator, not an operator matrix")
                G = FieldMatrix.from_rows(F, obj["generator"], params["n"])
                seed = prov.pop("seed", None)
                code = LinearLrcCode(
                    CodeParams(params["n"], params["k"], params["r"], F.q), G,
                    tuple(tuple(g) for g in obj["groups"]), seed, obj.get("replicated_column"))
                if G.shape != (params["k"], params["n"]):
                    raise CodeFileError(f"generator shape {G.shape} does not match params")
            elif kind == "operator":
                if "generator" in obj:
                    raise CodeFileError("operator code files carry an operator matrix, not a generator")
                m = obj["matrix"]
                if "family" in m:
                    code = family_matrix(m["family"], m["i"])
                else:
                    code = OperatorMatrix(tuple(tuple(row) for row in m["ops"]))
            else:
                raise CodeFileError(f"unknown code kind {kind!r}")
        except (KeyError, TypeError) as exc:
            raise CodeFileError(f"malformed code file: {exc!r}") from exc
        if repair_sets is not None:
            repair_sets = [None if s is None else tuple(s) for s in repair_sets]
        r = params.get("r") if kind == "operator" else None
        return cls(code, repair_sets, prov, r)


def dumps(cf: CodeFile) -> str:
    return json.dumps(cf.to_json(), indent=1)


def loads(text: str) -> CodeFile:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise CodeFileError(f"not valid JSON: {exc}") from exc
    if not isinstance(obj, dict):
        raise CodeFileError("code file must hold a JSON object")
    return CodeFile.from_json(obj)


def save(cf: CodeFile, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(dumps(cf))
        fh.write("\n")


def load(path) -> CodeFile:
    with open(path, encoding="utf-8") as fh:
        return loads(fh.read())
