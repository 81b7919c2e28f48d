"""JSON reading and writing for operators, tables, maps and reports.

Rationals are written as strings (``"3/4"``, ``"-2"``); integers are accepted
on input, floats are not.  Loading errors are :class:`InputError` and name the
file, the line and the offending field.
"""

from __future__ import annotations

import json
import math
import re
from dataclasses import dataclass
from fractions import Fraction
from importlib import resources
from pathlib import Path
from typing import Any, Callable

from .algebras import AlgebraTable, CoalgebraTable, MultTable
from .errors import YBError
from .reports import CheckReport, _jsonable
from .set_theoretic import BinOpTable, FiniteMap
from .tensor import Operator
from .yang_baxter import WxzTriple

SCHEMA_VERSION = "1"
BUILTIN_PREFIX = "builtin:"


class InputError(YBError, ValueError):
    def __init__(self, source: str, line: int | None, fieldname: str, message: str):
        self.source, self.line, self.field = source, line, fieldname
        where = f"{source}:{line}" if line else source
        super().__init__(f"{where}: field '{fieldname}': {message}")


def rational_str(x) -> str:
    return str(Fraction(x))


def parse_rational(value, fieldname: str = "value") -> Fraction:
    if isinstance(value, bool) or isinstance(value, float):
        raise ValueError(f"{fieldname} must be an integer or a rational string, got {value!r}")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except (ValueError, ZeroDivisionError):
            raise ValueError(f"{fieldname}: cannot read {value!r} as a rational") from None
    raise ValueError(f"{fieldname} must be an integer or a rational string, got {type(value).__name__}")


@dataclass
class Document:
    """A parsed JSON file that remembers where it came from."""

    source: str
    text: str
    data: Any

    def line_of(self, fieldname: str) -> int | None:
        m = re.search(r'"%s"\s*:' % re.escape(fieldname), self.text)
        return self.text.count("\n", 0, m.start()) + 1 if m else None

    def error(self, fieldname: str, message: str) -> InputError:
        return InputError(self.source, self.line_of(fieldname), fieldname, message)

    def get(self, key: str, default=...):
        if not isinstance(self.data, dict):
            raise InputError(self.source, 1, key, "top level must be a JSON object")
        if key not in self.data:
            if default is ...:
                raise InputError(self.source, None, key, "missing")
            return default
        return self.data[key]

    def field(self, key: str, convert: Callable, default=...):
        """``convert(self.get(key))`` with conversion errors tied to ``key``."""
        value = self.get(key, default)
        if value is default and default is not ...:
            return default
        try:
            return convert(value)
        except InputError:
            raise
        except (ValueError, TypeError, IndexError, ArithmeticError) as exc:
            raise self.error(key, str(exc)) from None


def data_path(name: str) -> Path:
    return Path(str(resources.files("ybkit") / "data" / f"{name}.json"))


def builtin_names() -> list[str]:
    folder = Path(str(resources.files("ybkit") / "data"))
    return sorted(p.stem for p in folder.glob("*.json"))


def read_document(path: str | Path) -> Document:
    path = str(path)
    if path.startswith(BUILTIN_PREFIX):
        name = path[len(BUILTIN_PREFIX):]
        real = data_path(name)
        if not real.exists():
            raise InputError(path, None, "path", f"no shipped fixture named {name!r}")
        source = path
    else:
        real, source = Path(path), path
    try:
        text = real.read_text()
    except OSError as exc:
        raise InputError(source, None, "path", exc.strerror or str(exc)) from None
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(source, exc.lineno, "<json>", exc.msg) from None
    return Document(source, text, data)


def document_from_data(data: Any, source: str = "<memory>") -> Document:
    return Document(source, json.dumps(data, indent=1), data)


# conversions -----------------------------------------------------------------


def _shape(value) -> tuple[int, ...]:
    if isinstance(value, int) and not isinstance(value, bool):
        value = [value]
    if not isinstance(value, list) or not value or not all(isinstance(x, int) and x > 0 for x in value):
        raise ValueError("expected a positive integer or a list of positive integers")
    return tuple(value)


def _matrix(value) -> list[list[Fraction]]:
    if not isinstance(value, list) or not all(isinstance(r, list) for r in value):
        raise ValueError("expected a list of rows")
    return [[parse_rational(x, f"entry ({i},{j})") for j, x in enumerate(row)] for i, row in enumerate(value)]


def _vector(value) -> list[Fraction]:
    if not isinstance(value, list):
        raise ValueError("expected a list")
    return [parse_rational(x, f"entry {i}") for i, x in enumerate(value)]


def _cube(value) -> list:
    if not isinstance(value, list):
        raise ValueError("expected a nested list")
    return [_matrix(v) for v in value]


def _positive_int(value) -> int:
    if not isinstance(value, int) or isinstance(value, bool) or value < 1:
        raise ValueError("expected a positive integer")
    return value


def operator_to_json(op: Operator) -> dict:
    return {
        "domain": list(op.domain),
        "codomain": list(op.codomain),
        "entries": [[rational_str(x) for x in row] for row in op.entries],
    }


def operator_from_doc(doc: Document, key: str | None = None) -> Operator:
    """An operator stored at the top level, or under ``key``."""
    if key is not None:
        doc = Document(doc.source, doc.text, doc.get(key))
    domain = doc.field("domain", _shape)
    codomain = doc.field("codomain", _shape, default=domain)
    entries = doc.field("entries", _matrix)
    try:
        return Operator(domain, codomain, entries)
    except (ValueError, TypeError) as exc:
        raise doc.error("entries", str(exc)) from None


def load_operator(path) -> Operator:
    return operator_from_doc(read_document(path))


def wxz_to_json(t: WxzTriple) -> dict:
    return {"W": operator_to_json(t.W), "X": operator_to_json(t.X), "Z": operator_to_json(t.Z)}


def load_wxz(path) -> WxzTriple:
    doc = read_document(path)
    t = WxzTriple(*(operator_from_doc(doc, k) for k in "WXZ"))
    try:
        t.dims
    except ValueError as exc:
        raise doc.error("X", str(exc)) from None
    return t


def table_to_json(T: MultTable) -> dict:
    out = {"dim": T.dim, "c": [[[rational_str(x) for x in v] for v in row] for row in T.c]}
    if isinstance(T, AlgebraTable):
        out["unit"] = [rational_str(x) for x in T.unit]
    return out


def table_from_doc(doc: Document, require_unit: bool = False) -> MultTable:
    dim = doc.field("dim", _positive_int)
    c = doc.field("c", _cube)
    unit = doc.field("unit", _vector, default=None)
    if unit is None and require_unit:
        raise doc.error("unit", "an associative unital algebra needs a unit vector")
    try:
        if unit is None:
            return MultTable(dim, c)
    except ValueError as exc:
        raise doc.error("c", str(exc)) from None
    try:
        return AlgebraTable(dim, c, unit)
    except ValueError as exc:
        raise doc.error("unit" if "unit" in str(exc) or "length" in str(exc) else "c", str(exc)) from None


def load_table(path) -> MultTable:
    return table_from_doc(read_document(path))


def load_algebra(path) -> AlgebraTable:
    return table_from_doc(read_document(path), require_unit=True)


def coalgebra_to_json(C: CoalgebraTable) -> dict:
    return {
        "dim": C.dim,
        "delta": [[[rational_str(x) for x in v] for v in row] for row in C.delta],
        "counit": [rational_str(x) for x in C.counit],
    }


def load_coalgebra(path) -> CoalgebraTable:
    doc = read_document(path)
    dim = doc.field("dim", _positive_int)
    delta = doc.field("delta", _cube)
    counit = doc.field("counit", _vector)
    try:
        return CoalgebraTable(dim, delta, counit)
    except ValueError as exc:
        raise doc.error("delta", str(exc)) from None


def finite_map_to_json(R: FiniteMap) -> dict:
    return {"n": R.n, "table": R.nested()}


def _int_nested(value):
    if isinstance(value, bool):
        raise ValueError("expected integers")
    if isinstance(value, list):
        return [_int_nested(v) for v in value]
    if not isinstance(value, int):
        raise ValueError(f"expected an integer, got {value!r}")
    return value


def load_finite_map(path) -> FiniteMap:
    doc = read_document(path)
    n = doc.field("n", _positive_int)
    table = doc.field("table", _int_nested)
    try:
        return FiniteMap.from_nested(n, table)
    except (ValueError, TypeError) as exc:
        raise doc.error("table", str(exc)) from None


def binop_to_json(B: BinOpTable) -> dict:
    return {"n": B.n, "table": [[B(a, b) for b in range(B.n)] for a in range(B.n)]}


def load_binop(path) -> BinOpTable:
    doc = read_document(path)
    n = doc.field("n", _positive_int)
    table = doc.field("table", _int_nested)
    try:
        if len(table) != n or any(len(row) != n for row in table):
            raise ValueError(f"table is not {n}x{n}")
        return BinOpTable(n, tuple(x for row in table for x in row))
    except (ValueError, TypeError) as exc:
        raise doc.error("table", str(exc)) from None


def load_matrix(path, key: str = "matrix") -> list[list[Fraction]]:
    """A square linear map stored row by row; rows index outputs."""
    doc = read_document(path)
    m = doc.field(key, _matrix)
    if not m or any(len(r) != len(m) for r in m):
        raise doc.error(key, "matrix must be square and non-empty")
    return m


@dataclass
class ModuleSpec:
    """A bimodule ``M`` over an algebra with a candidate derivation pair ``(d, D)``."""

    m: int
    left: list
    right: list
    d: list
    D: list


def load_module(path) -> ModuleSpec:
    """``{"m", "left", "right", "d", "D"}``; see :func:`ybkit.ujla.trivial_extension`."""
    doc = read_document(path)
    m = doc.field("m", _positive_int)
    return ModuleSpec(m, doc.field("left", _cube), doc.field("right", _cube), doc.field("d", _matrix), doc.field("D", _matrix))


def load_geo_config(path):
    """``{"r", "thetas"}`` in radians or ``{"r", "thetas_deg"}``; optional ``origin``."""
    from .geometry import GeoConfig

    doc = read_document(path)
    r = doc.field("r", float)
    origin = doc.field("origin", lambda v: tuple(float(x) for x in v), default=(0.0, 0.0))
    if "thetas_deg" in doc.data:
        thetas = doc.field("thetas_deg", lambda v: tuple(math.radians(float(x)) for x in v))
        key = "thetas_deg"
    else:
        thetas = doc.field("thetas", lambda v: tuple(float(x) for x in v))
        key = "thetas"
    try:
        return GeoConfig(r, thetas, origin)
    except ValueError as exc:
        raise doc.error(key if "angle" in str(exc) else "r", str(exc)) from None


def load_curve(path) -> dict:
    doc = read_document(path)
    if not isinstance(doc.data, dict) or not ({"ellipse", "polygon"} & doc.data.keys()):
        raise InputError(doc.source, 1, "ellipse|polygon", "curve must have an 'ellipse' or 'polygon' field")
    if "ellipse" in doc.data:
        return {"ellipse": doc.field("ellipse", lambda v: [float(x) for x in v])}
    return {"polygon": doc.field("polygon", lambda v: [[float(x) for x in p] for p in v])}


# output ------------------------------------------------------------------------


def _finite(x):
    if isinstance(x, float) and not math.isfinite(x):
        return None
    if isinstance(x, dict):
        return {k: _finite(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_finite(v) for v in x]
    return x


def to_jsonable(x):
    if isinstance(x, CheckReport):
        return x.to_dict()
    if hasattr(x, "to_dict"):
        return to_jsonable(x.to_dict())
    if isinstance(x, dict):
        return {str(k): to_jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [to_jsonable(v) for v in x]
    if hasattr(x, "item") and callable(x.item):  # numpy scalars
        return x.item()
    return _finite(_jsonable(x))


def dumps(payload: dict, *, lines: bool = False) -> str:
    """Canonical text: sorted keys, schema version, stable float formatting."""
    body = {"spec": SCHEMA_VERSION, **to_jsonable(payload)}
    if lines:
        return json.dumps(body, sort_keys=True, separators=(",", ":"), allow_nan=False)
    return json.dumps(body, sort_keys=True, indent=2, allow_nan=False)
