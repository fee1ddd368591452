# -*- coding: utf-8 -*-
"""*Input documents of the command line.*

All inputs are UTF-8 JSON documents:

- **point cloud** `{"dim": 2, "points": [[0, 0], [1, 0], [0, 1]], "resolution": 0.0}`
- **IFS** `{"dim": 1, "maps": [{"ratio": 0.333, "offset": [0]}, ...], "depth": 8}`
- **combinations** `{"coeffs": [[0.5, 0.5], [1.0, 0.0]]}` one row per summand cloud

Documents are validated with pydantic models. Every failure is reported as a `DataError` naming
the file and the offending field or line.
"""
import json
import math
import pathlib
from typing import List, Optional, Union
from loguru import logger as log
import sumset_core as sc

try:
    from pydantic.v1 import BaseModel, Field, ValidationError, validator
except ImportError:  # pragma: no cover
    from pydantic import BaseModel, Field, ValidationError, validator


__all__ = [
    "PointCloudDoc",
    "MapDoc",
    "IfsDoc",
    "CombinationsDoc",
    "load_document",
    "load_cloud",
    "load_ifs",
    "load_set",
    "load_combinations",
]


def _finite_rows(rows, width, name):
    # type: (List[List[float]], Optional[int], str) -> List[List[float]]
    for i, row in enumerate(rows):
        if width is not None and len(row) != width:
            raise ValueError(f"{name}[{i}] has {len(row)} coordinates, expected {width}")
        if not all(math.isfinite(v) for v in row):
            raise ValueError(f"{name}[{i}] contains non-finite values")
    return rows


class PointCloudDoc(BaseModel):
    """Finite point cloud with optional discretization resolution."""

    dim: int = Field(..., gt=0)
    points: List[List[float]] = Field(..., min_items=1)
    resolution: float = Field(0.0, ge=0)

    @validator("points")
    def check_points(cls, v, values):
        return _finite_rows(v, values.get("dim"), "points")


class MapDoc(BaseModel):
    """Contracting similarity `x -> ratio * orthogonal @ x + offset`."""

    ratio: float = Field(..., gt=0, lt=1)
    offset: List[float] = Field(..., min_items=1)
    orthogonal: Optional[List[List[float]]] = None

    @validator("offset")
    def check_offset(cls, v):
        return _finite_rows([v], None, "offset")[0]

    @validator("orthogonal")
    def check_orthogonal(cls, v, values):
        if v is None:
            return v
        width = len(values.get("offset", [])) or None
        if width is not None and len(v) != width:
            raise ValueError(f"orthogonal has {len(v)} rows, expected {width}")
        return _finite_rows(v, width, "orthogonal")


class IfsDoc(BaseModel):
    """Iterated function system of contracting similarities."""

    dim: int = Field(..., gt=0)
    maps: List[MapDoc] = Field(..., min_items=2)
    depth: Optional[int] = Field(None, ge=0)

    @validator("maps")
    def check_maps(cls, v, values):
        dim = values.get("dim")
        for i, m in enumerate(v):
            if dim is not None and len(m.offset) != dim:
                raise ValueError(f"maps[{i}].offset has {len(m.offset)} coordinates, expected {dim}")
        return v


class CombinationsDoc(BaseModel):
    """Convex coefficients, one row per summand cloud."""

    coeffs: List[List[float]] = Field(..., min_items=1)

    @validator("coeffs")
    def check_coeffs(cls, v):
        return _finite_rows(v, None, "coeffs")


def load_document(path):
    # type: (Union[str, pathlib.Path]) -> dict
    """
    Read a JSON document.

    :param path: File path
    :return: Parsed JSON object
    :rtype: dict
    :raises DataError: If the file is missing, unreadable or not a JSON object
    """
    path = pathlib.Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except FileNotFoundError:
        raise sc.DataError(path, "file not found")
    except (OSError, UnicodeDecodeError) as e:
        raise sc.DataError(path, f"unreadable ({e})")
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as e:
        raise sc.DataError(path, f"line {e.lineno} column {e.colno}: {e.msg}")
    if not isinstance(doc, dict):
        raise sc.DataError(path, "top level must be a JSON object")
    log.debug(f"Loaded {path}")
    return doc


def _parse(model, path, doc):
    try:
        return model.parse_obj(doc)
    except ValidationError as e:
        problems = "; ".join(
            f"{'.'.join(str(p) for p in err['loc'])}: {err['msg']}" for err in e.errors()
        )
        raise sc.DataError(path, problems)


def load_cloud(path):
    # type: (Union[str, pathlib.Path]) -> sc.PointCloud
    """Load and validate a point cloud document."""
    doc = _parse(PointCloudDoc, path, load_document(path))
    return sc.PointCloud(doc.points, dim=doc.dim)


def _to_model(doc):
    # type: (IfsDoc) -> sc.IfsModel
    maps = [sc.IfsMap(m.ratio, m.offset, m.orthogonal) for m in doc.maps]
    return sc.IfsModel(doc.dim, maps, depth=doc.depth or 0)


def load_ifs(path):
    # type: (Union[str, pathlib.Path]) -> sc.IfsModel
    """Load and validate an IFS document."""
    doc = _parse(IfsDoc, path, load_document(path))
    try:
        return _to_model(doc)
    except ValueError as e:
        raise sc.DataError(path, str(e))


def load_set(path, depth=None):
    # type: (Union[str, pathlib.Path], Optional[int]) -> sc.DiscretizedSet
    """
    Load a discretized set from either an IFS or a point cloud document.

    :param path: File path
    :param int depth: Discretization depth for IFS documents (overrides the document)
    :return: Discretized set
    :rtype: DiscretizedSet
    """
    raw = load_document(path)
    if "maps" in raw:
        doc = _parse(IfsDoc, path, raw)
        try:
            model = _to_model(doc)
        except ValueError as e:
            raise sc.DataError(path, str(e))
        return sc.discretize(model, depth)
    doc = _parse(PointCloudDoc, path, raw)
    return sc.from_cloud(sc.PointCloud(doc.points, dim=doc.dim), doc.resolution)


def load_combinations(path):
    # type: (Union[str, pathlib.Path]) -> List[List[float]]
    """Load and validate a combinations document."""
    return _parse(CombinationsDoc, path, load_document(path)).coeffs
