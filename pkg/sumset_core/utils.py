# -*- coding: utf-8 -*-
import json
from typing import Any, Sequence
import numpy as np
from blake3 import blake3
from scipy.spatial import cKDTree
import jcs


__all__ = [
    "json_canonical",
    "multi_hash_blake3",
    "cloud_digest",
    "certificate_digest",
    "to_jsonable",
    "approx_equal",
    "greedy_thin",
]


def json_canonical(obj):
    # type: (Any) -> bytes
    """
    Canonical, deterministic serialization of reports and certificates.

    We serialize reports in a deterministic/reproducible manner by using
    [JCS (RFC 8785)](https://datatracker.ietf.org/doc/html/rfc8785) canonicalization.
    """
    obj = to_jsonable(obj)
    ser = jcs.canonicalize(obj)
    des = json.loads(ser)
    if des != obj:
        raise ValueError(f"Not canonicalizable {obj} round-trips to {des}")
    return ser


def to_jsonable(obj):
    # type: (Any) -> Any
    """
    Convert numpy arrays, numpy scalars, tuples and objects with a `dict()` method into plain
    JSON data (dict, list, float, int, str, bool, None).

    :param Any obj: Object to convert.
    :return: JSON-safe equivalent.
    """
    if hasattr(obj, "dict") and callable(obj.dict):
        return to_jsonable(obj.dict())
    if isinstance(obj, dict):
        return {str(k): to_jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [to_jsonable(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return to_jsonable(obj.tolist())
    if isinstance(obj, (bool, np.bool_)):
        return bool(obj)
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        return float(obj)
    return obj


def multi_hash_blake3(data):
    # type: (bytes) -> str
    """
    Create blake3 hash with multihash prefix.

    :param bytes data: Bytes to be hashed
    :return: Multihash prefixed 256-bit blake3 hash as hex string
    :rtype: str
    """
    return (b"\x1e\x20" + blake3(data).digest()).hex()


def cloud_digest(points):
    # type: (np.ndarray) -> str
    """
    Fingerprint a point array by shape and raw float64 content.

    Two clouds with identical points in identical order share a digest. Used to let identical
    summand descriptions share a single certifier tree.

    :param ndarray points: Array of shape (N, d)
    :return: Multihash prefixed blake3 hex digest
    :rtype: str
    """
    arr = np.ascontiguousarray(points, dtype=np.float64)
    header = f"{arr.shape[0]}x{arr.shape[1]}:".encode("ascii")
    return multi_hash_blake3(header + arr.tobytes())


def certificate_digest(obj):
    # type: (Any) -> str
    """Blake3 multihash of the canonical JSON serialization of a certificate or report."""
    return multi_hash_blake3(json_canonical(obj))


def approx_equal(a, b, rel_tol=1e-9, abs_tol=1e-9):
    # type: (Any, Any, float, float) -> bool
    """
    Recursively compare JSON-like structures with float tolerance.

    :param a: Left value (dict, list, number, str, bool, None)
    :param b: Right value
    :return: Whether both values agree within tolerance
    :rtype: bool
    """
    a, b = to_jsonable(a), to_jsonable(b)
    if isinstance(a, dict) and isinstance(b, dict):
        if a.keys() != b.keys():
            return False
        return all(approx_equal(a[k], b[k], rel_tol, abs_tol) for k in a)
    if isinstance(a, list) and isinstance(b, list):
        if len(a) != len(b):
            return False
        return all(approx_equal(x, y, rel_tol, abs_tol) for x, y in zip(a, b))
    if isinstance(a, bool) or isinstance(b, bool):
        return a is b
    if isinstance(a, (int, float)) and isinstance(b, (int, float)):
        return bool(np.isclose(a, b, rtol=rel_tol, atol=abs_tol))
    return a == b


def greedy_thin(points, radius):
    # type: (np.ndarray, float) -> np.ndarray
    """
    Greedy first-seen-wins thinning of a point array.

    Points are visited in input order; a point is kept unless an earlier *kept* point lies within
    `radius`. With a tiny radius this is deduplication at tolerance, with a larger radius the
    kept points form a `radius`-net of the input.

    :param ndarray points: Array of shape (N, d)
    :param float radius: Thinning radius (>= 0)
    :return: Sorted indices of kept points
    :rtype: ndarray
    """
    points = np.asarray(points, dtype=np.float64)
    n = len(points)
    if n <= 1:
        return np.arange(n)
    # Exact duplicates first, so that clouds of many coincident sums stay cheap
    _, first = np.unique(points, axis=0, return_index=True)
    first = np.sort(first)
    if radius <= 0:
        return first
    candidates = points[first]
    pairs = cKDTree(candidates).query_pairs(radius, output_type="ndarray")
    keep = np.ones(len(first), dtype=bool)
    if len(pairs):
        pairs = np.sort(pairs, axis=1)
        order = np.lexsort((pairs[:, 0], pairs[:, 1]))
        for i, j in pairs[order]:
            if keep[i] and keep[j]:
                keep[j] = False
    return first[keep]
