"""
document_handler.py - JSON document IO and validation for kissing

Provides:
- DocumentValidator: schema checks for graph, packing, lamination and map documents
- read_json / write_json: UTF-8 file IO
- canonical: fixed-precision, JSON-safe rendering of report values
- load_graph / load_packing / load_lamination / load_map: typed loaders
"""

import json
import logging
import math
import os
from fractions import Fraction
from typing import Any, Dict, List

import numpy as np

from kissing.angle_dynamics import Lamination, lamination_from_json
from kissing.antirational import AntiRationalMap, map_from_json, named_map
from kissing.errors import DocumentError
from kissing.packing import CirclePacking, packing_from_json
from kissing.plane_graph import PlaneGraph, from_json

logger = logging.getLogger(__name__)

SIGNIFICANT_DIGITS = 12


# ============================================================================
# FILE IO
# ============================================================================

def read_json(path: str) -> Any:
    """
    Parse a JSON file.

    Raises:
        OSError: missing or unreadable file
        DocumentError: the file is not valid JSON
    """
    with open(path, "r", encoding="utf-8") as handle:
        text = handle.read()
    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        raise DocumentError(f"{path} is not valid JSON: {e.msg} (line {e.lineno})",
                            {"path": path}) from e


def dumps(document: Any) -> str:
    """Canonical JSON text: fixed float precision, insertion field order"""
    return json.dumps(canonical(document), ensure_ascii=False, indent=2, allow_nan=False)


def write_json(path: str, document: Any) -> None:
    with open(path, "w", encoding="utf-8") as handle:
        handle.write(dumps(document))
        handle.write("\n")
    logger.info(f"💾 Wrote {path}")


def _round(x: float) -> Any:
    if not math.isfinite(x):
        return None
    value = float(f"{x:.{SIGNIFICANT_DIGITS}g}")
    return 0.0 if value == 0 else value


def canonical(value: Any) -> Any:
    """
    Make a report value JSON-safe and byte-stable.

    Floats keep 12 significant digits, complex numbers become [re, im],
    fractions become "p/q" strings, infinities become null.
    """
    if isinstance(value, bool) or value is None or isinstance(value, str):
        return value
    if isinstance(value, (int, np.integer)):
        return int(value)
    if isinstance(value, (float, np.floating)):
        return _round(float(value))
    if isinstance(value, (complex, np.complexfloating)):
        z = complex(value)
        if not (math.isfinite(z.real) and math.isfinite(z.imag)):
            return None
        return [_round(z.real), _round(z.imag)]
    if isinstance(value, Fraction):
        return str(value)
    if isinstance(value, np.ndarray):
        return [canonical(v) for v in value.tolist()]
    if isinstance(value, dict):
        return {str(k): canonical(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [canonical(v) for v in value]
    if hasattr(value, "to_dict"):
        return canonical(value.to_dict())
    raise DocumentError(f"Cannot serialize {type(value).__name__}")


# ============================================================================
# DOCUMENT VALIDATION
# ============================================================================

class DocumentValidator:
    """
    Structural checks run before a document reaches the library.

    The library constructors do the full semantic validation; these checks
    give early, field-specific messages.
    """

    @staticmethod
    def require_object(document: Any, kind: str) -> Dict[str, Any]:
        if not isinstance(document, dict):
            raise DocumentError(f"{kind} document must be a JSON object")
        return document

    @staticmethod
    def require_fields(document: Dict[str, Any], fields: List[str], kind: str) -> None:
        missing = [name for name in fields if name not in document]
        if missing:
            raise DocumentError(f"{kind} document is missing {missing}", {"missing": missing})

    @staticmethod
    def validate_graph(document: Any) -> Dict[str, Any]:
        document = DocumentValidator.require_object(document, "Graph")
        DocumentValidator.require_fields(document, ["n", "rotation"], "Graph")
        rotation = document["rotation"]
        if isinstance(rotation, list) and len(rotation) != document["n"]:
            raise DocumentError(f"Graph document has {len(rotation)} rotation lists for n={document['n']}")
        return document

    @staticmethod
    def validate_packing(document: Any) -> Dict[str, Any]:
        document = DocumentValidator.require_object(document, "Packing")
        DocumentValidator.require_fields(document, ["graph", "circles"], "Packing")
        DocumentValidator.validate_graph(document["graph"])
        for i, circle in enumerate(document["circles"] if isinstance(document["circles"], list) else []):
            if not isinstance(circle, dict):
                raise DocumentError(f"Circle {i} must be an object")
            DocumentValidator.require_fields(circle, ["cx", "cy", "r"], f"Circle {i}")
        return document

    @staticmethod
    def validate_lamination(document: Any) -> Dict[str, Any]:
        document = DocumentValidator.require_object(document, "Lamination")
        DocumentValidator.require_fields(document, ["d"], "Lamination")
        return document

    @staticmethod
    def validate_map(document: Any) -> Dict[str, Any]:
        document = DocumentValidator.require_object(document, "Map")
        DocumentValidator.require_fields(document, ["num", "den"], "Map")
        return document


# ============================================================================
# TYPED LOADERS
# ============================================================================

def load_graph(path: str) -> PlaneGraph:
    return from_json(DocumentValidator.validate_graph(read_json(path)))


def load_packing(path: str) -> CirclePacking:
    return packing_from_json(DocumentValidator.validate_packing(read_json(path)))


def load_lamination(path: str) -> Lamination:
    return lamination_from_json(DocumentValidator.validate_lamination(read_json(path)))


def load_map(name_or_path: str) -> AntiRationalMap:
    """A named map (tetrahedron, ..., polygon<d>) or a map document on disk"""
    if not os.path.exists(name_or_path) and not name_or_path.endswith(".json"):
        return named_map(name_or_path)
    return map_from_json(DocumentValidator.validate_map(read_json(name_or_path)))


__all__ = [
    "DocumentValidator",
    "read_json",
    "write_json",
    "dumps",
    "canonical",
    "load_graph",
    "load_packing",
    "load_lamination",
    "load_map",
]
