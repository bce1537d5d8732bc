"""JSON encoding of the domain objects.

Rationals travel as strings ("1/2") so that the output is exact and does
not depend on float formatting.  Reports are wrapped in a versioned
envelope and dumped with sorted keys, which makes them byte-stable.
"""

from __future__ import annotations

import hashlib
import json
from fractions import Fraction
from typing import Any, Iterable

from .linalg import IntMatrix, format_rational, ratvec

SCHEMA = "realstruct/1"


class ParseError(ValueError):
    """Input is not well-formed (bad JSON, wrong shape, bad rational)."""


def rational_list(vec: Iterable[Fraction]) -> list[str]:
    return [format_rational(x) for x in vec]


def parse_vector(obj: Any, name: str = "vector") -> tuple[Fraction, ...]:
    if not isinstance(obj, list):
        raise ParseError(f"{name} must be a list")
    try:
        return ratvec(str(x) if not isinstance(x, (int, str)) or isinstance(x, bool) else x for x in obj)
    except (ValueError, ZeroDivisionError) as exc:
        raise ParseError(f"bad rational in {name}: {exc}") from None


def parse_matrix(obj: Any, name: str = "matrix") -> IntMatrix:
    if not isinstance(obj, list) or not obj or not all(isinstance(r, list) for r in obj):
        raise ParseError(f"{name} must be a non-empty list of rows")
    if any(not isinstance(x, int) or isinstance(x, bool) for r in obj for x in r):
        raise ParseError(f"{name} entries must be integers")
    try:
        return IntMatrix.from_rows(obj)
    except ValueError as exc:
        raise ParseError(f"{name}: {exc}") from None


def loads(text: str) -> Any:
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc}") from None


def dumps(obj: Any) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ": "), indent=2, ensure_ascii=False, default=_default)


def _default(obj):
    if isinstance(obj, Fraction):
        return format_rational(obj)
    if isinstance(obj, IntMatrix):
        return obj.tolist()
    if hasattr(obj, "to_json"):
        return obj.to_json()
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def digest(payload: Any) -> str:
    text = json.dumps(payload, sort_keys=True, separators=(",", ":"), default=_default)
    return hashlib.sha256(text.encode()).hexdigest()[:16]


def envelope(command: list[str], inputs: Any, result: Any, warnings: list[dict] | None = None,
             topics: list[str] | None = None) -> dict:
    return {
        "schema": SCHEMA,
        "command": command,
        "input_digest": digest(inputs),
        "result": result,
        "warnings": warnings or [],
        "topics": topics or [],
    }


# ---------------------------------------------------------------------------
# torus structures


def torus_from_json(obj: Any):
    from .torus import RealTorusStructure

    if not isinstance(obj, dict):
        raise ParseError("torus structure must be a JSON object with keys n, s, b")
    missing = {"s", "b"} - obj.keys()
    if missing:
        raise ParseError(f"torus structure is missing {sorted(missing)}")
    s = parse_matrix(obj["s"], "s")
    b = parse_vector(obj["b"], "b")
    n = obj.get("n", s.shape[0] // 2)
    if not isinstance(n, int) or isinstance(n, bool):
        raise ParseError("n must be an integer")
    if s.shape != (2 * n, 2 * n) or len(b) != 2 * n:
        raise ParseError(f"s must be {2 * n}x{2 * n} and b of length {2 * n}")
    return RealTorusStructure(n, s, b)


def torus_to_json(struct) -> dict:
    return {"n": struct.n, "s": struct.s.tolist(), "b": rational_list(struct.b)}


# ---------------------------------------------------------------------------
# hyperelliptic parameters


def affine_from_json(obj: Any, antiholo: bool, name: str):
    from .hyperelliptic import EllipticAffineMap, HyperellipticError

    if not isinstance(obj, dict) or "M" not in obj:
        raise ParseError(f"{name} must be an object with M and optional t")
    M = parse_matrix(obj["M"], f"{name}.M")
    t = parse_vector(obj.get("t", [0, 0]), f"{name}.t")
    try:
        return EllipticAffineMap(M, t, antiholo)
    except HyperellipticError as exc:
        raise ParseError(f"{name}: {exc}") from None


def sigma_from_json(obj: Any):
    from .hyperelliptic import ProductMap

    if not isinstance(obj, dict) or not {"E", "F"} <= obj.keys():
        raise ParseError("sigma must be an object with E and F parts")
    return ProductMap(affine_from_json(obj["E"], True, "sigma.E"), affine_from_json(obj["F"], True, "sigma.F"))


def hyper_params_from_json(obj: Any) -> dict:
    """{"eta": [[...], ...], "epsilon": [...], "sigma": {...}} -> keyword arguments."""
    if obj is None:
        return {}
    if not isinstance(obj, dict):
        raise ParseError("params must be a JSON object")
    unknown = set(obj) - {"eta", "epsilon", "sigma"}
    if unknown:
        raise ParseError(f"unknown parameter keys {sorted(unknown)}")
    out: dict = {}
    if "eta" in obj:
        if not isinstance(obj["eta"], list):
            raise ParseError("eta must be a list of vectors")
        out["eta"] = [parse_vector(v, "eta") for v in obj["eta"]]
    if "epsilon" in obj:
        out["epsilon"] = parse_vector(obj["epsilon"], "epsilon")
    if "sigma" in obj:
        out["sigma"] = sigma_from_json(obj["sigma"])
    return out
