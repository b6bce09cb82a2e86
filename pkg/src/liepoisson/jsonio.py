"""Shared JSON formats: matrices with instance metadata, and complex literals.

Matrix payloads are dictionaries
``{"kind": "grass"|"group", "p": int, "q": int, "n": int,
   "rows": int, "cols": int, "data": [[re, im], ...]}``
with ``data`` row-major; group pairs carry a ``block2`` entry with the same
``rows/cols/data`` layout.  Complex scalars in flags use the ``a+bi`` form.
"""

from __future__ import annotations

import re

import numpy as np

from .core import SpaceInstance

__all__ = [
    "matrix_to_json",
    "matrix_from_json",
    "plain_matrix_to_json",
    "plain_matrix_from_json",
    "parse_complex",
    "format_complex",
]


def _data_of(m):
    m = np.asarray(m, dtype=complex)
    return [[float(v.real), float(v.imag)] for v in m.ravel()]


def _matrix_of(data, rows, cols):
    flat = np.array([complex(re_, im_) for re_, im_ in data], dtype=complex)
    if flat.size != rows * cols:
        raise ValueError("data length does not match rows*cols")
    return flat.reshape(rows, cols)


def plain_matrix_to_json(m):
    m = np.asarray(m)
    return {"rows": int(m.shape[0]), "cols": int(m.shape[1]), "data": _data_of(m)}


def plain_matrix_from_json(obj):
    return _matrix_of(obj["data"], int(obj["rows"]), int(obj["cols"]))


def matrix_to_json(inst: SpaceInstance, m):
    """Serialize a full stored matrix (per-block for group instances)."""
    m = np.asarray(m, dtype=complex)
    if inst.kind == "grass":
        out = {"kind": "grass", "p": inst.p, "q": inst.q, "n": inst.dim}
        out.update(plain_matrix_to_json(m))
        return out
    off = np.linalg.norm(m - inst.clean_blocks(m))
    if off > 1e-10 * max(1.0, np.linalg.norm(m)):
        raise ValueError("group matrices must be block diagonal")
    out = {"kind": "group", "p": 0, "q": 0, "n": inst.n}
    out.update(plain_matrix_to_json(inst.block(m, 0)))
    out["block2"] = plain_matrix_to_json(inst.block(m, 1))
    return out


def matrix_from_json(obj):
    """Parse a matrix payload; returns (instance, full stored matrix)."""
    kind = obj.get("kind")
    if kind == "grass":
        inst = SpaceInstance.grass(int(obj["p"]), int(obj["q"]))
        m = plain_matrix_from_json(obj)
        if m.shape != (inst.dim, inst.dim):
            raise ValueError("matrix shape does not match the instance")
        return inst, m
    if kind == "group":
        inst = SpaceInstance.group(int(obj["n"]))
        b1 = plain_matrix_from_json(obj)
        if "block2" not in obj:
            raise ValueError("group matrices need a block2 entry")
        b2 = plain_matrix_from_json(obj["block2"])
        if b1.shape != (inst.n, inst.n) or b2.shape != (inst.n, inst.n):
            raise ValueError("block shape does not match the instance")
        return inst, inst.embed_pair(b1, b2)
    raise ValueError(f"unknown matrix kind {kind!r}")


def parse_complex(text):
    """Parse an 'a+bi' literal ('1', '-2i', '1.5e-3+2i', 'i', ...)."""
    s = str(text).strip().replace(" ", "").replace("i", "j")
    if not s:
        raise ValueError("empty complex literal")
    # a bare trailing j needs an explicit coefficient for complex()
    s = re.sub(r"(?<![0-9.])j", "1j", s)
    try:
        return complex(s)
    except ValueError as exc:
        raise ValueError(f"bad complex literal {text!r}") from exc


def format_complex(z):
    z = complex(z)
    return f"{z.real:g}{z.imag:+g}i"
