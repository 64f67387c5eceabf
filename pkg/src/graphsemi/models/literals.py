"""Text literals for model elements, with ``*`` as the product.

- delta model: ``delta``, ``0``, ``1``, ``e``, ``e^n``, ``e^-m``
- X model: anything :func:`parse_x` accepts, or a letter word over ``e f E F X``
- density model: ``per(pre;period | pre;period)``, ``0`` or a P2 element
"""

from __future__ import annotations

import re
from functools import reduce

from ..algebra import ZERO, PathPair
from ..syntax import parse_element
from . import delta as dm
from . import density as dn
from . import xmodel as xm

__all__ = ["MODEL_NAMES", "eval_model", "split_product"]

MODEL_NAMES = ("delta", "p2x", "density")

_POWER = re.compile(r"e(?:\^(-?)(\d+))?\Z")


def split_product(text: str) -> list[str]:
    """Split on ``*`` outside brackets."""
    parts, depth, cur = [], 0, []
    for c in text:
        if c in "([":
            depth += 1
        elif c in ")]":
            depth -= 1
        if c == "*" and depth == 0:
            parts.append("".join(cur).strip())
            cur = []
        else:
            cur.append(c)
    parts.append("".join(cur).strip())
    if any(not p for p in parts):
        raise ValueError(f"empty factor in {text!r}")
    return parts


def _delta_factor(tok: str):
    s = "".join(tok.split())
    if s == "delta":
        return dm.DELTA
    if s == "0":
        return ZERO
    if s == "1":
        return dm.power_pair(0, 0)
    mt = _POWER.match(s)
    if mt is None:
        raise ValueError(f"cannot parse delta-model element {tok!r}")
    k = 1 if mt[2] is None else int(mt[2])
    return dm.power_pair(0, k) if mt[1] else dm.power_pair(k, 0)


def _x_factor(tok: str):
    s = "".join(tok.split())
    if s and set(s) <= set("efEFX1"):
        return xm.x_normalize(s)
    return xm.parse_x(s)


def _density_factor(tok: str):
    if tok.replace(" ", "").startswith("per("):
        s = dn.parse_density(tok)
        if not dn.density_valid(s):
            raise ValueError(f"{s} violates the density constraint")
        return s
    return parse_element(tok, dn.P2)


_MODELS = {
    "delta": (_delta_factor, dm.delta_mul),
    "p2x": (_x_factor, xm.x_mul),
    "density": (_density_factor, dn.density_mul),
}


def eval_model(model: str, text: str):
    """Evaluate a ``*``-separated product of model literals."""
    if model not in _MODELS:
        raise ValueError(f"unknown model {model!r}; choose from {', '.join(MODEL_NAMES)}")
    parse, mul = _MODELS[model]
    return reduce(mul, (parse(t) for t in split_product(text)))
