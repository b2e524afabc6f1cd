"""Reader for the small ``kind { key: value; ... }`` files (.tm, .ntm, .kov)."""
from __future__ import annotations

import re
from typing import Dict, List

from ..errors import ValidationError

_ARROW = re.compile(r"\(([^()]*)\)\s*->\s*\(([^()]*)\)")
SYMBOL = re.compile(r"^[A-Za-z0-9_']+$")


def read_fields(text: str, kind: str) -> Dict[str, List[str]]:
    """Split a ``kind { ... }`` block into ``key -> [raw values]`` (keys may repeat)."""
    body = "\n".join(line.split("//", 1)[0] for line in text.splitlines()).strip()
    m = re.fullmatch(rf"{kind}\s*\{{(.*)\}}", body, re.S)
    if not m:
        raise ValidationError(f"expected a '{kind} {{ ... }}' block")
    fields: Dict[str, List[str]] = {}
    for part in m.group(1).split(";"):
        part = part.strip()
        if not part:
            continue
        if ":" not in part:
            raise ValidationError(f"expected 'key: value', got {part!r}")
        key, value = part.split(":", 1)
        fields.setdefault(key.strip(), []).append(value.strip())
    return fields


def one(fields: Dict[str, List[str]], key: str) -> str:
    vals = fields.get(key)
    if not vals:
        raise ValidationError(f"missing field {key!r}")
    if len(vals) > 1:
        raise ValidationError(f"field {key!r} given more than once")
    return vals[0]


def symbols(value: str) -> List[str]:
    out = value.split()
    for s in out:
        if not SYMBOL.match(s):
            raise ValidationError(f"bad symbol {s!r}")
    return out


def arrows(value: str):
    """Parse ``(a,b)->(c,d,R) ...`` into lists of (lhs parts, rhs parts)."""
    rest = _ARROW.sub("", value).strip()
    if rest:
        raise ValidationError(f"cannot parse transition text {rest!r}")
    out = []
    for lhs, rhs in _ARROW.findall(value):
        out.append(([p.strip() for p in lhs.split(",")], [p.strip() for p in rhs.split(",")]))
    return out
