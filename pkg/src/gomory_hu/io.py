"""Space documents: JSON and headerless CSV matrices.

JSON layout::

    {"points": ["a", "b"], "distances": [["0", "1/2"], ["1/2", "0"]],
     "name": "...", "source": "..."}

Distances may be given as ``"p/q"`` strings, decimal strings or JSON
numbers (parsed from their decimal text, never through ``float``).  The
canonical serialization writes reduced fractions as strings and keeps the
point order, so ``dumps(loads(s))`` is the identity on canonical text.
"""

from __future__ import annotations

import csv
import io
import json
from fractions import Fraction
from pathlib import Path
from typing import Sequence

from .core import UltraSpace, validate_ultrametric
from .errors import UltrametricError


def fraction_str(value: Fraction) -> str:
    return str(Fraction(value))


def space_to_dict(X: UltraSpace, **metadata) -> dict:
    doc = {
        "points": list(X.points),
        "distances": [[fraction_str(v) for v in row] for row in X.dist],
    }
    doc.update({k: v for k, v in metadata.items() if v is not None})
    return doc


def space_from_dict(doc: dict) -> UltraSpace:
    if not isinstance(doc, dict) or "points" not in doc or "distances" not in doc:
        raise UltrametricError('space document needs "points" and "distances"')
    return validate_ultrametric(doc["distances"], doc["points"])


def dumps(X: UltraSpace, **metadata) -> str:
    return json.dumps(space_to_dict(X, **metadata), indent=2) + "\n"


def loads(text: str) -> UltraSpace:
    try:
        # keep numeric literals exact
        doc = json.loads(text, parse_float=Fraction, parse_int=Fraction)
    except json.JSONDecodeError as exc:
        raise UltrametricError(f"invalid JSON: {exc}") from exc
    return space_from_dict(doc)


def load(path) -> UltraSpace:
    path = Path(path)
    if path.suffix.lower() == ".csv":
        return load_csv(path)
    return loads(path.read_text())


def dump(X: UltraSpace, path, **metadata) -> None:
    Path(path).write_text(dumps(X, **metadata))


def loads_csv(text: str, ids: Sequence[str] | None = None) -> UltraSpace:
    rows = [row for row in csv.reader(io.StringIO(text)) if any(cell.strip() for cell in row)]
    if ids is None:
        ids = [f"x{i + 1}" for i in range(len(rows))]
    return validate_ultrametric(rows, ids)


def load_csv(path, ids: Sequence[str] | None = None) -> UltraSpace:
    return loads_csv(Path(path).read_text(), ids)


def dumps_csv(X: UltraSpace) -> str:
    out = io.StringIO()
    writer = csv.writer(out, lineterminator="\n")
    for row in X.dist:
        writer.writerow([fraction_str(v) for v in row])
    return out.getvalue()
