"""CSV/JSON emission with run manifests.

Floats are written with 17 significant digits so every value read back is the
identical double.  Files are written to a temporary sibling and renamed.
"""

from __future__ import annotations

import csv
import dataclasses
import io
import json
import os
import tempfile
from pathlib import Path
from typing import Any, Iterable, Sequence

from . import __version__
from .random_model import PRNG_NAME


def fmt(v: Any) -> str:
    if isinstance(v, bool):
        return str(int(v))
    if isinstance(v, float):
        return format(v, ".17g")
    return str(v)


def render_csv(header: Sequence[str], rows: Iterable[Sequence[Any]]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([fmt(v) for v in row])
    return buf.getvalue()


def records_csv(records: Sequence) -> str:
    """CSV for a list of dataclass instances of one type."""
    if not records:
        return ""
    names = [f.name for f in dataclasses.fields(records[0])]
    return render_csv(names, ([getattr(r, k) for k in names] for r in records))


def _parse(v: str):
    try:
        return int(v)
    except ValueError:
        return float(v)


def read_csv(path_or_text, text: bool = False) -> list[dict]:
    src = path_or_text if text else Path(path_or_text).read_text()
    return [{k: _parse(v) for k, v in row.items()} for row in csv.DictReader(io.StringIO(src))]


def atomic_write(path, content: str) -> None:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=f".{path.name}.", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", newline="") as fh:
            fh.write(content)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def manifest_path(out) -> Path:
    out = Path(out)
    return out.with_name(out.name + ".manifest.json")


def build_manifest(subcommand: str, params: dict, argv: list[str], **extra) -> dict:
    m = {
        "subcommand": subcommand,
        "params": params,
        "seed": params.get("seed"),
        "prng": PRNG_NAME,
        "version": __version__,
        "argv": argv,
    }
    m.update(extra)
    return m


def dump_manifest(manifest: dict) -> str:
    return json.dumps(manifest, indent=2, sort_keys=True) + "\n"


def write_with_manifest(out, content: str, manifest: dict) -> None:
    atomic_write(out, content)
    atomic_write(manifest_path(out), dump_manifest(manifest))


def load_manifest(path) -> dict:
    return json.loads(Path(path).read_text())
