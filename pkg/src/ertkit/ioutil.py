"""Small file helpers. All writers go through an atomic temp-then-rename."""

from __future__ import annotations

import json
import os
import tempfile
from pathlib import Path


def write_text_atomic(file, text: str) -> None:
    """Write text to `file` via a sibling temp file and os.replace."""
    target = Path(file)
    target.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=target.parent, prefix=target.name + ".", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
        os.replace(tmp, target)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def write_json_atomic(file, obj) -> None:
    write_text_atomic(file, json.dumps(obj, indent=2, sort_keys=True) + "\n")


def read_json(file):
    with open(file, "r", encoding="utf-8") as fh:
        return json.load(fh)
