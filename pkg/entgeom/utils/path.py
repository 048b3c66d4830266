"""path and output helpers"""

import os
import sys
from typing import Optional

import fsspec


def make_path_absolute(path: str) -> str:
    fs, p = fsspec.core.url_to_fs(path, use_listings_cache=False)
    if fs.protocol == "file" or "file" in fs.protocol:
        return os.path.abspath(p)
    return path


def write_text(text: str, path: Optional[str] = None) -> None:
    """Write text to the given path (any fsspec url), or to stdout when no path is given"""
    if path is None:
        sys.stdout.write(text)
        sys.stdout.flush()
        return
    with fsspec.open(make_path_absolute(path), "w", encoding="utf-8") as f:
        f.write(text)
