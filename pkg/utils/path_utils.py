# utils/path_utils.py

from __future__ import annotations

import os
from pathlib import Path
from typing import Union

PathLike = Union[str, Path]


def resolve_from(anchor: PathLike, target: PathLike) -> Path:
    """
    Resolve a path recorded inside a file.

    :param anchor: File the path was read from
    :param target: Recorded path, absolute or relative to the anchor's directory
    :return: Absolute resolved Path
    """
    target = Path(target)
    if target.is_absolute():
        return target
    return (Path(anchor).resolve().parent / target).resolve()


def relative_from(anchor: PathLike, target: PathLike) -> str:
    """
    Express ``target`` relative to the directory of ``anchor``, with forward
    slashes so that written files do not depend on the platform.

    :param anchor: File that will record the path
    :param target: Path to record
    :return: Relative path string
    """
    base = Path(anchor).resolve().parent
    relative = os.path.relpath(Path(target).resolve(), base)
    return Path(relative).as_posix()
