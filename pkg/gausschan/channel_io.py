"""Reading and writing channel and generator files.

Files are JSON documents validated by :mod:`gausschan.models`. Floats are
written in their shortest round-trip form, so a write followed by a read
reproduces every matrix entry exactly.
"""

from __future__ import annotations

from pathlib import Path
from typing import Type, TypeVar, Union

import numpy as np
from pydantic import BaseModel, ValidationError

from .channel import GaussianChannel
from .exceptions import ParseError
from .linalg import DEFAULT_TOLERANCE, Tolerance
from .models import ChannelFile, GeneratorFile
from .semigroup import Generator
from .utils import atomic_write

PathLike = Union[str, Path]
M = TypeVar("M", bound=BaseModel)


def _read_model(path: PathLike, model: Type[M]) -> M:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise ParseError(str(path), exc.strerror or exc) from exc
    try:
        return model.model_validate_json(text)
    except ValidationError as exc:
        errors = "; ".join(
            f"{'.'.join(str(p) for p in err['loc']) or '<root>'}: {err['msg']}"
            for err in exc.errors()
        )
        raise ParseError(str(path), errors) from exc


def read_channel_file(path: PathLike) -> ChannelFile:
    return _read_model(path, ChannelFile)


def read_generator_file(path: PathLike) -> GeneratorFile:
    return _read_model(path, GeneratorFile)


def channel_matrices(data: ChannelFile):
    return np.array(data.x, dtype=float), np.array(data.y, dtype=float)


def load_channel(path: PathLike, tol: Tolerance = DEFAULT_TOLERANCE) -> GaussianChannel:
    """Parse ``path`` and validate it as a completely positive channel."""
    x, y = channel_matrices(read_channel_file(path))
    return GaussianChannel(x, y, tol)


def load_generator(path: PathLike, tol: Tolerance = DEFAULT_TOLERANCE) -> Generator:
    """Parse ``path``; symmetry of ``b``, ``h`` and ``b + i a >= 0`` are checked here."""
    data = read_generator_file(path)
    return Generator(
        np.array(data.a, dtype=float),
        np.array(data.b, dtype=float),
        np.array(data.h, dtype=float),
        tol,
    )


def channel_to_file(c: GaussianChannel, label: str | None = None) -> ChannelFile:
    return ChannelFile(n=c.modes, x=c.x.tolist(), y=c.y.tolist(), label=label)


def generator_to_file(g: Generator, label: str | None = None) -> GeneratorFile:
    return GeneratorFile(n=g.modes, a=g.a.tolist(), b=g.b.tolist(), h=g.h.tolist(), label=label)


def write_model(path: PathLike, data: BaseModel) -> None:
    atomic_write(str(path), data.model_dump_json(indent=2, exclude_none=True) + "\n")


def write_channel(path: PathLike, c: GaussianChannel, label: str | None = None) -> None:
    write_model(path, channel_to_file(c, label))


def write_generator(path: PathLike, g: Generator, label: str | None = None) -> None:
    write_model(path, generator_to_file(g, label))
