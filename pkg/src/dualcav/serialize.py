"""Columnar text files for field frames and density grids."""

from __future__ import annotations

import io
import os
import shlex

import numpy as np

from .classical import FieldFrame
from .cavity import UnitSystem

__all__ = ["write_frame", "read_frame", "frame_to_text", "write_density"]

FRAME_COLUMNS = "z Ex_re Ex_im Hy_re Hy_im"


def frame_to_text(frame: FieldFrame) -> str:
    """Header line with kind, t and units, a column line, then one row per node."""
    data = np.column_stack([frame.z, np.real(frame.Ex), np.imag(frame.Ex),
                            np.real(frame.Hy), np.imag(frame.Hy)])
    out = io.StringIO()
    out.write(f"# kind={shlex.quote(frame.kind)} t={frame.t!r} units={frame.units.value}\n")
    out.write(f"# {FRAME_COLUMNS}\n")
    np.savetxt(out, data, fmt="%.17g")
    return out.getvalue()


def write_frame(path, frame: FieldFrame) -> None:
    with open(path, "w", encoding="ascii") as fh:
        fh.write(frame_to_text(frame))


def read_frame(source) -> FieldFrame:
    if isinstance(source, (str, os.PathLike)):
        with open(source, encoding="ascii") as fh:
            text = fh.read()
    else:
        text = source.read()
    lines = text.splitlines()
    if not lines or not lines[0].startswith("#"):
        raise ValueError("frame file lacks a header line")
    meta = dict(item.split("=", 1) for item in shlex.split(lines[0][1:]))
    missing = {"kind", "t", "units"} - set(meta)
    if missing:
        raise ValueError(f"frame header lacks {sorted(missing)}")
    data = np.loadtxt(io.StringIO("\n".join(lines[2:])), ndmin=2)
    if data.shape[1] != 5:
        raise ValueError(f"expected 5 columns, found {data.shape[1]}")
    Ex = data[:, 1] + 1j * data[:, 2]
    Hy = data[:, 3] + 1j * data[:, 4]
    if not (np.any(data[:, 2]) or np.any(data[:, 4])):
        Ex, Hy = Ex.real, Hy.real
    return FieldFrame(data[:, 0], float(meta["t"]), Ex, Hy, meta["kind"], UnitSystem(meta["units"]))


def write_density(path, rows) -> None:
    """``rows``: iterable of ``(t, DensityReport)``."""
    with open(path, "w", encoding="ascii") as fh:
        fh.write("# t z W diagonal cross\n")
        for t, rep in rows:
            block = np.column_stack([np.full_like(rep.z, t), rep.z, rep.W, rep.diagonal, rep.cross])
            np.savetxt(fh, block, fmt="%.17g")
