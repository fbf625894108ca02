"""Binary snapshot of a QuadraticLoss for offline debugging.

File layout: the magic line ``GSMLOSS``, one line of JSON header, then for
each block ``Gamma_j`` in column-major order followed by ``g_j``, all as
little-endian 64-bit floats.
"""

import json
from pathlib import Path
from typing import Union

import numpy as np

from ..model.base import ModelSpec
from ..model.errors import DomainError
from .base import Layout, QuadraticLoss

MAGIC = b"GSMLOSS\n"
FORMAT_VERSION = 1


def write_snapshot(loss: QuadraticLoss, path: Union[str, Path]) -> Path:
    path = Path(path)
    header = {
        "version": FORMAT_VERSION,
        "layout": loss.layout.value,
        "n": loss.n,
        "m": loss.m,
        "a": loss.spec.a if loss.spec is not None else None,
        "b": loss.spec.b if loss.spec is not None else None,
        "centered": loss.spec.centered if loss.spec is not None else None,
        "h": loss.hspec,
        "amplifier": {"delta": loss.delta, "gamma": loss.amplifier.tolist()},
    }
    with open(path, "wb") as f:
        f.write(MAGIC)
        f.write(json.dumps(header).encode("utf-8") + b"\n")
        for j in range(loss.m):
            gamma_j, g_j = loss.block(j)
            f.write(np.asarray(gamma_j, dtype="<f8").tobytes(order="F"))
            f.write(np.asarray(g_j, dtype="<f8").tobytes())
    return path


def read_snapshot(path: Union[str, Path]) -> QuadraticLoss:
    """Load a snapshot written by ``write_snapshot``.

    Raises:
        DomainError: If the file is not a loss snapshot or is truncated
    """
    path = Path(path)
    with open(path, "rb") as f:
        if f.readline() != MAGIC:
            raise DomainError(f"{path} is not a loss snapshot")
        try:
            header = json.loads(f.readline().decode("utf-8"))
        except ValueError as e:
            raise DomainError(f"Corrupt snapshot header in {path}: {e}")
        payload = f.read()

    m = int(header["m"])
    layout = Layout(header["layout"])
    side = m + 1 if layout == Layout.NONCENTERED else m
    values = np.frombuffer(payload, dtype="<f8")
    if values.shape[0] != m * (side * side + side):
        raise DomainError(f"Snapshot {path} is truncated")
    per_block = values.reshape(m, side * side + side)
    gamma = per_block[:, : side * side].reshape(m, side, side).transpose(0, 2, 1)
    g = per_block[:, side * side :]

    spec = None
    if header.get("a") is not None:
        spec = ModelSpec(a=header["a"], b=header["b"], centered=bool(header["centered"]))
    amp = header["amplifier"]
    return QuadraticLoss(
        gamma=gamma,
        g=g,
        layout=layout,
        n=int(header["n"]),
        spec=spec,
        hspec=header["h"],
        amplifier=np.array(amp["gamma"], dtype=float),
        delta=float(amp["delta"]),
    )
