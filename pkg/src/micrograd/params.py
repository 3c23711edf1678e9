"""Named parameter store and the ARLW1 weight file format.

File layout::

    ARLW1\\n
    {"tensors": [{"name": ..., "shape": [r, c], "trainable": true}, ...]}\\n
    <little-endian float64 values of every tensor, manifest order, row-major>
"""

import json
from pathlib import Path
from typing import Iterator

import numpy as np

from ..core.artifacts import atomic_write, sha256_bytes
from ..core.errors import DataError, ModelMismatchError
from .tensor import Tensor

MAGIC = b"ARLW1\n"


class Params:
    def __init__(self) -> None:
        self._tensors: dict[str, Tensor] = {}
        self._trainable: dict[str, bool] = {}

    def add(self, name: str, value: np.ndarray, trainable: bool = True) -> Tensor:
        if name in self._tensors:
            raise ValueError(f"duplicate parameter {name}")
        t = Tensor(value, name=name)
        self._tensors[name] = t
        self._trainable[name] = trainable
        return t

    def __getitem__(self, name: str) -> Tensor:
        return self._tensors[name]

    def __contains__(self, name: str) -> bool:
        return name in self._tensors

    def __iter__(self) -> Iterator[str]:
        return iter(self._tensors)

    def __len__(self) -> int:
        return len(self._tensors)

    def items(self):
        return self._tensors.items()

    def trainable(self, name: str) -> bool:
        return self._trainable[name]

    def set_trainable(self, prefix: str, flag: bool) -> None:
        for name in self._tensors:
            if name.startswith(prefix):
                self._trainable[name] = flag

    def freeze(self, prefix: str = "") -> None:
        self.set_trainable(prefix, False)

    def count(self) -> int:
        return sum(t.value.size for t in self._tensors.values())

    def merged(self, other: "Params") -> "Params":
        """A store holding both sets of tensors (shared, not copied)."""
        out = Params()
        for src in (self, other):
            for name, t in src.items():
                if name in out._tensors:
                    raise ValueError(f"duplicate parameter {name}")
                out._tensors[name] = t
                out._trainable[name] = src._trainable[name]
        return out

    def subset(self, prefix: str) -> "Params":
        out = Params()
        for name, t in self.items():
            if name.startswith(prefix):
                out._tensors[name] = t
                out._trainable[name] = self._trainable[name]
        return out

    def copy(self) -> "Params":
        out = Params()
        for name, t in self.items():
            out.add(name, t.value.copy(), self._trainable[name])
        return out

    def assign(self, other: "Params") -> None:
        """Overwrite values in place from a store with identical names and shapes."""
        for name, t in self.items():
            if name not in other or other[name].shape != t.shape:
                raise ModelMismatchError("param-mismatch", f"cannot assign {name}")
            t.value[...] = other[name].value

    def manifest(self) -> dict:
        return {
            "tensors": [
                {"name": n, "shape": list(t.shape), "trainable": self._trainable[n]}
                for n, t in self.items()
            ]
        }

    def blob(self) -> bytes:
        return b"".join(t.value.astype("<f8").tobytes() for t in self._tensors.values())

    def digest(self) -> str:
        shapes = [[n, list(t.shape)] for n, t in self.items()]
        header = json.dumps(shapes, separators=(",", ":"))
        return sha256_bytes(header.encode("ascii") + self.blob())

    def to_bytes(self) -> bytes:
        manifest = json.dumps(self.manifest(), separators=(",", ":")).encode("ascii")
        return MAGIC + manifest + b"\n" + self.blob()

    @classmethod
    def from_bytes(cls, data: bytes, source: str = "<bytes>") -> "Params":
        if not data.startswith(MAGIC):
            raise DataError("corrupt-artifact", f"{source}: missing ARLW1 header")
        end = data.find(b"\n", len(MAGIC))
        if end < 0:
            raise DataError("corrupt-artifact", f"{source}: truncated manifest")
        try:
            manifest = json.loads(data[len(MAGIC) : end])
        except json.JSONDecodeError as e:
            raise DataError("corrupt-artifact", f"{source}: {e}") from e
        blob = data[end + 1 :]
        out = cls()
        offset = 0
        for entry in manifest["tensors"]:
            rows, cols = entry["shape"]
            n = rows * cols * 8
            if offset + n > len(blob):
                raise DataError(
                    "corrupt-artifact", f"{source}: blob too short for {entry['name']}"
                )
            chunk = np.frombuffer(blob[offset : offset + n], dtype="<f8")
            value = chunk.reshape(rows, cols)
            out.add(entry["name"], value.astype(np.float64), entry["trainable"])
            offset += n
        if offset != len(blob):
            raise DataError(
                "corrupt-artifact", f"{source}: {len(blob) - offset} trailing bytes"
            )
        return out

    def save(self, path: Path) -> None:
        with atomic_write(path, "wb") as fh:
            fh.write(self.to_bytes())

    @classmethod
    def load(cls, path: Path) -> "Params":
        try:
            data = Path(path).read_bytes()
        except FileNotFoundError as e:
            raise DataError("missing-artifact", f"{path} does not exist") from e
        return cls.from_bytes(data, str(path))
