"""Reverse-mode autodiff over 2-D float64 arrays.

A :class:`Tape` records each primitive together with a closure that pushes
the output adjoint back to its operands. Ops are appended in execution order,
so replaying the list backwards visits every op exactly once in reverse
topological order.
"""

from typing import Callable, Sequence

import numpy as np

from ..core.errors import ShapeError


class Tensor:
    __slots__ = ("value", "name")

    def __init__(self, value, name: str | None = None) -> None:
        a = np.array(value, dtype=np.float64)
        if a.ndim == 0:
            a = a.reshape(1, 1)
        elif a.ndim == 1:
            a = a.reshape(1, -1)
        elif a.ndim > 2:
            raise ShapeError("tensor", a.shape)
        self.value = a
        self.name = name

    @property
    def shape(self) -> tuple[int, int]:
        return self.value.shape

    def item(self) -> float:
        if self.value.size != 1:
            raise ShapeError("item", self.shape)
        return float(self.value[0, 0])

    def __repr__(self) -> str:
        label = f" {self.name}" if self.name else ""
        return f"Tensor{label}{self.shape}"


def _const(x) -> np.ndarray:
    return x.value if isinstance(x, Tensor) else np.asarray(x, dtype=np.float64)


def _sigmoid(x: np.ndarray) -> np.ndarray:
    # split by sign so exp never overflows
    out = np.empty_like(x)
    pos = x >= 0
    out[pos] = 1.0 / (1.0 + np.exp(-x[pos]))
    ex = np.exp(x[~pos])
    out[~pos] = ex / (1.0 + ex)
    return out


def _log_softmax(x: np.ndarray) -> np.ndarray:
    shifted = x - x.max(axis=1, keepdims=True)
    return shifted - np.log(np.exp(shifted).sum(axis=1, keepdims=True))


def _weights(weights, target: np.ndarray) -> np.ndarray:
    if weights is None:
        return np.ones_like(target)
    return np.broadcast_to(np.asarray(weights, dtype=np.float64), target.shape)


class Tape:
    def __init__(self, recording: bool = True) -> None:
        self.recording = recording
        self.ops: list[tuple[str, Tensor, Callable[[np.ndarray], None]]] = []
        self._grads: dict[int, np.ndarray] = {}

    def __len__(self) -> int:
        return len(self.ops)

    def _record(
        self, name: str, out: Tensor, backward: Callable[[np.ndarray], None]
    ) -> Tensor:
        if self.recording:
            self.ops.append((name, out, backward))
        return out

    def _acc(self, t: Tensor, g: np.ndarray) -> None:
        key = id(t)
        prev = self._grads.get(key)
        self._grads[key] = g if prev is None else prev + g

    # -- primitives --------------------------------------------------------

    def matmul(self, a: Tensor, b: Tensor) -> Tensor:
        if a.shape[1] != b.shape[0]:
            raise ShapeError("matmul", a.shape, b.shape)
        out = Tensor(a.value @ b.value)

        def backward(g):
            self._acc(a, g @ b.value.T)
            self._acc(b, a.value.T @ g)

        return self._record("matmul", out, backward)

    def add(self, a: Tensor, b: Tensor) -> Tensor:
        """Elementwise sum; ``b`` may be a single row broadcast over ``a``'s rows."""
        if b.shape != a.shape and not (b.shape[0] == 1 and b.shape[1] == a.shape[1]):
            raise ShapeError("add", a.shape, b.shape)
        out = Tensor(a.value + b.value)
        broadcast = b.shape != a.shape

        def backward(g):
            self._acc(a, g)
            self._acc(b, g.sum(axis=0, keepdims=True) if broadcast else g)

        return self._record("add", out, backward)

    def sum(self, terms: Sequence[Tensor]) -> Tensor:
        if not terms:
            raise ShapeError("sum")
        shape = terms[0].shape
        if any(t.shape != shape for t in terms):
            raise ShapeError("sum", *(t.shape for t in terms))
        total = terms[0].value.copy()
        for t in terms[1:]:
            total = total + t.value
        out = Tensor(total)

        def backward(g):
            for t in terms:
                self._acc(t, g)

        return self._record("sum", out, backward)

    def mul(self, a: Tensor, b: Tensor) -> Tensor:
        if a.shape != b.shape:
            raise ShapeError("mul", a.shape, b.shape)
        out = Tensor(a.value * b.value)

        def backward(g):
            self._acc(a, g * b.value)
            self._acc(b, g * a.value)

        return self._record("mul", out, backward)

    def scale(self, a: Tensor, c: float) -> Tensor:
        out = Tensor(a.value * c)
        return self._record("scale", out, lambda g: self._acc(a, g * c))

    def mix(self, mask: np.ndarray, a: Tensor, b: Tensor) -> Tensor:
        """``mask * a + (1 - mask) * b`` for a constant column mask."""
        if a.shape != b.shape:
            raise ShapeError("mix", a.shape, b.shape)
        m = np.asarray(mask, dtype=np.float64).reshape(-1, 1)
        if m.shape[0] != a.shape[0]:
            raise ShapeError("mix", m.shape, a.shape)
        out = Tensor(m * a.value + (1.0 - m) * b.value)

        def backward(g):
            self._acc(a, g * m)
            self._acc(b, g * (1.0 - m))

        return self._record("mix", out, backward)

    def concat(self, parts: Sequence[Tensor]) -> Tensor:
        """Column-wise concatenation."""
        rows = {p.shape[0] for p in parts}
        if len(rows) != 1:
            raise ShapeError("concat", *(p.shape for p in parts))
        out = Tensor(np.concatenate([p.value for p in parts], axis=1))
        bounds = np.cumsum([0] + [p.shape[1] for p in parts])

        def backward(g):
            for p, lo, hi in zip(parts, bounds[:-1], bounds[1:]):
                self._acc(p, g[:, lo:hi])

        return self._record("concat", out, backward)

    def slice(self, a: Tensor, start: int, stop: int) -> Tensor:
        """Columns ``start:stop``."""
        if not 0 <= start < stop <= a.shape[1]:
            raise ShapeError("slice", a.shape, (start, stop))
        out = Tensor(a.value[:, start:stop])

        def backward(g):
            full = np.zeros_like(a.value)
            full[:, start:stop] = g
            self._acc(a, full)

        return self._record("slice", out, backward)

    def take_cols(self, a: Tensor, cols: np.ndarray) -> Tensor:
        """Column gather with distinct indices."""
        idx = np.asarray(cols, dtype=np.int64).reshape(-1)
        in_range = not idx.size or (idx.min() >= 0 and idx.max() < a.shape[1])
        if len(set(idx.tolist())) != idx.size or not in_range:
            raise ShapeError("take_cols", a.shape, (idx.size,))
        out = Tensor(a.value[:, idx])

        def backward(g):
            full = np.zeros_like(a.value)
            full[:, idx] = g
            self._acc(a, full)

        return self._record("take_cols", out, backward)

    def reshape(self, a: Tensor, rows: int, cols: int) -> Tensor:
        if rows * cols != a.value.size:
            raise ShapeError("reshape", a.shape, (rows, cols))
        out = Tensor(a.value.reshape(rows, cols))
        return self._record("reshape", out, lambda g: self._acc(a, g.reshape(a.shape)))

    def take(self, a: Tensor, rows: np.ndarray) -> Tensor:
        """Row gather; repeated rows accumulate their gradients."""
        idx = np.asarray(rows, dtype=np.int64).reshape(-1)
        if idx.size and (idx.min() < 0 or idx.max() >= a.shape[0]):
            raise ShapeError("take", a.shape, (int(idx.min()), int(idx.max())))
        out = Tensor(a.value[idx])

        def backward(g):
            full = np.zeros_like(a.value)
            np.add.at(full, idx, g)
            self._acc(a, full)

        return self._record("take", out, backward)

    def tanh(self, a: Tensor) -> Tensor:
        y = np.tanh(a.value)
        out = Tensor(y)
        return self._record("tanh", out, lambda g: self._acc(a, g * (1.0 - y * y)))

    def sigmoid(self, a: Tensor) -> Tensor:
        y = _sigmoid(a.value)
        out = Tensor(y)
        return self._record("sigmoid", out, lambda g: self._acc(a, g * y * (1.0 - y)))

    def relu(self, a: Tensor) -> Tensor:
        on = (a.value > 0).astype(np.float64)
        out = Tensor(a.value * on)
        return self._record("relu", out, lambda g: self._acc(a, g * on))

    # -- losses (scalar outputs) -----------------------------------------

    def softmax_cross_entropy(self, logits: Tensor, onehot, weights=None) -> Tensor:
        """Sum over rows of ``-w_i * log softmax(logits_i)[target_i]``."""
        t = _const(onehot)
        if t.shape != logits.shape:
            raise ShapeError("softmax_cross_entropy", logits.shape, t.shape)
        if weights is None:
            w = np.ones((logits.shape[0], 1))
        else:
            w = np.asarray(weights, dtype=np.float64).reshape(-1, 1)
        logp = _log_softmax(logits.value)
        out = Tensor(-(w * t * logp).sum())

        def backward(g):
            p = np.exp(logp)
            self._acc(logits, g * w * (p * t.sum(axis=1, keepdims=True) - t))

        return self._record("softmax_cross_entropy", out, backward)

    def sigmoid_cross_entropy(self, logits: Tensor, targets, weights=None) -> Tensor:
        t = _const(targets)
        if t.shape != logits.shape:
            raise ShapeError("sigmoid_cross_entropy", logits.shape, t.shape)
        w = _weights(weights, t)
        x = logits.value
        per = np.maximum(x, 0.0) - x * t + np.log1p(np.exp(-np.abs(x)))
        out = Tensor((w * per).sum())
        return self._record(
            "sigmoid_cross_entropy",
            out,
            lambda g: self._acc(logits, g * w * (_sigmoid(x) - t)),
        )

    def squared_error(self, pred: Tensor, target, weights=None) -> Tensor:
        t = _const(target)
        if t.shape != pred.shape:
            raise ShapeError("squared_error", pred.shape, t.shape)
        w = _weights(weights, t)
        diff = pred.value - t
        out = Tensor((w * diff * diff).sum())
        return self._record(
            "squared_error", out, lambda g: self._acc(pred, g * 2.0 * w * diff)
        )

    # -- backward ----------------------------------------------------------

    def backward(self, loss: Tensor) -> None:
        if loss.shape != (1, 1):
            raise ShapeError("backward", loss.shape)
        if not self.recording:
            raise RuntimeError("backward on a tape that was not recording")
        self._grads = {id(loss): np.ones((1, 1))}
        for _, out, fn in reversed(self.ops):
            g = self._grads.get(id(out))
            if g is not None:
                fn(g)

    def grad(self, t: Tensor) -> np.ndarray:
        g = self._grads.get(id(t))
        return np.zeros_like(t.value) if g is None else g
