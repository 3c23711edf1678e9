"""Central finite-difference check of tape gradients."""

from typing import Callable

import numpy as np

from .params import Params
from .tensor import Tape, Tensor

LossFn = Callable[[Tape], Tensor]


def gradients(tape: Tape, params: Params) -> dict[str, np.ndarray]:
    return {name: tape.grad(t) for name, t in params.items()}


def grad_check(
    f: LossFn, params: Params, eps: float = 1e-5, max_coords: int = 200, seed: int = 0
) -> float:
    """Worst relative error between analytic and numeric gradients.

    Only trainable coordinates are checked. Above ``max_coords`` coordinates a
    seeded random sample of ``max_coords`` is used instead of all of them.
    """
    tape = Tape()
    tape.backward(f(tape))
    analytic = gradients(tape, params)
    coords = [
        (name, idx)
        for name, t in params.items()
        if params.trainable(name)
        for idx in np.ndindex(t.shape)
    ]
    if len(coords) > max_coords:
        rng = np.random.default_rng(seed)
        chosen = rng.choice(len(coords), size=max_coords, replace=False)
        coords = [coords[int(i)] for i in sorted(chosen)]
    worst = 0.0
    for name, idx in coords:
        value = params[name].value
        saved = value[idx]
        value[idx] = saved + eps
        plus = f(Tape(recording=False)).item()
        value[idx] = saved - eps
        minus = f(Tape(recording=False)).item()
        value[idx] = saved
        numeric = (plus - minus) / (2.0 * eps)
        exact = analytic[name][idx]
        err = abs(exact - numeric) / max(abs(exact), abs(numeric), 1e-8)
        worst = max(worst, err)
    return worst
