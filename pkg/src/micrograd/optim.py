"""Gradient descent and Adam. Frozen tensors are never touched."""

import numpy as np

from .params import Params


class SGD:
    def __init__(self, learning_rate: float) -> None:
        self.learning_rate = learning_rate

    def step(self, params: Params, grads: dict[str, np.ndarray]) -> None:
        for name, t in params.items():
            if not params.trainable(name) or name not in grads:
                continue
            t.value -= self.learning_rate * grads[name]


class Adam:
    def __init__(
        self,
        learning_rate: float,
        beta1: float = 0.9,
        beta2: float = 0.999,
        eps: float = 1e-8,
    ) -> None:
        self.learning_rate = learning_rate
        self.beta1 = beta1
        self.beta2 = beta2
        self.eps = eps
        self.t = 0
        self.m: dict[str, np.ndarray] = {}
        self.v: dict[str, np.ndarray] = {}

    def step(self, params: Params, grads: dict[str, np.ndarray]) -> None:
        self.t += 1
        c1 = 1.0 - self.beta1**self.t
        c2 = 1.0 - self.beta2**self.t
        for name, t in params.items():
            if not params.trainable(name) or name not in grads:
                continue
            g = grads[name]
            m = self.m.setdefault(name, np.zeros_like(t.value))
            v = self.v.setdefault(name, np.zeros_like(t.value))
            m *= self.beta1
            m += (1.0 - self.beta1) * g
            v *= self.beta2
            v += (1.0 - self.beta2) * g * g
            t.value -= self.learning_rate * (m / c1) / (np.sqrt(v / c2) + self.eps)


Optimizer = SGD | Adam


def make_optimizer(name: str, learning_rate: float) -> Optimizer:
    if name == "sgd":
        return SGD(learning_rate)
    if name == "adam":
        return Adam(learning_rate)
    raise ValueError(f"unknown optimizer {name}")


def step(params: Params, grads: dict[str, np.ndarray], optimizer: Optimizer) -> Params:
    optimizer.step(params, grads)
    return params
