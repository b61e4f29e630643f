"""Deterministic numeric kernel.

All numeric data in this package travels as dense row-major float64
numpy arrays ("matrices"): samples are rows, features/neurons are
columns. Randomness flows through :class:`Rng`, a thin owner of
numpy's Philox counter-based generator. Philox is the one PRNG used
everywhere; it is documented, platform-independent, and splittable
(children are derived by jumping the counter), so a (seed, spawn path)
pair pins every sampled number in an experiment.
"""

from __future__ import annotations

import numpy as np

from .errors import ShapeError

Matrix = np.ndarray


def as_f64(x) -> np.ndarray:
    """Coerce to a float64 array without copying when already one."""
    return np.asarray(x, dtype=np.float64)


def matmul(a: Matrix, b: Matrix) -> Matrix:
    """Matrix product with an explicit shape check.

    Raises ShapeError naming both operand shapes on mismatch.
    """
    a = as_f64(a)
    b = as_f64(b)
    if a.ndim != 2 or b.ndim != 2:
        raise ShapeError(f"matmul needs 2-D operands, got {a.shape} and {b.shape}")
    if a.shape[1] != b.shape[0]:
        raise ShapeError(f"matmul shape mismatch: {a.shape} x {b.shape}")
    return a @ b


class Rng:
    """Single-owner deterministic random stream (numpy Philox).

    Equal seeds produce bit-equal sample streams. The full generator
    state round-trips through ``state_dict``/``load_state_dict`` as
    plain ints/lists, which is what checkpoints persist.
    """

    def __init__(self, seed: int):
        self.seed = int(seed)
        self._gen = np.random.Generator(np.random.Philox(self.seed))

    def uniform(self, lo: float, hi: float, shape=None) -> np.ndarray:
        if lo > hi:
            raise ValueError(f"uniform bounds reversed: lo={lo} > hi={hi}")
        return lo + (hi - lo) * self._gen.random(shape)

    def normal(self, mean: float, std: float, shape=None) -> np.ndarray:
        if std < 0:
            raise ValueError(f"normal std must be >= 0, got {std}")
        return mean + std * self._gen.standard_normal(shape)

    def integers(self, lo: int, hi: int, shape=None) -> np.ndarray:
        return self._gen.integers(lo, hi, size=shape)

    def permutation(self, n: int) -> np.ndarray:
        return self._gen.permutation(n)

    def spawn(self, k: int = 1) -> "Rng":
        """Independent child stream: the parent's counter jumped k times."""
        child = Rng(self.seed)
        child._gen = np.random.Generator(np.random.Philox(self.seed).jumped(k))
        return child

    def state_dict(self) -> dict:
        st = self._gen.bit_generator.state
        return {
            "seed": self.seed,
            "counter": [int(v) for v in st["state"]["counter"]],
            "key": [int(v) for v in st["state"]["key"]],
            "buffer": [int(v) for v in st["buffer"]],
            "buffer_pos": int(st["buffer_pos"]),
            "has_uint32": int(st["has_uint32"]),
            "uinteger": int(st["uinteger"]),
        }

    def load_state_dict(self, d: dict) -> None:
        self.seed = int(d["seed"])
        bg = np.random.Philox(self.seed)
        st = bg.state
        st["state"]["counter"] = np.array(d["counter"], dtype=np.uint64)
        st["state"]["key"] = np.array(d["key"], dtype=np.uint64)
        st["buffer"] = np.array(d["buffer"], dtype=np.uint64)
        st["buffer_pos"] = int(d["buffer_pos"])
        st["has_uint32"] = int(d["has_uint32"])
        st["uinteger"] = int(d["uinteger"])
        bg.state = st
        self._gen = np.random.Generator(bg)


def sample_uniform(rng: Rng, lo: float, hi: float, shape) -> Matrix:
    """I.i.d. uniform draws on [lo, hi); deterministic for a fixed seed."""
    return rng.uniform(lo, hi, shape)


def sample_normal(rng: Rng, mean: float, std: float, shape) -> Matrix:
    """I.i.d. Gaussian draws; deterministic for a fixed seed."""
    return rng.normal(mean, std, shape)
