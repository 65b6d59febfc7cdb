# -*- coding: utf-8 -*-
"""Standard utility functions and aliases used throughout innercalc"""

# Standard Imports
from __future__ import annotations

import math
from pathlib import Path

# Third Party Imports
from yaml import load, Loader
import numpy as np

# Typing
from typing import (
    Any,
    Generator,
    Iterable,
    Optional,
    Union,
)

from typing_extensions import TypeAlias

ComplexMatrix: TypeAlias = np.ndarray
"""A dense, two dimensional, complex valued numpy array"""

MatrixLike: TypeAlias = Union[np.ndarray, list, tuple, complex, float, int]
"""Objects convertable to a ComplexMatrix"""

SeedLike: TypeAlias = Union[None, int, np.random.SeedSequence, np.random.Generator]
"""Objects accepted wherever a random seed is expected"""

settings: dict
with open(Path(__file__).parent.joinpath("settings.yml")) as f:
    settings = load(f, Loader)
"""settings (dict): tolerances, probe counts and suite scales"""


class InnerCalcError(Exception):
    """Base class for every error raised deliberately by innercalc"""


class NullClass:
    """
    Stands in for a function, class or module that should do nothing

    Calling an instance, accessing attributes on it or using it as a context
    manager always returns the instance itself, so any chain of such
    operations is a no-op. It replaces ``print`` or ``tqdm`` on objects that
    were created without verbose output or progress bars.

    Examples:
        .. highlight:: python
        .. code-block:: python

            class Runner:
                def __init__(self, verbose=False):
                    self.print = print if verbose else NullClass()
                    self.print("only shown when verbose")
    """

    def __call__(self, *args: Any, **kwargs: Any) -> NullClass:
        return self

    def __getattr__(self, attr: str) -> NullClass:
        return self

    def __enter__(self, *args: Any, **kwargs: Any) -> NullClass:
        return self

    def __exit__(self, *args: Any, **kwargs: Any) -> None:
        return None

    def __iter__(self) -> Generator:
        return (x for x in ())

    def __bool__(self) -> bool:
        return False


def get_batches(iterable: Iterable, size: int = 25) -> Generator:
    """
    Returns a generator of the iterable which yields batches of the given size

    Parameters:
        iterable: The iterable to yield batches of
        size: The batch size of the returned generator

    Returns:
        A generator which yields lists of at most 'size' elements
    """
    if size < 1:
        raise ValueError(f"Batch size must be positive, received {size=}")
    iterable = list(iterable)
    last = len(iterable)
    for i in range(math.ceil(last / size)):
        start = i * size
        yield iterable[start : min(start + size, last)]


def as_matrix(value: MatrixLike, name: str = "matrix") -> ComplexMatrix:
    """
    Converts a value to a finite, two dimensional complex array

    Scalars become 1x1 matrices. The returned array is always a fresh copy.

    Parameters:
        value: The object to convert
        name: Used in error messages

    Returns:
        A complex128 numpy array with ndim == 2

    Raises:
        ValueError: The input is not two dimensional or contains NaN / Inf
    """
    arr = np.array(value, dtype=complex)
    if arr.ndim == 0:
        arr = arr.reshape(1, 1)
    if arr.ndim != 2:
        raise ValueError(f"{name} must be two dimensional, received shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise ValueError(f"{name} contains non-finite entries")
    return arr


def frozen(arr: ComplexMatrix) -> ComplexMatrix:
    """Returns a read-only view of an array"""
    view = arr.view()
    view.flags.writeable = False
    return view


def get_rng(seed: SeedLike = None) -> np.random.Generator:
    """
    Returns a numpy Generator for any accepted seed

    Generators are passed through unchanged so that callers may thread a
    single stream through several sampling calls.
    """
    if isinstance(seed, np.random.Generator):
        return seed
    return np.random.default_rng(seed)


def spawn_seeds(seed: SeedLike, n: int) -> list[np.random.SeedSequence]:
    """
    Derives 'n' independent child seeds from a master seed

    The children only depend on the master seed and their index, which makes
    chunked or parallel execution reproducible regardless of the number of
    workers.
    """
    if isinstance(seed, np.random.Generator):
        seed = int(seed.integers(0, 2**63 - 1))
    if not isinstance(seed, np.random.SeedSequence):
        seed = np.random.SeedSequence(seed)
    return seed.spawn(n)


def block_diag(*blocks: ComplexMatrix) -> ComplexMatrix:
    """Block diagonal matrix that tolerates zero sized blocks"""
    rows = sum(b.shape[0] for b in blocks)
    cols = sum(b.shape[1] for b in blocks)
    out = np.zeros((rows, cols), dtype=complex)
    r = c = 0
    for b in blocks:
        out[r : r + b.shape[0], c : c + b.shape[1]] = b
        r += b.shape[0]
        c += b.shape[1]
    return out


def permutation_matrix(order: Iterable[int]) -> ComplexMatrix:
    """
    Returns the matrix P with ``(P @ x)[i] == x[order[i]]``

    Parameters:
        order: A permutation of range(n)
    """
    order = list(order)
    n = len(order)
    if sorted(order) != list(range(n)):
        raise ValueError(f"{order=} is not a permutation of range({n})")
    perm = np.zeros((n, n), dtype=complex)
    perm[np.arange(n), order] = 1
    return perm


def unit(n: int, i: int) -> ComplexMatrix:
    """The i-th standard basis column vector of length n"""
    vec = np.zeros((n, 1), dtype=complex)
    vec[i, 0] = 1
    return vec


def ensure_count(value: Any, name: str) -> int:
    """Validates a nonnegative integer argument"""
    if isinstance(value, (bool, np.bool_)) or not isinstance(value, (int, np.integer)):
        raise TypeError(f"{name} must be an integer, received {value!r}")
    if value < 0:
        raise ValueError(f"{name} must be nonnegative, received {value}")
    return int(value)


def optional(value: Optional[Any], default: Any) -> Any:
    """Returns the default when value is None"""
    return default if value is None else value
