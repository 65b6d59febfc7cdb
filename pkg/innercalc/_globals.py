# -*- coding: utf-8 -*-
"""innercalc module holding package wide defaults

The default tolerance and seed used by every operation and by the
verification harness are configured here, through ``innercalc.globals``.
"""

# Standard imports
from __future__ import annotations

from pathlib import Path
import os

# Local imports
from ._geometry import ToleranceConfig
from ._verify import Suite, theorems
from . import utils

# Typing
from typing import (
    Any,
    Optional,
)

GLOBAL_DEFAULT_SEED = 0
"""The seed used when neither an explicit seed nor the environment gives one"""


class Globals:
    """
    Package wide defaults shared by all innercalc operations

    This object is not to be instantiated by end users; the single instance
    is available as ``innercalc.globals``.

    Attributes:
        tol (ToleranceConfig):
            The tolerances used when an operation is called with tol=None

        seed (int):
            The master seed used by the harness when no seed is given. Read
            from the environment variable named in settings.yml
            (COLLIG_SEED) unless set explicitly.

        settings (dict):
            The parsed settings.yml

        path (Path):
            The root directory of this installation
    """

    def _mkprop(self, attr: str) -> Any:
        return property(lambda this: getattr(self, attr))

    def _shareprop(self, attr: str, obj: Any, name: Optional[str] = None) -> None:
        setattr(obj, (name or attr), self._mkprop(attr))

    def __init__(self) -> None:
        self._seed: Optional[int] = None
        self._path: Path = Path(__file__).parent
        self._shareprop("seed", Suite, name="_global_seed")

    def __str__(self) -> str:
        return str({"tol": self.tol, "seed": self.seed, "theorems": self.theorems})

    def __repr__(self) -> str:
        return self.__str__()

    @property
    def tol(self) -> ToleranceConfig:
        """The default tolerances"""
        return ToleranceConfig.default()

    @tol.setter
    def tol(self, tol: ToleranceConfig) -> None:
        if not isinstance(tol, ToleranceConfig):
            raise TypeError(f"tol must be a ToleranceConfig, received {tol.__class__.__name__}")
        ToleranceConfig._default = tol

    @property
    def seed(self) -> int:
        """The default master seed"""
        if self._seed is not None:
            return self._seed
        value = os.environ.get(utils.settings["HARNESS"]["seed_env"])
        if value is None or not value.strip():
            return GLOBAL_DEFAULT_SEED
        try:
            return int(value)
        except ValueError as e:
            raise ValueError(
                f"{utils.settings['HARNESS']['seed_env']} must be an integer, received {value!r}"
            ) from e

    @seed.setter
    def seed(self, seed: Optional[int]) -> None:
        self._seed = None if seed is None else utils.ensure_count(seed, "seed")

    @property
    def settings(self) -> dict:
        """The parsed settings.yml"""
        return utils.settings

    @property
    def path(self) -> Path:
        """The path to the root directory of this installation of innercalc"""
        return self._path

    @property
    def theorems(self) -> list[str]:
        """The theorem ids with a registered suite"""
        return theorems.ids()

    def reset(self) -> None:
        """Restores the tolerance and seed defaults from settings.yml and the environment"""
        ToleranceConfig._default = None
        self._seed = None


__globals = Globals()
