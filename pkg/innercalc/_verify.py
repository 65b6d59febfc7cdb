# -*- coding: utf-8 -*-
"""
The verification harness

Every theorem of the calculus is checked by a property suite: a Suite
subclass registered under its theorem id that runs randomized trials and
reports the largest discrepancy it observed. Suites are defined in
:mod:`innercalc.suites`; defining a subclass with a ``theorem=`` keyword
adds a member to the :class:`theorems` enum, the same way the set of
available suites is discovered by :func:`run_verify`.

Examples:
    .. highlight:: python
    .. code:: python

        import innercalc as ic

        report = ic.run_verify("T2", trials=100, seed=7)
        print(report.to_json())
"""

# Standard imports
from __future__ import annotations

from abc import ABC, abstractmethod
from dataclasses import dataclass, field
from pathlib import Path
from functools import partial
import json
import math
import time
import sys

# Third party imports
from aenum import Enum, extend_enum
from p_tqdm import p_map
from tqdm import tqdm
import numpy as np
import pandas as pd

# Local imports
from ._colligations import (
    CompositionSingular,
    SingularOnComponent,
    SingularSystem,
    SplitSingular,
)
from ._geometry import (
    NotInterior,
    SingularPivot,
    ToleranceConfig,
    op_norm,
    sample_ball_point,
)
from . import utils
from .utils import ComplexMatrix, InnerCalcError

# Typing
from typing import (
    Any,
    ClassVar,
    Iterable,
    Optional,
    Union,
)

_harness = utils.settings["HARNESS"]

SKIPPABLE: tuple[type[Exception], ...] = (
    SingularPivot,
    SingularSystem,
    CompositionSingular,
    SplitSingular,
    SingularOnComponent,
    NotInterior,
)
"""Errors that mark a trial as skipped rather than failed"""


class UnknownTheorem(InnerCalcError, KeyError):
    """No suite is registered under the requested theorem id"""

    def __init__(self, theorem_id: str) -> None:
        known = ", ".join(t.name for t in theorems)  # type: ignore[attr-defined]
        super().__init__(f"Unknown theorem '{theorem_id}'. Known theorems: {known}")

    def __str__(self) -> str:
        return str(self.args[0])


class theorems(Enum):
    """
    An enumeration with one member per registered Suite subclass

    Members are created when a suite is defined. The suite class is
    available as the member's ``c`` attribute.

    Examples:
        .. code:: pycon

            >>> ic.theorems.T2.c
            <class 'innercalc.suites._lib.ProductSuite'>
    """

    def __init__(self, *args: Any, **kwargs: Any) -> None:
        self.c: Optional[type] = None
        super().__init__(*args, **kwargs)

    def __str__(self) -> str:
        return self.name

    def __repr__(self) -> str:
        return self.__str__()

    @classmethod
    def ids(cls) -> list[str]:
        """The registered theorem ids, in registration order"""
        return [t.name for t in cls]  # type: ignore[attr-defined]


@dataclass
class VerificationReport:
    """
    Outcome of a verification run

    Attributes:
        theorem_id: The suite that ran
        trials: Number of trials requested
        max_error: Largest dimension normalized discrepancy of any trial
        skipped: Trials discarded because a pivot was singular
        passed: max_error <= tol and skipped / trials <= the configured rate
        seed: Master seed of the run
        tol: The pass threshold for max_error
        runtime_ms: Wall clock duration; only serialized on request
        samples: Sample points evaluated inside the trials, for suites
            that evaluate many points per trial; zero otherwise
        skipped_samples: Sample points discarded because a pivot was
            singular. Only serialized when samples is nonzero.
    """

    theorem_id: str
    trials: int
    max_error: float
    skipped: int
    passed: bool
    seed: int
    tol: float
    runtime_ms: float = field(default=0.0, compare=False)
    samples: int = 0
    skipped_samples: int = 0

    def to_dict(self, timing: bool = False) -> dict[str, Any]:
        """
        The JSON document of this report

        Parameters:
            timing: Include runtime_ms. Off by default, so that documents
                only depend on the inputs of the run.
        """
        doc: dict[str, Any] = {
            "theorem_id": self.theorem_id,
            "trials": self.trials,
            "max_error": self.max_error,
            "skipped": self.skipped,
            "pass": self.passed,
            "seed": self.seed,
            "tol": self.tol,
        }
        if self.samples:
            doc["samples"] = self.samples
            doc["skipped_samples"] = self.skipped_samples
        if timing:
            doc["runtime_ms"] = round(self.runtime_ms, 3)
        return doc

    def to_json(self, timing: bool = False) -> str:
        """A single JSON line"""
        return json.dumps(self.to_dict(timing))


@dataclass(frozen=True)
class TrialOutcome:
    """
    Result of a trial that evaluates many sample points

    Attributes:
        error: The dimension normalized discrepancy of the trial
        samples: Sample points attempted
        skipped_samples: Sample points skipped on a singular pivot
    """

    error: float
    samples: int = 0
    skipped_samples: int = 0


class Suite(ABC):
    """
    A randomized property check of one theorem

    Subclasses register themselves by passing ``theorem=`` in the class
    statement and implement :meth:`trial`. Their scale parameters are read
    from the ``SUITES`` section of settings.yml.

    Parameters:
        tol:
            Numerical tolerances of the operations under test
        verbose:
            Print a summary line per chunk of trials
        progress:
            Show a progress bar over the chunks. Ignored when verbose.
        workers:
            Run chunks in this many processes through p_tqdm

    Attributes:
        theorem (str): The theorem id
        description (str): One line summary of the checked property
        settings (dict): The suite's section of settings.yml
    """

    theorem: ClassVar[str]
    description: ClassVar[str]
    settings: ClassVar[dict]

    def __init_subclass__(cls, *args: Any, theorem: Optional[str] = None, **kwargs: Any) -> None:
        super().__init_subclass__(*args, **kwargs)
        if theorem is None:
            return
        if theorem not in utils.settings["SUITES"]:
            raise ValueError(f"No settings found for suite {theorem}")
        cls.theorem = theorem
        cls.settings = utils.settings["SUITES"][theorem]
        cls.description = cls.settings["description"]

        if theorem not in theorems.ids():
            extend_enum(theorems, theorem, theorem)
        cls.type = theorems[theorem]  # type: ignore[misc]
        cls.type.c = cls  # type: ignore[attr-defined]

    def __init__(
        self,
        tol: Optional[ToleranceConfig] = None,
        verbose: bool = False,
        progress: bool = False,
        workers: Optional[int] = None,
        **kwargs: Any,
    ) -> None:
        self.tol = ToleranceConfig.resolve(tol)
        self.verbose = verbose
        self.workers = workers
        self.show_progress = progress and not verbose
        self.print: Any = partial(print, file=sys.stderr) if verbose else utils.NullClass()
        self.progress: Any = tqdm if (progress and not verbose) else utils.NullClass()

    def __repr__(self) -> str:
        return f"<{self.theorem} suite: {self.description}>"

    def __getstate__(self) -> dict:
        state = self.__dict__.copy()
        state["print"] = None
        state["progress"] = None
        return state

    def __setstate__(self, state: dict) -> None:
        self.__dict__.update(state)
        self.print = utils.NullClass()
        self.progress = utils.NullClass()

    @abstractmethod
    def trial(self, rng: np.random.Generator) -> Union[float, TrialOutcome]:
        """
        Runs a single randomized check

        Returns:
            The dimension normalized discrepancy of the trial, or a
            TrialOutcome when the trial also accounts for sample points

        Raises:
            Any of SKIPPABLE to have the trial counted as skipped. Other
            errors count as a failed trial with an infinite error.
        """
        raise NotImplementedError

    # Sampling helpers shared by the suites
    def sample_size(self, key: str, rng: np.random.Generator, low: int = 1) -> int:
        """A uniform integer in low..settings[key]"""
        return int(rng.integers(low, self.settings[key] + 1))

    def ball_points(self, m: int, rng: np.random.Generator, radius: float = 0.9) -> list[ComplexMatrix]:
        """settings['points'] random interior points of B_m"""
        return [sample_ball_point(m, radius, rng) for _ in range(self.settings["points"])]

    @staticmethod
    def discrepancy(X: ComplexMatrix, Y: ComplexMatrix) -> float:
        """op_norm(X - Y) divided by the dimension of X"""
        X = np.asarray(X, dtype=complex)
        Y = np.asarray(Y, dtype=complex)
        if X.shape != Y.shape:
            raise ValueError(f"Cannot compare matrices of shapes {X.shape} and {Y.shape}")
        return op_norm(X - Y) / max(X.shape[0], 1)

    def _chunk(self, trials: int, seed: np.random.SeedSequence) -> tuple[float, int, int, int]:
        rng = np.random.default_rng(seed)
        worst = 0.0
        skipped = samples = skipped_samples = 0
        for _ in range(trials):
            try:
                outcome = self.trial(rng)
            except SKIPPABLE:
                skipped += 1
                continue
            except (InnerCalcError, ValueError, ArithmeticError) as e:
                # A crashing trial is a failed trial, not a crashed run
                self.print(f"[{self.theorem}] trial failed: {type(e).__name__}: {e}")
                outcome = math.inf
            if isinstance(outcome, TrialOutcome):
                samples += outcome.samples
                skipped_samples += outcome.skipped_samples
                error = outcome.error
            else:
                error = float(outcome)
            worst = max(worst, error) if not math.isnan(error) else math.inf
        return worst, skipped, samples, skipped_samples

    def run(
        self,
        trials: Optional[int] = None,
        seed: Optional[int] = None,
        threshold: Optional[float] = None,
    ) -> VerificationReport:
        """
        Runs the suite and summarizes it in a report

        Trials are split into chunks whose seeds are spawned from the master
        seed, so the report does not depend on the number of workers.

        Parameters:
            trials: Number of trials, defaults to the configured count
            seed: Master seed, defaults to the global seed
            threshold: Pass threshold, defaults to the configured tol

        Returns:
            The verification report
        """
        trials = self.settings["trials"] if trials is None else trials
        if utils.ensure_count(trials, "trials") < 1:
            raise ValueError("A verification run needs at least one trial")
        seed = utils.optional(seed, getattr(self, "_global_seed", 0))
        threshold = float(utils.optional(threshold, self.settings["tol"]))

        chunks = [len(batch) for batch in utils.get_batches(range(trials), _harness["chunk"])]
        seeds = utils.spawn_seeds(seed, len(chunks))

        self.print(f"[{self.theorem}] {self.description}")
        self.print(f"[{self.theorem}] {trials} trials in {len(chunks)} chunks, seed {seed}")
        start = time.perf_counter()
        if self.workers is not None and self.workers > 1:
            results = p_map(
                self._chunk,
                chunks,
                seeds,
                num_cpus=self.workers,
                disable=not self.show_progress,
            )
        else:
            results = []
            with self.progress(total=len(chunks), desc=self.theorem) as progress:
                for i, (n, s) in enumerate(zip(chunks, seeds)):
                    results.append(self._chunk(n, s))
                    self.print(f"[{self.theorem}] chunk {i}: max error {results[-1][0]:.3e}, skipped {results[-1][1]}")
                    progress.update()
        runtime = (time.perf_counter() - start) * 1000

        max_error = max(result[0] for result in results)
        skipped = sum(result[1] for result in results)
        samples = sum(result[2] for result in results)
        skipped_samples = sum(result[3] for result in results)
        passed = max_error <= threshold and skipped / trials <= _harness["max_skip_rate"]
        if samples:
            passed = passed and skipped_samples / samples <= self.settings.get(
                "max_sample_skip_rate", _harness["max_skip_rate"]
            )
            self.print(f"[{self.theorem}] {skipped_samples} of {samples} sample points skipped")
        self.print(f"[{self.theorem}] {'PASS' if passed else 'FAIL'}: max error {max_error:.3e}, {skipped} skipped")
        return VerificationReport(
            self.theorem,
            trials,
            max_error,
            skipped,
            passed,
            int(seed),
            threshold,
            runtime,
            samples=samples,
            skipped_samples=skipped_samples,
        )


def run_verify(
    theorem_id: str,
    trials: Optional[int] = None,
    seed: Optional[int] = None,
    tol: Optional[float] = None,
    workers: Optional[int] = None,
    verbose: bool = False,
    progress: bool = False,
    **kwargs: Any,
) -> VerificationReport:
    """
    Runs the property suite of a theorem

    Parameters:
        theorem_id: One of theorems.ids()
        trials: Number of trials, defaults to the suite's configured count
        seed: Master seed, defaults to innercalc.globals.seed
        tol: Pass threshold for the dimension normalized max error,
            defaults to the suite's configured tolerance
        workers: Number of worker processes
        kwargs: Forwarded to the suite, for instance ``colligation=`` for
            the INNER suite

    Returns:
        The verification report

    Raises:
        UnknownTheorem: no suite is registered under theorem_id
    """
    try:
        suite_class = theorems[theorem_id].c  # type: ignore[misc]
    except KeyError as e:
        raise UnknownTheorem(theorem_id) from e
    suite = suite_class(verbose=verbose, progress=progress, workers=workers, **kwargs)
    return suite.run(trials, seed, tol)


def read_reports(paths: Iterable[Union[str, Path]]) -> pd.DataFrame:
    """Loads JSON lines report files into one DataFrame"""
    records = []
    for path in paths:
        for line in Path(path).read_text().splitlines():
            if line.strip():
                records.append(json.loads(line))
    columns = ["theorem_id", "trials", "max_error", "skipped", "pass", "seed", "tol"]
    return pd.DataFrame.from_records(records, columns=columns) if records else pd.DataFrame(columns=columns)


def aggregate_reports(paths: Iterable[Union[str, Path]]) -> tuple[pd.DataFrame, bool]:
    """
    Summarizes report files per theorem

    Returns:
        A DataFrame indexed by theorem id with the number of runs, total
        trials, the worst error, total skips and whether every run passed,
        together with the overall verdict
    """
    frame = read_reports(paths)
    if frame.empty:
        return frame, False
    summary = frame.groupby("theorem_id", sort=False).agg(
        runs=("trials", "size"),
        trials=("trials", "sum"),
        max_error=("max_error", "max"),
        skipped=("skipped", "sum"),
        passed=("pass", "all"),
    )
    return summary, bool(summary["passed"].all())
