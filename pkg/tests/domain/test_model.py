import math
from typing import Any

import pytest

from gpsort.domain.model import (
    Direction,
    InitConfig,
    InitMode,
    InvalidInitConfigError,
    InvalidRunConfigError,
    Measure,
    RunConfig,
    Variant,
)


class TestMeasure:
    @pytest.mark.parametrize(
        ("measure", "direction", "optimum", "penalty"),
        [
            (Measure.INV, Direction.MAXIMIZE, 28, None),
            (Measure.HAM, Direction.MAXIMIZE, 8, None),
            (Measure.RUN, Direction.MINIMIZE, 1, 9),
            (Measure.LAS, Direction.MAXIMIZE, 8, None),
            (Measure.EXC, Direction.MINIMIZE, 0, 9),
        ],
        ids=["inv", "ham", "run", "las", "exc"],
    )
    def test_properties(self, measure: Measure, direction: Direction, optimum: int, penalty: int | None) -> None:
        assert measure.direction is direction
        assert measure.optimum(8) == optimum
        assert measure.penalty(8) == penalty


class TestInitConfig:
    @pytest.mark.parametrize(
        "kwargs",
        [
            {"n": 1},
            {"n": 4, "p_join": 1.0},
            {"n": 4, "p_join": -0.1},
            {"n": 4, "depth_cap": 0},
            {"n": 4, "mode": InitMode.EXPLICIT},
        ],
        ids=["n_too_small", "p_join_one", "p_join_negative", "depth_cap_zero", "explicit_without_labels"],
    )
    def test_rejects_invalid(self, kwargs: dict[str, Any]) -> None:
        with pytest.raises(InvalidInitConfigError):
            InitConfig(**kwargs)

    @pytest.mark.parametrize("n", [2, 3, 8, 9, 64], ids=lambda n: f"n{n}")
    def test_default_depth_cap(self, n: int) -> None:
        assert InitConfig(n).effective_depth_cap == math.ceil(math.log2(n)) + 2

    def test_explicit_depth_cap(self) -> None:
        assert InitConfig(8, depth_cap=2).effective_depth_cap == 2


class TestRunConfig:
    def test_rejects_zero_budget(self) -> None:
        with pytest.raises(InvalidRunConfigError):
            RunConfig(4, Measure.INV, Variant.SINGLE, InitConfig(4), budget=0, seed=1)

    def test_rejects_mismatched_init(self) -> None:
        with pytest.raises(InvalidRunConfigError):
            RunConfig(4, Measure.INV, Variant.SINGLE, InitConfig(5), budget=10, seed=1)
