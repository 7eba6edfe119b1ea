from abc import ABC, abstractmethod
from collections.abc import Sequence


class AbstractSeriesWriter(ABC):
    """Abstract sink for plot-ready data."""

    @abstractmethod
    def write_series(self, name: str, points: Sequence[tuple[float, float]], *, columns: tuple[str, str]) -> None:
        """Write a two-column data series.

        Args:
            name: The name of the series; adapters derive the target from it.
            points: The `(x, y)` pairs.
            columns: Labels of the two columns.
        """

    @abstractmethod
    def write_table(self, name: str, columns: Sequence[str], rows: Sequence[Sequence[object]]) -> None:
        """Write an auxiliary table.

        Args:
            name: The name of the table.
            columns: The column names.
            rows: The rows, each with one value per column.
        """
