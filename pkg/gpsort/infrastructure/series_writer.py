import csv
import logging
from collections.abc import Sequence
from pathlib import Path

from gpsort.application.ports.series_writer import AbstractSeriesWriter

logger = logging.getLogger(__name__)


class FileSeriesWriter(AbstractSeriesWriter):
    """Writes series as whitespace-delimited `.dat` files and tables as `.csv` files into a directory."""

    def __init__(self, directory: Path) -> None:
        """Initializes the `FileSeriesWriter`.

        Args:
            directory: The output directory; created on first write.
        """
        self.directory = directory

    def write_series(self, name: str, points: Sequence[tuple[float, float]], *, columns: tuple[str, str]) -> None:
        """Write `<name>.dat` with a `#` header line and one `x y` pair per line.

        Args:
            name: The file stem.
            points: The `(x, y)` pairs.
            columns: Labels of the two columns.
        """
        self.directory.mkdir(parents=True, exist_ok=True)
        path = self.directory / f"{name}.dat"
        lines = [f"# {columns[0]} {columns[1]}", *(f"{x:g} {y:.10g}" for x, y in points)]
        path.write_text("\n".join(lines) + "\n", encoding="utf-8")
        logger.info("Wrote %d points to %s", len(points), path)

    def write_table(self, name: str, columns: Sequence[str], rows: Sequence[Sequence[object]]) -> None:
        """Write `<name>.csv` with a header row.

        Args:
            name: The file stem.
            columns: The column names.
            rows: The rows.
        """
        self.directory.mkdir(parents=True, exist_ok=True)
        path = self.directory / f"{name}.csv"
        with path.open("w", newline="", encoding="utf-8") as file:
            writer = csv.writer(file)
            writer.writerow(columns)
            writer.writerows(rows)
        logger.info("Wrote %d rows to %s", len(rows), path)
