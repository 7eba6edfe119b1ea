import csv
from pathlib import Path

from gpsort.infrastructure.series_writer import FileSeriesWriter


def test_write_series(tmp_path: Path) -> None:
    writer = FileSeriesWriter(tmp_path / "out")
    writer.write_series("scale", [(4.0, 120.0), (8.0, 1.0 / 3.0)], columns=("n", "median_evaluations"))
    lines = (tmp_path / "out" / "scale.dat").read_text(encoding="utf-8").splitlines()
    assert lines == ["# n median_evaluations", "4 120", "8 0.3333333333"]


def test_write_table(tmp_path: Path) -> None:
    writer = FileSeriesWriter(tmp_path)
    writer.write_table("probabilities", ("family", "n", "probability"), [("deletion-assisted", 8, 0.0375)])
    with (tmp_path / "probabilities.csv").open(newline="", encoding="utf-8") as file:
        rows = list(csv.reader(file))
    assert rows == [["family", "n", "probability"], ["deletion-assisted", "8", "0.0375"]]
