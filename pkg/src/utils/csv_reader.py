import csv
import io
from typing import List, Optional, Tuple

from src.utils.errors import ParseError
from src.utils.json_validator import DistributionFile, VectorFile, parse_model


def _as_float(cell: str) -> Optional[float]:
    try:
        return float(cell.strip())
    except ValueError:
        return None


def read_csv_rows(file_path: str) -> Tuple[Optional[List[str]], List[List[float]]]:
    """
    Reads a numeric CSV file.

    A first row that does not parse as numbers is taken as the header; empty
    rows are skipped.

    Args:
        file_path (str): Path to the CSV file.

    Returns:
        Tuple[Optional[List[str]], List[List[float]]]: Header (or None) and the numeric rows.

    Raises:
        FileNotFoundError: If the CSV file is not found.
        ParseError: If a data row is not numeric, rows differ in width or no data rows remain.
    """
    try:
        with open(file_path, 'r', encoding='utf-8', newline='') as file:
            text = file.read()
    except FileNotFoundError:
        raise FileNotFoundError(f"CSV file not found: {file_path}")

    header = None
    rows: List[List[float]] = []
    for line_no, row in enumerate(csv.reader(io.StringIO(text)), start=1):
        cells = [c for c in row if c.strip()]
        if not cells:
            continue
        values = [_as_float(c) for c in cells]
        if any(v is None for v in values):
            # 首行非数字视为表头
            if header is None and not rows:
                header = [c.strip() for c in cells]
                continue
            raise ParseError(f"{file_path}:{line_no}: non-numeric row {row}")
        if rows and len(values) != len(rows[0]):
            raise ParseError(f"{file_path}:{line_no}: expected {len(rows[0])} columns, got {len(values)}")
        rows.append(values)

    if not rows:
        raise ParseError(f"No valid data rows found in {file_path}")
    return header, rows


def convert_csv_to_distribution(file_path: str) -> DistributionFile:
    """
    Two columns ``value,mass`` become atoms, a single column becomes samples.

    Raises:
        ParseError: More than two columns, or the rows fail validation.
    """
    _, rows = read_csv_rows(file_path)
    width = len(rows[0])
    if width == 2:
        return parse_model({"atoms": [tuple(r) for r in rows]}, 'distribution', file_path)
    if width == 1:
        return parse_model({"samples": [r[0] for r in rows]}, 'distribution', file_path)
    raise ParseError(f"{file_path}: expected 1 or 2 columns, got {width}")


def convert_csv_to_vector(file_path: str) -> VectorFile:
    """A single column of vector entries."""
    _, rows = read_csv_rows(file_path)
    if len(rows[0]) != 1:
        raise ParseError(f"{file_path}: vector files have one column, got {len(rows[0])}")
    return parse_model({"entries": [r[0] for r in rows]}, 'vector', file_path)


def write_distribution_csv(atoms) -> str:
    """``value,mass`` CSV text with a header row."""
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator='\n')
    writer.writerow(['value', 'mass'])
    for value, mass in atoms:
        writer.writerow([repr(float(value)), repr(float(mass))])
    return buffer.getvalue()
