"""
CSV and JSON survey reports.

Rows are sorted by (k, M, d, xi) and rendered through
AdmissibleRecordSerializer, so two runs over the same records write
byte-identical files.
"""

import csv
import io
import logging
from pathlib import Path
from typing import IO, Iterable, List, Union

from rest_framework.renderers import JSONRenderer

from .explorer import AdmissibleRecord
from .serializers import AdmissibleRecordSerializer

logger = logging.getLogger(__name__)

CSV_COLUMNS = (
    'k', 'M', 'd', 'xi', 'c_star', 'mu', 'deg', 'mu_over_d', 'm_total', 'final_bound',
    'eq1_lhs', 'eq1_rhs', 'eq2_ok', 'codim_ok',
)
FORMATS = ('csv', 'json')

Destination = Union[str, Path, IO[str]]


def _csv_cell(value) -> str:
    if isinstance(value, bool):
        return 'true' if value else 'false'
    if isinstance(value, list):
        return ','.join(str(v) for v in value)
    return str(value)


def render_json(data) -> str:
    """Indented JSON with the serializer's key order and a trailing newline."""
    return JSONRenderer().render(data, renderer_context={'indent': 2}).decode('utf-8') + '\n'


def render_records(records: Iterable[AdmissibleRecord], fmt: str) -> str:
    """
    Render records as CSV or JSON text.

    Raises:
        ValueError: If the format is not csv or json
    """
    if fmt not in FORMATS:
        raise ValueError(f"Unknown report format '{fmt}'. Available: {', '.join(FORMATS)}")
    ordered: List[AdmissibleRecord] = sorted(records, key=AdmissibleRecord.sort_key)
    rows = AdmissibleRecordSerializer(ordered, many=True).data

    if fmt == 'json':
        return render_json(rows)

    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator='\n')
    writer.writerow(CSV_COLUMNS)
    for row in rows:
        writer.writerow([_csv_cell(row[column]) for column in CSV_COLUMNS])
    return buffer.getvalue()


def export_report(records: Iterable[AdmissibleRecord], fmt: str, destination: Destination) -> None:
    """
    Write a survey report to a path or an open text stream.

    Raises:
        ValueError: If the format is unknown
        OSError: If the destination cannot be written
    """
    text = render_records(records, fmt)
    if hasattr(destination, 'write'):
        destination.write(text)
        return
    path = Path(destination)
    with path.open('w', encoding='utf-8', newline='') as handle:
        handle.write(text)
    logger.info(f"Wrote {fmt} report to {path}")
