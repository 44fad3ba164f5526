"""Result documents and their CSV / JSON renderings."""

import csv
import hashlib
import json
import math
from dataclasses import dataclass, field
from datetime import datetime, timezone
from enum import Enum
from functools import lru_cache
from typing import Optional

from jsonschema import Draft7Validator

from .loader import SCHEMA_DIR, load_json_file
from .utils.errors import Bic1dError

SCHEMA_VERSION = "1.0"
SCHEMA_PATH = SCHEMA_DIR / 'result_document.schema.json'


class Provenance(Enum):
    CLOSED_FORM = "ClosedForm"
    ORACLE = "Oracle"
    BOTH = "Both"


def _clean(value):
    """JSON-safe scalar: numpy numbers become Python numbers, non-finite floats become None."""
    if isinstance(value, Enum):
        return value.value
    if hasattr(value, 'item'):
        value = value.item()
    if isinstance(value, float) and not math.isfinite(value):
        return None
    return value


def canonical_json(obj):
    return json.dumps(obj, sort_keys=True, separators=(',', ':'), ensure_ascii=True, allow_nan=False)


@dataclass
class ResultDocument:
    command: str
    config: dict
    columns: list
    rows: list
    provenance: Provenance = Provenance.CLOSED_FORM
    summary: Optional[dict] = None
    produced_at: str = field(default_factory=lambda: datetime.now(timezone.utc).isoformat())
    exit_code: int = 0

    @classmethod
    def from_records(cls, command, config, records, columns=None, **kwargs):
        """Build from a list of dicts; column order is that of ``columns`` or the first record."""
        columns = list(columns or (records[0].keys() if records else ['empty']))
        rows = [[record.get(column) for column in columns] for record in records]
        return cls(command, config, columns, rows, **kwargs)

    @property
    def payload(self):
        payload = {
            'columns': list(self.columns),
            'rows': [[_clean(value) for value in row] for row in self.rows],
        }
        if self.summary is not None:
            payload['summary'] = json.loads(canonical_json(_deep_clean(self.summary)))
        return payload

    @property
    def payload_digest(self):
        return hashlib.sha256(canonical_json(self.payload).encode('ascii')).hexdigest()

    def as_dict(self):
        return {
            'schema_version': SCHEMA_VERSION,
            'command': self.command,
            'config': json.loads(canonical_json(_deep_clean(self.config))),
            'produced_at': self.produced_at,
            'provenance': self.provenance.value,
            'payload': self.payload,
            'payload_digest': self.payload_digest,
        }


def _deep_clean(obj):
    if isinstance(obj, dict):
        return {str(k): _deep_clean(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_deep_clean(v) for v in obj]
    return _clean(obj)


@lru_cache(maxsize=1)
def _validator():
    return Draft7Validator(load_json_file(SCHEMA_PATH))


def validate_document(document: dict):
    """Raise Bic1dError if ``document`` does not match the published schema."""
    errors = sorted(_validator().iter_errors(document), key=lambda e: list(e.path))
    if errors:
        where = '/'.join(str(part) for part in errors[0].path) or '<root>'
        raise Bic1dError(f"result document invalid at {where}: {errors[0].message}")


def format_cell(value):
    value = _clean(value)
    if value is None:
        return ''
    if isinstance(value, bool):
        return 'true' if value else 'false'
    if isinstance(value, float):
        return format(value, '.17g')
    return str(value)


def write_csv(document: ResultDocument, stream):
    """Header row plus data rows; floats with 17 significant digits, no timestamp."""
    writer = csv.writer(stream, lineterminator='\n')
    writer.writerow(document.columns)
    for row in document.rows:
        writer.writerow([format_cell(value) for value in row])


def write_json(document: ResultDocument, stream):
    data = document.as_dict()
    validate_document(data)
    json.dump(data, stream, indent=2, sort_keys=False, allow_nan=False)
    stream.write('\n')
