import csv
import io
import json
import os
from functools import lru_cache

import jsonschema

from formal_path_integral import logger, generalLogger
from formal_path_integral.encoder import JSONEncoder

SCHEMA_DIR = os.path.join(os.path.dirname(os.path.dirname(os.path.dirname(os.path.abspath(__file__)))), "schemas")


@lru_cache(maxsize=None)
def load_schema(name):
    with open(os.path.join(SCHEMA_DIR, f"{name}.json")) as stream:
        return json.load(stream)


def dumps_document(document):
    """Canonical JSON text: sorted keys, fixed indentation, trailing newline."""
    return json.dumps(document, cls=JSONEncoder, sort_keys=True, indent=2) + "\n"


def validate_document(document, schema_name):
    """Round-trip ``document`` through JSON and validate it; returns the plain dict."""
    plain = json.loads(dumps_document(document))
    jsonschema.validate(plain, load_schema(schema_name))
    return plain


def _write_text(path, text, error_msg, run_id=None):
    code = 0

    try:
        if path is None or path == "-":
            print(text, end="")
        else:
            directory = os.path.dirname(os.path.abspath(path))
            os.makedirs(directory, exist_ok=True)
            with open(path, "w", newline="") as stream:
                stream.write(text)

    except Exception as e:
        if run_id is None:
            generalLogger.error(repr(e))
            generalLogger.error(error_msg)
        else:
            logger.error(repr(e), extra=run_id)
            logger.error(error_msg, extra=run_id)

        code = 2

    return code


def write_document(path, document, schema_name, run_id=None):
    """Validate ``document`` against its schema and write it as JSON (stdout for ``-``)."""
    try:
        plain = validate_document(document, schema_name)
    except jsonschema.ValidationError as e:
        if run_id is None:
            generalLogger.error(repr(e))
        else:
            logger.error(repr(e), extra=run_id)
        return 2

    return _write_text(path, dumps_document(plain), f"Failed to write the {schema_name} document to {path}", run_id)


def table_text(header, rows):
    stream = io.StringIO()
    writer = csv.writer(stream, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
    return stream.getvalue()


def write_table(path, header, rows, run_id=None):
    """Write a CSV table (stdout for ``-``)."""
    return _write_text(path, table_text(header, rows), f"Failed to write the table to {path}", run_id)
