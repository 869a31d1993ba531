import json
import logging

logger = logging.getLogger(__name__)

SCHEMA_VERSION = 1

PASS = "pass"
FAIL = "fail"
UNVERIFIED = "unverified (paper typo suspected)"
UNVERIFIED_DOMAIN = "unverified (formula not real-valued)"
SKIPPED = "skipped (outside domain)"


def statusFor(value, tolerance, onFailure=FAIL):
    return PASS if value <= tolerance else onFailure


def checkEntry(name, value, tolerance, onFailure=FAIL, **extra):
    status = statusFor(value, tolerance, onFailure)
    if status != PASS:
        logger.warning("%s: %s (%.3g > %.3g)", name, status, value, tolerance)
    entry = {"name": name, "value": value, "tolerance": tolerance, "status": status}
    entry.update(extra)
    return entry


def anyFailed(entries):
    return any(entry.get("status") == FAIL for entry in entries)


def dumpReport(payload):
    """Deterministic JSON text with the schema version on top."""
    document = {"schema": SCHEMA_VERSION}
    document.update(payload)
    return json.dumps(document, sort_keys=True, indent=2, default=str) + "\n"


def renderTable(header, rows, corner=""):
    """Tab-separated grid: a header row, then one labelled row per entry."""
    lines = ["\t".join([corner] + list(header))]
    for label, cells in rows:
        lines.append("\t".join([label] + [str(cell) for cell in cells]))
    return "\n".join(lines) + "\n"


def renderColumns(rows):
    """Left-aligned plain-text columns for console output."""
    rows = [[str(cell) for cell in row] for row in rows]
    if not rows:
        return ""
    widths = [max(len(row[i]) for row in rows) for i in range(len(rows[0]))]
    return "\n".join(
        "  ".join(cell.ljust(width) for cell, width in zip(row, widths)).rstrip()
        for row in rows
    ) + "\n"
