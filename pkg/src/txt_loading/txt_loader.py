from src.data_loading.che_builtin import builtinField, chePde
from src.jetprolong.jet import Pde, VectorField
from src.symcore.errors import ParseError
from src.symcore.parser import parse

FIELD_KEYS = ("xi1", "xi2", "xi3", "eta")


class InputFileError(ValueError):
    def __init__(self, path, message, line=None, offset=None):
        where = path if line is None else "%s:%d" % (path, line)
        if offset is not None:
            where += " (offset %d)" % offset
        super().__init__("%s: %s" % (where, message))
        self.path = path
        self.line = line
        self.offset = offset


def readKeyValueLines(path):
    """`key = value` lines; `#` comments and blank lines are skipped.
    Returns {key: (value, line number, column of the value)}."""
    entries = {}
    with open(path) as f:
        for number, line in enumerate(f.readlines(), start=1):
            text = line.split("#")[0].rstrip()
            if not text.strip():
                continue
            if "=" not in text:
                raise InputFileError(path, "expected 'key = value'", number)
            key, value = text.split("=", 1)
            column = len(key) + 1 + (len(value) - len(value.lstrip()))
            entries[key.strip()] = (value.strip(), number, column)
    return entries


def _parseEntry(path, entries, key):
    value, number, column = entries[key]
    try:
        return parse(value)
    except ParseError as error:
        raise InputFileError(path, str(error), number, column + error.offset)


def readFieldFile(path):
    if path.startswith("builtin:"):
        return builtinField(path.split(":", 1)[1])
    entries = readKeyValueLines(path)
    missing = [key for key in FIELD_KEYS if key not in entries]
    if missing:
        raise InputFileError(path, "missing %s" % ", ".join(missing))
    name = entries["name"][0] if "name" in entries else path
    return VectorField(*[_parseEntry(path, entries, key) for key in FIELD_KEYS], name=name)


def readPdeFile(path):
    if path in ("builtin", "builtin:che"):
        return chePde()
    entries = readKeyValueLines(path)
    if "lhs" not in entries:
        raise InputFileError(path, "missing lhs")
    leading = entries["solve_for"][0] if "solve_for" in entries else "u_rr"
    name = entries["name"][0] if "name" in entries else path
    return Pde.fromLhs(_parseEntry(path, entries, "lhs"), leading, name=name)


def readConstants(path):
    constants = {}
    for key, (value, number, _) in readKeyValueLines(path).items():
        try:
            constants[key] = float(value)
        except ValueError:
            raise InputFileError(path, "constant %s is not a number" % key, number)
    return constants


def readSampleBox(path):
    """Lines like `r = 0.5, 3` giving the range of each coordinate."""
    box = {}
    for key, (value, number, _) in readKeyValueLines(path).items():
        parts = value.split(",")
        if len(parts) != 2:
            raise InputFileError(path, "range of %s needs two numbers" % key, number)
        box[key] = (float(parts[0]), float(parts[1]))
    return box


def readSolutionFixtures(path):
    """Named solutions `name = expr` in r, q, z and the constants."""
    entries = readKeyValueLines(path)
    return {key: _parseEntry(path, entries, key) for key in entries}


def parseConstantArgs(pairs):
    """Command-line `name=value` bindings."""
    constants = {}
    for pair in pairs or []:
        if "=" not in pair:
            raise ValueError("constant binding %r is not name=value" % pair)
        name, value = pair.split("=", 1)
        constants[name.strip()] = float(value)
    return constants
