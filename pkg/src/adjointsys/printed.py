"""The published adjoint matrices, row j being the image of X_j.

M6 carries a stray subscript (sin s6) in its first row; it is kept here as
the symbol s6 so the comparison can annotate it."""
import sympy as sp

S = sp.Symbol("s", real=True)
S6 = sp.Symbol("s6", real=True)

_ROWS = {
    1: [
        "1 0 0 0 0 0 0",
        "0 1 0 0 0 0 0",
        "0 0 1 0 0 0 0",
        "0 0 0 cos(s) sin(s) 0 0",
        "0 0 0 -sin(s) cos(s) 0 0",
        "0 0 0 0 0 cos(s) -sin(s)",
        "0 0 0 0 0 sin(s) cos(s)",
    ],
    2: [
        "1 0 0 0 0 0 0",
        "0 1 0 0 0 0 0",
        "0 0 1 0 0 0 0",
        "0 0 0 1 0 0 0",
        "0 0 0 0 1 0 0",
        "0 0 0 0 -s 1 0",
        "0 0 0 -s 0 0 1",
    ],
    4: [
        "1 0 0 0 -s 0 0",
        "0 1 0 0 0 0 0",
        "0 0 1 0 0 0 0",
        "0 0 0 1 0 0 0",
        "0 0 0 0 1 0 0",
        "0 0 0 0 0 1 0",
        "0 s 0 0 0 0 1",
    ],
    5: [
        "1 0 0 s 0 0 0",
        "0 1 0 0 0 0 0",
        "0 0 1 0 0 0 0",
        "0 0 0 1 0 0 0",
        "0 0 0 0 1 0 0",
        "0 s 0 0 0 1 0",
        "0 0 0 0 0 0 1",
    ],
    6: [
        "cos(s) 0 0 0 0 0 sin(s6)",
        "0 cos(s) 0 0 sin(s) 0 0",
        "0 0 1 0 0 0 0",
        "0 0 0 1 0 0 0",
        "0 -sin(s) 0 0 cos(s) 0 0",
        "0 0 0 0 0 1 0",
        "-sin(s) 0 0 0 0 0 cos(s)",
    ],
    7: [
        "cos(s) 0 0 0 0 -sin(s) 0",
        "0 cos(s) 0 sin(s) 0 0 0",
        "0 0 1 0 0 0 0",
        "0 -sin(s) 0 cos(s) 0 0 0",
        "0 0 0 0 1 0 0",
        "sin(s) 0 0 0 0 cos(s) 0",
        "0 0 0 0 0 0 1",
    ],
}


def printedMatrix(i):
    if i == 3:
        return sp.eye(7)
    if i not in _ROWS:
        raise IndexError("no printed matrix M%d" % i)
    scope = {"s": S, "s6": S6}
    return sp.Matrix([[sp.sympify(entry, locals=scope) for entry in row.split()]
                      for row in _ROWS[i]])
