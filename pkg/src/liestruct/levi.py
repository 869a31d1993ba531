"""Verification of a proposed radical / Levi factor pair."""
import itertools
import logging
from dataclasses import dataclass, field

import sympy as sp

from src.liestruct.algebra import derivedSeries, isSemisimple, subalgebra
from src.liestruct.errors import NotClosedError
from src.liestruct.subspace import Subspace

logger = logging.getLogger(__name__)


@dataclass
class LeviAssertion:
    name: str
    passed: bool
    witness: str = ""


@dataclass
class LeviReport:
    assertions: list = field(default_factory=list)
    so3: dict = field(default_factory=dict)

    @property
    def passed(self):
        return all(a.passed for a in self.assertions)

    def failures(self):
        return [a for a in self.assertions if not a.passed]

    def toDict(self):
        return {
            "passed": self.passed,
            "assertions": [
                {"name": a.name, "passed": a.passed, "witness": a.witness}
                for a in self.assertions
            ],
            "so3": self.so3,
        }


def _bracketText(g, x, y, result):
    return "[%s,%s] = %s" % (g.formatElement(x), g.formatElement(y), g.formatElement(result))


def idealWitness(g, subspace):
    """First bracket [h, X_j] leaving `subspace`, or None when it is an ideal."""
    for h in subspace.vectors:
        for j in range(g.dim):
            result = g.bracket(h, g.unit(j))
            if not subspace.contains(result):
                return _bracketText(g, h, g.unit(j), result)
    return None


def closureWitness(g, subspace):
    for x, y in itertools.combinations(subspace.vectors, 2):
        result = g.bracket(x, y)
        if not subspace.contains(result):
            return _bracketText(g, x, y, result)
    return None


def abelianWitness(g, subspace):
    for x, y in itertools.combinations(subspace.vectors, 2):
        result = g.bracket(x, y)
        if any(c != 0 for c in result):
            return _bracketText(g, x, y, result)
    return None


def so3Pattern(h):
    """Match a 3-dimensional algebra against [e1,e2] = a e3, [e2,e3] = b e1,
    [e3,e1] = c e2 with a, b, c of one sign. Returns the factors mapping the
    basis onto the standard so(3) basis ([f1,f2] = f3 cyclically)."""
    if h.dim != 3:
        return {"matches": False, "reason": "dimension %d" % h.dim}
    e = [h.unit(i) for i in range(3)]
    products = {}
    for i, j, k in ((0, 1, 2), (1, 2, 0), (2, 0, 1)):
        result = h.bracket(e[i], e[j])
        if any(result[m] != 0 for m in range(3) if m != k) or result[k] == 0:
            return {"matches": False, "reason": "[%s,%s] not a multiple of %s"
                    % (h.labels[i], h.labels[j], h.labels[k])}
        products[k] = result[k]
    a, b, c = products[2], products[0], products[1]
    if not (a * b > 0 and b * c > 0):
        return {"matches": False, "reason": "mixed signs, real form is not so(3)"}
    # f1 = e1/sqrt(c a), f2 = e2/sqrt(a b), f3 = e3/sqrt(b c)
    scaling = [1 / sp.sqrt(c * a), 1 / sp.sqrt(a * b), 1 / sp.sqrt(b * c)]
    if a < 0:
        scaling = [-s for s in scaling]
    return {
        "matches": True,
        "constants": [str(a), str(b), str(c)],
        "scaling": [str(s) for s in scaling],
        "rational": all(s.is_Rational for s in scaling),
    }


def verifyLevi(g, radical, levi):
    report = LeviReport()

    def record(name, witness, expectWitness=False):
        passed = (witness is not None) if expectWitness else (witness is None)
        report.assertions.append(LeviAssertion(name, passed, witness or ""))
        if not passed:
            logger.warning("levi check failed: %s %s", name, witness or "")

    record("radical is an ideal", idealWitness(g, radical))
    try:
        h = subalgebra(g, radical)
        last = derivedSeries(h)[-1]
        record("radical is solvable", None if last.dim == 0 else
               "derived series stops at dimension %d" % last.dim)
    except NotClosedError as error:
        record("radical is solvable", str(error))
    record("radical is abelian", abelianWitness(g, radical))

    closure = closureWitness(g, levi)
    record("levi factor is a subalgebra", closure)
    if closure is None:
        s = subalgebra(g, levi)
        record("levi factor is semisimple", None if isSemisimple(s) else
               "Killing form of the factor is degenerate")
        report.so3 = so3Pattern(s)
        record("levi factor matches so(3)", None if report.so3["matches"] else
               report.so3["reason"])
    else:
        record("levi factor is semisimple", "not a subalgebra")
        record("levi factor matches so(3)", "not a subalgebra")

    joined = radical.join(levi)
    record("radical + levi factor = algebra",
           None if joined.dim == g.dim and radical.dim + levi.dim == g.dim else
           "dimensions %d + %d span %d of %d" % (radical.dim, levi.dim, joined.dim, g.dim))
    record("levi factor is not an ideal", idealWitness(g, levi), expectWitness=True)
    return report


def cheRadicalAndLevi(n=7):
    """The decomposition <X2, X3, X4, X5> + <X1, X6, X7> of the CHE algebra."""
    return Subspace.ofIndices([1, 2, 3, 4], n), Subspace.ofIndices([0, 5, 6], n)
