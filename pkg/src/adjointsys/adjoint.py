"""Adjoint action Ad(exp(s X_i)) on coefficient vectors.

Generators are numbered 1..n as in the commutator table. The matrix M_i(s)
has the image of X_j as its row j:

    Ad(exp(s X_i)) X_j = X_j - s [X_i, X_j] + s^2/2 [X_i, [X_i, X_j]] - ...

so M_i(s) = exp(-s ad X_i)^T, and an element with coefficient vector a is sent
to M_i(s)^T a = exp(-s ad X_i) a.
"""
import logging
import math
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np
import sympy as sp
from scipy.linalg import expm

from src.adjointsys.printed import S, S6, printedMatrix

logger = logging.getLogger(__name__)

SERIES_TERMS = 40


def adMatrix(g, i):
    """ad(X_i) for generator number i (1-based); column j is [X_i, X_j]."""
    if not 1 <= i <= g.dim:
        raise IndexError("generator index %d out of range 1..%d" % (i, g.dim))
    return g.adMatrix(i - 1)


def classifyGenerator(A):
    """'identity' when ad vanishes, 'nilpotent' when ad^2 = 0, 'rotation'
    when ad^3 = -ad; anything else is 'general'."""
    if A.is_zero_matrix:
        return "identity"
    A2 = A * A
    if A2.is_zero_matrix:
        return "nilpotent"
    if A2 * A == -A:
        return "rotation"
    return "general"


@dataclass(frozen=True)
class AdjointMatrix:
    generator: int
    kind: str
    ad: sp.Matrix
    closedForm: sp.Matrix = field(compare=False)

    @property
    def B(self):
        """Float matrix of -ad(X_i)."""
        return -np.array(self.ad.tolist(), dtype=float)

    def __call__(self, s):
        """M_i(s) as a float matrix."""
        return self.exponential(s).T

    def exponential(self, s):
        """exp(-s ad X_i) from the block structure."""
        B = self.B
        n = B.shape[0]
        if self.kind == "identity":
            return np.eye(n)
        if self.kind == "nilpotent":
            return np.eye(n) + s * B
        if self.kind == "rotation":
            return np.eye(n) + math.sin(s) * B + (1.0 - math.cos(s)) * (B @ B)
        return expm(s * B)

    def series(self, s, terms=SERIES_TERMS):
        """Truncated exponential series of M_i(s) and a bound on the tail."""
        B = self.B
        term = np.eye(B.shape[0])
        total = term.copy()
        for m in range(1, terms):
            term = term @ (s * B) / m
            total += term
        norm = np.linalg.norm(B, np.inf) * abs(s)
        tail = norm ** terms / math.factorial(terms) * math.exp(norm)
        return total.T, tail

    def crossCheck(self, s, terms=SERIES_TERMS):
        """Largest entry difference between the series and the closed form."""
        approx, _ = self.series(s, terms)
        return float(np.max(np.abs(approx - self(s))))

    def expmCheck(self, s):
        return float(np.max(np.abs(expm(s * self.B).T - self(s))))


def _closedForm(A, kind):
    n = A.rows
    if kind == "identity":
        E = sp.eye(n)
    elif kind == "nilpotent":
        E = sp.eye(n) - S * A
    elif kind == "rotation":
        E = sp.eye(n) - sp.sin(S) * A + (1 - sp.cos(S)) * A * A
    else:
        E = (-S * A).exp()
    return E.T


def adjointMatrix(g, i):
    A = adMatrix(g, i)
    kind = classifyGenerator(A)
    return AdjointMatrix(i, kind, A, _closedForm(A, kind))


@lru_cache(maxsize=None)
def adjointMatrices(g):
    return {i: adjointMatrix(g, i) for i in range(1, g.dim + 1)}


def adjointApply(g, transcript, x):
    """Apply (generator, s) pairs left to right to a coefficient vector."""
    matrices = adjointMatrices(g)
    a = np.array(x, dtype=float)
    for i, s in transcript:
        if i not in matrices:
            raise IndexError("generator index %d out of range 1..%d" % (i, g.dim))
        a = matrices[i].exponential(float(s)) @ a
    return a


def comparePrinted(g, i):
    """Entry-by-entry comparison of the closed form with the printed M_i."""
    computed = adjointMatrix(g, i).closedForm
    printed = printedMatrix(i)
    misprints = []
    mismatches = []
    for row in range(printed.rows):
        for col in range(printed.cols):
            entry = printed[row, col]
            if entry.has(S6):
                misprints.append(
                    {"row": row + 1, "column": col + 1, "printed": str(entry),
                     "read_as": str(entry.subs(S6, S))}
                )
                entry = entry.subs(S6, S)
            if sp.simplify(computed[row, col] - entry) != 0:
                mismatches.append(
                    {"row": row + 1, "column": col + 1, "computed": str(computed[row, col]),
                     "printed": str(printed[row, col])}
                )
    if mismatches:
        logger.warning("M%d differs from the printed matrix in %d entries", i, len(mismatches))
    return {
        "generator": i,
        "matches": not mismatches,
        "misprints": misprints,
        "mismatches": mismatches,
    }
