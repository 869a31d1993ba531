"""Exact subspaces of Q^n held as reduced row-echelon bases."""
import sympy as sp


class Subspace:
    def __init__(self, vectors, n):
        self.n = n
        rows = [list(map(sp.Rational, v)) for v in vectors]
        for row in rows:
            if len(row) != n:
                raise ValueError("vector of length %d in a subspace of Q^%d" % (len(row), n))
        if rows:
            reduced, pivots = sp.Matrix(rows).rref()
            self.basis = reduced[: len(pivots), :]
        else:
            self.basis = sp.zeros(0, n)

    @classmethod
    def full(cls, n):
        return cls(sp.eye(n).tolist(), n)

    @classmethod
    def ofIndices(cls, indices, n):
        """Span of the unit vectors e_i, i zero-based."""
        return cls([[1 if j == i else 0 for j in range(n)] for i in indices], n)

    @property
    def dim(self):
        return self.basis.rows

    @property
    def vectors(self):
        return [list(self.basis.row(i)) for i in range(self.dim)]

    def contains(self, vector):
        if all(sp.Rational(x) == 0 for x in vector):
            return True
        return Subspace(self.vectors + [list(vector)], self.n).dim == self.dim

    def join(self, other):
        return Subspace(self.vectors + other.vectors, self.n)

    def coordinates(self, vector):
        """Coefficients of `vector` in this basis, or None when outside."""
        return solveRational(self.basis.T, sp.Matrix(vector))

    def __eq__(self, other):
        return isinstance(other, Subspace) and self.n == other.n and self.basis == other.basis

    def __hash__(self):
        return hash((self.n, tuple(self.basis)))

    def __repr__(self):
        return "Subspace(dim=%d, n=%d)" % (self.dim, self.n)


def solveRational(A, b):
    """One exact solution of A x = b (free parameters set to 0), or None."""
    augmented = A.row_join(b)
    reduced, pivots = augmented.rref()
    if A.cols in pivots:
        return None
    x = [sp.S.Zero] * A.cols
    for row, column in enumerate(pivots):
        x[column] = reduced[row, A.cols]
    return x
