"""7-dimensional Lie algebras by structure constants and their Chevalley-Eilenberg
differential on left-invariant forms."""

import numpy as np

from ._tables import COMBS, DIM, DIMS, RANK, merge_sign
from .errors import DegreeError, ValidationError
from .exterior import Form

#: Instances with a Jacobi residual above this are rejected at construction.
JACOBI_TOL = 1e-10


def _as_constants(c):
    arr = np.asarray(c, dtype=np.float64)
    if arr.shape != (DIM, DIM, DIM):
        raise ValidationError(f"structure constants must be {DIM}x{DIM}x{DIM}, got {arr.shape}")
    return arr


def jacobi_residual(c):
    """Max-abs residual of the Jacobi identity over all basis triples.

    Accepts a raw structure-constant array or a LieAlgebra7.
    """
    arr = c.c if isinstance(c, LieAlgebra7) else _as_constants(c)
    # [[e_i, e_j], e_k] = sum_l c[i,j,l] c[l,k,:]
    t = np.einsum("ijl,lkm->ijkm", arr, arr)
    cyc = t + t.transpose(1, 2, 0, 3) + t.transpose(2, 0, 1, 3)
    return float(np.max(np.abs(cyc)))


class LieAlgebra7:
    """Lie algebra on e_1..e_7 with [e_i, e_j] = sum_k c[i,j,k] e_k  (0-based array)."""

    __slots__ = ("c", "_d_mats")

    def __init__(self, c, check=True):
        arr = _as_constants(c)
        if np.max(np.abs(arr + arr.transpose(1, 0, 2))) != 0.0:
            raise ValidationError("structure constants are not exactly antisymmetric in i, j")
        if check:
            res = jacobi_residual(arr)
            if res > JACOBI_TOL:
                raise ValidationError(f"Jacobi identity violated: residual {res:g} > {JACOBI_TOL:g}")
        arr = arr.copy()
        arr.flags.writeable = False
        self.c = arr
        self._d_mats = {}

    @classmethod
    def abelian(cls):
        return cls(np.zeros((DIM, DIM, DIM)))

    def bracket(self, x, y):
        """[x, y] for coefficient vectors x, y."""
        xv = np.asarray(x, dtype=np.float64)
        yv = np.asarray(y, dtype=np.float64)
        return np.einsum("i,j,ijk->k", xv, yv, self.c)

    def basis_bracket(self, i, j):
        """[e_i, e_j] for 1-based basis labels."""
        return self.c[i - 1, j - 1].copy()

    def d_matrix(self, degree):
        """Matrix of the Chevalley-Eilenberg differential on degree-k coefficients."""
        if degree not in self._d_mats:
            self._d_mats[degree] = self._build_d_matrix(degree)
        return self._d_mats[degree]

    def _build_d_matrix(self, degree):
        mat = np.zeros((DIMS[degree + 1], DIMS[degree]))
        if degree == 0:
            return mat
        # d e^m = -sum_{i<j} c[i,j,m] e^{ij}, extended as an antiderivation:
        # d e^I = sum_t (-1)^(t-1) (d e^{i_t}) ^ e^{I \ i_t}.
        d1 = {}
        for m in range(DIM):
            entries = []
            for i in range(DIM):
                for j in range(i + 1, DIM):
                    v = self.c[i, j, m]
                    if v != 0.0:
                        entries.append(((i + 1, j + 1), -v))
            d1[m + 1] = entries
        for col, comb in enumerate(COMBS[degree]):
            for t, m in enumerate(comb):
                rest = comb[:t] + comb[t + 1:]
                outer = -1.0 if t & 1 else 1.0
                for pair, v in d1[m]:
                    s = merge_sign(pair, rest)
                    if s == 0:
                        continue
                    row = RANK[degree + 1][tuple(sorted(pair + rest))]
                    mat[row, col] += outer * s * v
        return mat


def bracket(g, x, y):
    return g.bracket(x, y)


def is_unimodular(g, tol=1e-12):
    """True when every adjoint map ad_{e_i} is traceless within tol."""
    traces = np.einsum("ikk->i", g.c)
    return bool(np.max(np.abs(traces)) <= tol)


def ce_diff(g, a):
    """Chevalley-Eilenberg differential of a left-invariant form.

    On 1-forms (d alpha)(X, Y) = -alpha([X, Y]); antiderivation in general.
    """
    if not isinstance(a, Form):
        raise DegreeError("ce_diff expects a Form")
    if a.degree >= DIM:
        raise DegreeError("cannot differentiate a top-degree form")
    return Form(a.degree + 1, g.d_matrix(a.degree) @ a.values)
