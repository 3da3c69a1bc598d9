"""Analysis windows dual to a given synthesis window.

Every dual satisfies the Wexler-Raz constraints ``rows @ gamma = target``
(see :func:`gabortf.core.wexler_raz_system`). On an oversampled lattice the
constraints are fewer than the unknowns and the duals form an affine set;
the solvers here pick particular members of that set.
"""
import numpy as np
import scipy.linalg

from .core import RANK_RTOL, as_signal, atom_matrix, wexler_raz_system
from .errors import DimensionError, SingularSystemError


def frame_operator(p, lat):
    """``S = sum over atoms u of u u^H``; Hermitian positive semidefinite, ``(L, L)``."""
    atoms = atom_matrix(p, lat)
    return atoms.T @ np.conj(atoms)


def canonical_dual(p, lat):
    """``S^{-1} p`` by direct solve. Kept as an independent check on the solvers below."""
    p = as_signal(p, lat.L, "synthesis window")
    return np.linalg.solve(frame_operator(p, lat), p)


class _RowSpace:
    """Pivoted QR of the constraint rows, ``rows^H P = Q R``."""

    def __init__(self, system):
        rows = system.rows
        n_rows, L = rows.shape
        q, r, piv = scipy.linalg.qr(rows.conj().T, mode="economic", pivoting=True)
        diag = np.abs(np.diag(r))
        tol = RANK_RTOL * (diag[0] if diag.size else 0.0) * max(n_rows, L)
        rank = int(np.count_nonzero(diag > tol)) if diag.size and diag[0] > 0 else 0
        if rank < n_rows:
            raise SingularSystemError(
                f"Wexler-Raz system has rank {rank} < {n_rows} constraints; "
                "the window's atoms do not span the signal space"
            )
        self.q = q
        self.r = r
        self.piv = piv
        self.system = system

    def min_norm(self):
        # rows = P R^H Q^H, and gamma = Q y gives R^H y = P^T target
        rhs = self.system.target[self.piv]
        y = scipy.linalg.solve_triangular(self.r, rhs, trans="C", lower=False)
        return self.q @ y

    def null_projection(self, x):
        return x - self.q @ (self.q.conj().T @ x)


def min_norm_dual(p, lat):
    """The dual window of least Euclidean norm.

    Solved through a column-pivoted QR factorisation of the adjoint of the
    constraint rows, so the solution lies in their row space by construction.
    """
    return _RowSpace(wexler_raz_system(p, lat)).min_norm()


def most_orthogonal_like_dual(p, lat):
    """The dual window closest to ``p`` in Euclidean norm.

    Computed as ``p + rows^+ (target - rows p)`` with the pseudo-inverse
    taken from an SVD, independently of :func:`min_norm_dual`. Because ``p``
    itself lies in the row space of the constraints, the two agree.
    """
    system = wexler_raz_system(p, lat)
    p = as_signal(p, lat.L, "synthesis window")
    u, sv, vh = np.linalg.svd(system.rows, full_matrices=False)
    tol = RANK_RTOL * (sv[0] if sv.size else 0.0) * max(system.rows.shape)
    if sv.size == 0 or sv[0] == 0.0 or np.count_nonzero(sv > tol) < system.rows.shape[0]:
        raise SingularSystemError("Wexler-Raz system is rank deficient")
    resid = system.target - system.rows @ p
    return p + vh.conj().T @ ((u.conj().T @ resid) / sv)


def generalized_dual(p, lat, A):
    """Dual window minimising ``||gamma - A p||`` for a linear operator ``A``.

    ``A`` is an ``(L, L)`` array. The result is the minimum-norm dual plus the
    component of ``A p`` orthogonal to the constraint row space; it equals
    the minimum-norm dual whenever that component vanishes, which includes
    ``A = 0`` and every scalar multiple of the identity.
    """
    A = np.asarray(A, dtype=np.complex128)
    if A.shape != (lat.L, lat.L):
        raise DimensionError(f"operator has shape {A.shape}, expected {(lat.L, lat.L)}")
    space = _RowSpace(wexler_raz_system(p, lat))
    target = A @ as_signal(p, lat.L, "synthesis window")
    return space.min_norm() + space.null_projection(target)
