"""
Eigen data of small integer matrices.

Eigenvalues of 2x2 and 3x3 integer matrices come from closed-form roots of
the characteristic polynomial, invariant subspaces from null spaces of
products of shifted matrices.
"""
import math
from typing import List

import numpy as np

from .errors import InvalidSystem


def char_poly(matrix: np.ndarray) -> List[int]:
    """
    monic characteristic polynomial coefficients [1, c1, ..., cn]
    (highest degree first), exact for integer matrices up to 3x3.
    """
    m = np.asarray(matrix)
    n = m.shape[0]
    if n == 1:
        return [1, -int(m[0, 0])]
    if n == 2:
        trace = int(m[0, 0] + m[1, 1])
        det = int(m[0, 0] * m[1, 1] - m[0, 1] * m[1, 0])
        return [1, -trace, det]
    if n == 3:
        trace = int(np.trace(m))
        minors = 0
        for i, j in ((0, 1), (0, 2), (1, 2)):
            minors += int(m[i, i] * m[j, j] - m[i, j] * m[j, i])
        det = integer_det(m)
        return [1, -trace, minors, -det]
    return [int(round(c)) for c in np.poly(m.astype(float))]


def integer_det(matrix: np.ndarray) -> int:
    m = np.asarray(matrix)
    n = m.shape[0]
    if n == 1:
        return int(m[0, 0])
    if n == 2:
        return int(m[0, 0] * m[1, 1] - m[0, 1] * m[1, 0])
    # cofactor expansion along the first row
    det = 0
    for j in range(n):
        minor = np.delete(np.delete(m, 0, axis=0), j, axis=1)
        det += (-1) ** j * int(m[0, j]) * integer_det(minor)
    return det


def integer_inverse(matrix: np.ndarray) -> np.ndarray:
    """
    inverse of a unimodular integer matrix (again integer).
    """
    m = np.asarray(matrix)
    n = m.shape[0]
    det = integer_det(m)
    if abs(det) != 1:
        raise InvalidSystem(f'matrix is not unimodular (det={det})')
    if n == 1:
        return np.array([[det]], dtype=np.int64)
    adj = np.zeros((n, n), dtype=np.int64)
    for i in range(n):
        for j in range(n):
            minor = np.delete(np.delete(m, i, axis=0), j, axis=1)
            adj[j, i] = (-1) ** (i + j) * integer_det(minor)
    return adj * det


def _quadratic_roots(b: float, c: float) -> List[complex]:
    """roots of x^2 + b x + c"""
    disc = b * b - 4 * c
    if disc >= 0:
        sq = math.sqrt(disc)
        # avoid cancellation
        q = -0.5 * (b + math.copysign(sq, b)) if b != 0 else 0.5 * sq
        if q == 0:
            return [complex(0.0), complex(0.0)]
        return [complex(q), complex(c / q)]
    sq = math.sqrt(-disc)
    return [complex(-b / 2, sq / 2), complex(-b / 2, -sq / 2)]


def _cubic_roots(b: float, c: float, d: float) -> List[complex]:
    """roots of x^3 + b x^2 + c x + d (Cardano / trigonometric form)"""
    p = c - b * b / 3
    q = 2 * b ** 3 / 27 - b * c / 3 + d
    shift = -b / 3
    disc = (q / 2) ** 2 + (p / 3) ** 3
    if disc < 0:
        # three distinct real roots
        r = math.sqrt(-p / 3)
        phi = math.acos(max(-1.0, min(1.0, -q / (2 * r ** 3))))
        return [complex(2 * r * math.cos((phi - 2 * math.pi * k) / 3)
                        + shift) for k in range(3)]
    sq = math.sqrt(disc)
    u = math.copysign(abs(-q / 2 + sq) ** (1 / 3), -q / 2 + sq)
    v = math.copysign(abs(-q / 2 - sq) ** (1 / 3), -q / 2 - sq)
    omega = complex(-0.5, math.sqrt(3) / 2)
    return [complex(u + v + shift),
            u * omega + v * omega.conjugate() + shift,
            u * omega.conjugate() + v * omega + shift]


def _poly_value(coeffs, x):
    value = 0
    for c in coeffs:
        value = value * x + c
    return value


def _deflate(coeffs, root):
    """synthetic division by (x - root)"""
    out = [coeffs[0]]
    for c in coeffs[1:-1]:
        out.append(c + out[-1] * root)
    return out


def eigenvalues(matrix: np.ndarray) -> List[complex]:
    """
    eigenvalues of an integer matrix, closed form up to 3x3.

    Roots at +-1 are split off exactly first, so repeated central roots stay
    repeated; numpy only sees a remainder of degree 4 or more.
    """
    m = np.asarray(matrix)
    coeffs = char_poly(m)
    roots = []
    # unimodular characteristic polynomials only admit +-1 as integer roots
    while len(coeffs) > 3:
        for candidate in (1, -1):
            if _poly_value(coeffs, candidate) == 0:
                roots.append(complex(candidate))
                coeffs = _deflate(coeffs, candidate)
                break
        else:
            break
    if len(coeffs) > 4:
        roots += [complex(r) for r in np.roots(coeffs)]
    elif len(coeffs) == 4:
        roots += _cubic_roots(*[float(c) for c in coeffs[1:]])
    elif len(coeffs) == 3:
        roots += _quadratic_roots(float(coeffs[1]), float(coeffs[2]))
    elif len(coeffs) == 2:
        roots.append(complex(-coeffs[1]))
    return roots


def null_space(matrix: np.ndarray, rtol: float = 1e-9) -> np.ndarray:
    """
    orthonormal basis of the (numerical) null space, as columns.
    """
    m = np.asarray(matrix, dtype=float)
    _, sing, vh = np.linalg.svd(m)
    scale = max(1.0, float(sing[0])) if sing.size else 1.0
    rank = int(np.sum(sing > rtol * scale))
    basis = vh[rank:].T.copy()
    return normalize_signs(basis)


def normalize_signs(basis: np.ndarray) -> np.ndarray:
    """
    flip columns so their first significant component is positive.
    """
    for j in range(basis.shape[1]):
        col = basis[:, j]
        idx = np.flatnonzero(np.abs(col) > 1e-12)
        if idx.size and col[idx[0]] < 0:
            basis[:, j] = -col
    return basis


def invariant_subspace(matrix: np.ndarray,
                       values: List[complex]) -> np.ndarray:
    """
    orthonormal basis of the sum of (generalized) eigenspaces of the given
    eigenvalues, which must be closed under conjugation.
    """
    n = matrix.shape[0]
    if not values:
        return np.zeros((n, 0))
    product = np.eye(n, dtype=complex)
    shifted = np.asarray(matrix, dtype=complex)
    for value in values:
        product = product @ (shifted - value * np.eye(n))
    return null_space(product.real)
