"""Hamming-weight recursion for amplitudes of the complete graph.

The complete-graph state with edge phase ``theta`` is
``2^{-n/2} sum_z beta^{|z|(|z|-1)/2} |z>`` with ``beta = e^{-i theta}``, so its
overlap with a product bra only depends on the weight-resolved partial sums

    Z[m, y] = a_m Z[m-1, y] + b_m (c_y / c_{y-1}) Z[m-1, y-1],

filled bottom-up in O(n^2) cells.  Entries with ``y > m`` or ``y < 0`` are zero
(there are no such strings), and ``Z[0, 0] = 1``.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import pi

import numpy as np

from .graph import GraphError
from .statevector import LocalRotations, functional_from_rotations, conjugated_bra


@dataclass(frozen=True)
class PhaseCoefficients:
    beta: complex
    c: np.ndarray  # c[y] = beta^{y(y-1)/2}, y = 0..n


def coefficients(n: int, theta: float = pi) -> PhaseCoefficients:
    beta = np.exp(-1j * theta)
    y = np.arange(n + 1)
    # reduce the exponent mod 2 pi to keep large n accurate
    c = np.exp(-1j * np.mod(theta * (y * (y - 1) // 2), 2 * pi))
    if theta == pi:
        c = np.where((y * (y - 1) // 2) % 2, -1.0, 1.0).astype(complex)
    return PhaseCoefficients(complex(beta), c)


@dataclass
class RecursionTable:
    """Z[m, y] stored with a column offset of one so that y = -1 is column 0."""

    values: np.ndarray
    cells: int

    def __getitem__(self, key: tuple[int, int]) -> complex:
        m, y = key
        return complex(self.values[m, y + 1])


def recursion_table(f: np.ndarray, theta: float = pi) -> RecursionTable:
    f = np.asarray(f, dtype=complex)
    n = f.shape[0]
    ratio = np.exp(-1j * np.mod(theta * np.arange(-1, n), 2 * pi))  # c_y / c_{y-1} = beta^{y-1}
    if theta == pi:
        ratio = np.where(np.arange(-1, n) % 2, -1.0, 1.0).astype(complex)
    z = np.zeros((n + 1, n + 2), dtype=complex)
    z[0, 1] = 1.0
    scale = 2 ** -0.5
    cells = 1
    for m in range(1, n + 1):
        a, b = f[m - 1] * scale
        ys = np.arange(0, m + 1)
        z[m, ys + 1] = a * z[m - 1, ys + 1] + b * ratio[ys] * z[m - 1, ys]
        cells += m + 1
    return RecursionTable(z, cells)


def z_value(n: int, f, theta: float = pi) -> complex:
    """Overlap of the product bra ``f`` (shape (n, 2)) with the complete-graph state."""
    f = np.asarray(f, dtype=complex)
    if f.shape != (n, 2):
        raise GraphError(f"functional must have shape ({n}, 2), got {f.shape}")
    table = recursion_table(f, theta)
    return complex(table.values[n].sum())


def probability_complete(n: int, rotations: LocalRotations, x, theta: float = pi) -> float:
    """Outcome probability for K_n under the rows <x_i|U_i."""
    if rotations.n != n:
        raise GraphError(f"rotations cover {rotations.n} qubits, expected {n}")
    return abs(z_value(n, functional_from_rotations(rotations, x), theta)) ** 2


def conjugated_functional(rotations: LocalRotations) -> np.ndarray:
    return np.array([conjugated_bra(t, p) for t, p in zip(rotations.thetas, rotations.phis)])


def convention_report(rotations: LocalRotations, theta: float = pi, tol: float = 1e-9) -> dict:
    """Compare |Z[n]|^2 under the conjugated bra with p_{0^n} under the literal U_i."""
    n = rotations.n
    conj = abs(z_value(n, conjugated_functional(rotations), theta)) ** 2
    literal = probability_complete(n, rotations, "0" * n, theta)
    return {"conjugated_bra": conj, "literal_rows": literal, "match": abs(conj - literal) <= tol}
