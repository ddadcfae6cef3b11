"""Matrices of superfunctions and exact rational inversion."""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

import sympy

from oddcon.algebra.grassmann import ChartSignature, GradedPoly
from oddcon.errors import SingularMatrixError

PolyMatrix = list[list[GradedPoly]]


def invert_rational(rows: Sequence[Sequence[Fraction]]) -> list[list[Fraction]]:
    """Exact inverse of a constant rational matrix.

    Raises:
        SingularMatrixError: if the matrix is singular.
    """
    matrix = sympy.Matrix([[sympy.Rational(str(Fraction(v))) for v in row] for row in rows])
    if matrix.det() == 0:
        raise SingularMatrixError("Matrix is singular")
    inverse = matrix.inv()
    return [
        [Fraction(int(inverse[i, j].p), int(inverse[i, j].q)) for j in range(inverse.cols)]
        for i in range(inverse.rows)
    ]


def identity(chart: ChartSignature, size: int) -> PolyMatrix:
    return [
        [GradedPoly.constant(chart, 1 if i == j else 0) for j in range(size)] for i in range(size)
    ]


def matmul(left: PolyMatrix, right: PolyMatrix) -> PolyMatrix:
    """Ordered product sum_k L[i][k] R[k][j]; factors keep their order."""
    chart = left[0][0].chart
    out = []
    for row in left:
        out_row = []
        for j in range(len(right[0])):
            acc = GradedPoly.zero(chart)
            for k, lv in enumerate(row):
                if not lv.is_zero and not right[k][j].is_zero:
                    acc = acc + lv * right[k][j]
            out_row.append(acc)
        out.append(out_row)
    return out


def is_zero_matrix(matrix: PolyMatrix) -> bool:
    return all(v.is_zero for row in matrix for v in row)


def invert_unipotent(matrix: PolyMatrix) -> PolyMatrix:
    """Inverse of F = F0 (1 + K) with F0 constant invertible and K nilpotent.

    F0 is the constant part of F. The series sum (-K)^k F0^{-1} terminates
    exactly when K is nilpotent.

    Raises:
        SingularMatrixError: if F0 is singular or K is not nilpotent.
    """
    size = len(matrix)
    chart = matrix[0][0].chart
    f0_inv = [
        [GradedPoly.constant(chart, v) for v in row]
        for row in invert_rational([[entry.body() for entry in row] for row in matrix])
    ]
    ident = identity(chart, size)
    scaled = matmul(f0_inv, matrix)
    minus_k = [[ident[i][j] - scaled[i][j] for j in range(size)] for i in range(size)]
    bound = size * (chart.n_odd + 1) + 1
    total = ident
    power = ident
    for _ in range(bound):
        power = matmul(power, minus_k)
        if is_zero_matrix(power):
            return matmul(total, f0_inv)
        total = [[total[i][j] + power[i][j] for j in range(size)] for i in range(size)]
    raise SingularMatrixError("Matrix has no polynomial inverse")
