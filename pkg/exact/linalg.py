"""Dense linear algebra over exact scalars (Fraction or QuadExt)."""
from exact.exceptions import SingularSystemError
from exact.rational import ZERO


def dot(u, v):
    total = ZERO
    for a, b in zip(u, v):
        total = total + a * b
    return total


def matvec(matrix, vector):
    return [dot(row, vector) for row in matrix]


def transpose(matrix):
    return [list(column) for column in zip(*matrix)]


def column(matrix, index):
    return [row[index] for row in matrix]


def vec_sub(u, v):
    return [a - b for a, b in zip(u, v)]


def vec_add(u, v):
    return [a + b for a, b in zip(u, v)]


def vec_scale(factor, v):
    return [factor * a for a in v]


def squared_norm(v):
    return dot(v, v)


def gram(columns):
    return [[dot(ci, cj) for cj in columns] for ci in columns]


def solve(matrix, rhs):
    """Solve matrix @ x = rhs by Gauss-Jordan elimination.

    Raises SingularSystemError when the matrix has no inverse.
    """
    size = len(matrix)
    augmented = [list(row) + [value] for row, value in zip(matrix, rhs)]
    for col in range(size):
        pivot = next((r for r in range(col, size) if augmented[r][col] != 0), None)
        if pivot is None:
            raise SingularSystemError(f"singular system at column {col}")
        augmented[col], augmented[pivot] = augmented[pivot], augmented[col]
        pivot_value = augmented[col][col]
        augmented[col] = [entry / pivot_value for entry in augmented[col]]
        for r in range(size):
            factor = augmented[r][col]
            if r != col and factor != 0:
                augmented[r] = [a - factor * b for a, b in zip(augmented[r], augmented[col])]
    return [row[size] for row in augmented]
