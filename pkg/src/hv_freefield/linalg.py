"""
Exact linear algebra over the coefficient field.

Vectors are anything exposing `terms` (a mapping basis-key -> Scalar), so
FockElement, VermaElement and plain dicts all work. Matrices are sympy
DomainMatrix objects over the fraction field of the parameters.
"""

import logging
from typing import Callable, Dict, Hashable, List, Mapping, Sequence, Tuple, TypeVar, Union

from sympy.polys.matrices import DomainMatrix

from hv_freefield.scalars import FIELD, ZERO, Scalar

log = logging.getLogger(__name__)

DOMAIN = FIELD.to_domain()

V = TypeVar("V")
Coordinates = Mapping[Hashable, Scalar]


def _terms(vector: Union[Coordinates, object]) -> Coordinates:
    if isinstance(vector, Mapping):
        return vector
    return vector.terms


def coordinate_matrix(vectors: Sequence[object]) -> Tuple[DomainMatrix, List[Hashable]]:
    """
    Matrix whose columns are the coordinates of `vectors`.

    Returns:
        (matrix, row keys) with rows in first-seen order
    """
    index: Dict[Hashable, int] = {}
    columns = []
    for vector in vectors:
        terms = _terms(vector)
        for key in terms:
            if key not in index:
                index[key] = len(index)
        columns.append(terms)
    rows = [[ZERO] * len(vectors) for _ in range(len(index))]
    for j, terms in enumerate(columns):
        for key, coef in terms.items():
            rows[index[key]][j] = coef
    matrix = DomainMatrix(rows, (len(index), len(vectors)), DOMAIN)
    return matrix, list(index)


def rank(vectors: Sequence[object]) -> int:
    """Dimension of the span of `vectors`."""
    if not vectors:
        return 0
    matrix, keys = coordinate_matrix(vectors)
    if not keys:
        return 0
    return matrix.rank()


def nullspace_coefficients(images: Sequence[object]) -> List[List[Scalar]]:
    """Basis of {x : sum_i x_i images[i] = 0}, as coefficient lists."""
    if not images:
        return []
    matrix, keys = coordinate_matrix(images)
    if not keys:
        return [[ZERO] * i + [FIELD.one] + [ZERO] * (len(images) - i - 1) for i in range(len(images))]
    null = matrix.nullspace()
    return [list(row) for row in null.to_list()]


def kernel(sources: Sequence[V], images: Sequence[object], combine: Callable[[List[Tuple[Scalar, V]]], V]) -> List[V]:
    """
    Kernel of the linear map sources[i] -> images[i], as combinations of sources.

    Args:
        sources: domain vectors
        images: their images, in the same order
        combine: builds sum coef * source from (coef, source) pairs
    """
    if len(sources) != len(images):
        raise ValueError(f"{len(sources)} sources but {len(images)} images")
    result = []
    for coefficients in nullspace_coefficients(images):
        result.append(combine([(c, s) for c, s in zip(coefficients, sources) if c]))
    log.debug(f"[LINALG] kernel dim {len(result)} of {len(sources)}")
    return result


def independent_subset(vectors: Sequence[V]) -> List[V]:
    """Pivot columns of the coordinate matrix: a basis of the span chosen from `vectors`."""
    nonzero = [v for v in vectors if _terms(v)]
    if not nonzero:
        return []
    matrix, _ = coordinate_matrix(nonzero)
    _, pivots = matrix.rref()
    return [nonzero[j] for j in pivots]


def in_span(target: object, spanning: Sequence[object]) -> bool:
    """Exact span membership."""
    if not _terms(target):
        return True
    return rank(list(spanning) + [target]) == rank(spanning)


def scalar_matrix(rows: Sequence[Sequence[Scalar]]) -> DomainMatrix:
    """DomainMatrix from explicit Scalar entries."""
    height = len(rows)
    width = len(rows[0]) if rows else 0
    return DomainMatrix([list(row) for row in rows], (height, width), DOMAIN)
