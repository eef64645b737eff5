"""Brute-force kernels over integer product tables"""

import numpy as np
from numba import njit


@njit(nogil=True)
def find_nonassociative_triple(product):
    """Return the first triple `(p, q, s)` with `p·(q·s) != (p·q)·s`, or `(-1, -1, -1)` for an associative table."""
    n = product.shape[0]
    for p in range(n):
        for q in range(n):
            pq = product[p, q]
            for s in range(n):
                if product[p, product[q, s]] != product[pq, s]:
                    return p, q, s
    return -1, -1, -1


@njit(nogil=True)
def find_row_collision(product):
    """Return `(p, q1, q2)` with `q1 < q2` and `p·q1 == p·q2`, or `(-1, -1, -1)` if every row is injective."""
    n = product.shape[0]
    seen = np.empty(n, dtype=np.int64)
    for p in range(n):
        seen[:] = -1
        for q in range(n):
            x = product[p, q]
            if seen[x] >= 0:
                return p, seen[x], q
            seen[x] = q
    return -1, -1, -1


@njit(nogil=True)
def find_column_collision(product):
    """Return `(q, p1, p2)` with `p1 < p2` and `p1·q == p2·q`, or `(-1, -1, -1)` if every column is injective."""
    n = product.shape[0]
    seen = np.empty(n, dtype=np.int64)
    for q in range(n):
        seen[:] = -1
        for p in range(n):
            x = product[p, q]
            if seen[x] >= 0:
                return q, seen[x], p
            seen[x] = p
    return -1, -1, -1


@njit(nogil=True)
def left_identity_mask(product):
    """Mask of elements `e` with `e·x == x` for all `x`."""
    n = product.shape[0]
    mask = np.ones(n, dtype=np.bool_)
    for e in range(n):
        for x in range(n):
            if product[e, x] != x:
                mask[e] = False
                break
    return mask


@njit(nogil=True)
def right_identity_mask(product):
    """Mask of elements `e` with `x·e == x` for all `x`."""
    n = product.shape[0]
    mask = np.ones(n, dtype=np.bool_)
    for e in range(n):
        for x in range(n):
            if product[x, e] != x:
                mask[e] = False
                break
    return mask


@njit(nogil=True)
def find_inverses(product, identity):
    """For each `p` return some `q` with `p·q == q·p == identity`, `-1` where no such element exists."""
    n = product.shape[0]
    inverses = np.full(n, -1, dtype=np.int64)
    for p in range(n):
        for q in range(n):
            if product[p, q] == identity and product[q, p] == identity:
                inverses[p] = q
                break
    return inverses


@njit(nogil=True)
def close_subset(product, mask):
    """Extend a boolean mask of elements until it is closed under the product. The mask is modified inplace."""
    n = product.shape[0]
    changed = True
    while changed:
        changed = False
        for p in range(n):
            if not mask[p]:
                continue
            for q in range(n):
                if mask[q] and not mask[product[p, q]]:
                    mask[product[p, q]] = True
                    changed = True
    return mask
