"""Brute-force reference implementations used to freeze expected values."""
from itertools import product

import numpy as np


def is_preorder(rel):
    n = len(rel)
    if not all(rel[i][i] for i in range(n)):
        return False
    return all(rel[i][k] for i, j, k in product(range(n), repeat=3) if rel[i][j] and rel[j][k])


def warshall(adj):
    """Reflexive-transitive closure of a boolean adjacency matrix."""
    r = np.array(adj, dtype=bool) | np.eye(len(adj), dtype=bool)
    for k in range(len(r)):
        r = r | (r[:, k:k + 1] & r[k:k + 1, :])
    return r


def monotone(rows_a, rows_b, k):
    """Is the map k (list of indices) monotone from relation a to relation b?"""
    n = len(rows_a)
    return all(rows_b[k[i]][k[j]] for i in range(n) for j in range(n) if rows_a[i][j])
