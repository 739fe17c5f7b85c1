"""Exhaustive, deterministic enumeration of small structures.

Everything is produced in lexicographic order of the entry indices, so two
runs over the same bounds see the same sequence.
"""
from functools import lru_cache
from itertools import product

import numpy as np

from . import config
from .cat import QCategory, QCocategory, verify_category
from .errors import ResourceError, ValidationError
from .mod import QComodule, QModule
from .vmat import FinSet, Function, VMatrix, compose_data, function_table


def carrier(name, n):
    return FinSet(name, [f"{name.lower()}{i}" for i in range(n)])


def _budget(count, what):
    limit = config.current().enumeration
    if count > limit:
        raise ResourceError(f"enumerating {what} would produce {count} candidates "
                            f"(budget {limit}); lower the bounds")


def matrices(q, src, tgt):
    cells = len(src) * len(tgt)
    _budget(len(q) ** cells, f"{len(tgt)}x{len(src)} matrices")
    for data in product(range(len(q)), repeat=cells):
        yield VMatrix(q, src, tgt, data)


def categories(q, x):
    _budget(len(q) ** (len(x) ** 2), f"{len(x)}x{len(x)} matrices")
    for data in _category_rows(q, len(x)):
        yield QCategory(VMatrix(q, x, x, data), check=False)


def _grid(q, rows, cols):
    cells = rows * cols
    grid = np.array(list(product(range(len(q)), repeat=cells)), dtype=np.int64)
    return grid.reshape(len(grid), rows, cols)


@lru_cache(maxsize=64)
def _category_rows(q, n):
    x = carrier("X", n)
    grid = _grid(q, n, n)
    keep = [verify_category(VMatrix(q, x, x, d)).ok for d in grid]
    out = grid[np.array(keep, dtype=bool)]
    out.setflags(write=False)
    return out


@lru_cache(maxsize=4096)
def _module_rows(q, hom_bytes, nx, nu):
    hom = np.frombuffer(hom_bytes, dtype=np.int64).reshape(nx, nx)
    grid = _grid(q, nx, nu)
    out = grid[q.leq_table[compose_data(q, hom, grid), grid].all(axis=(-2, -1))]
    out.setflags(write=False)
    return out


def cocategories(q, z):
    allowed = q.idempotent_subunits()
    _budget(len(allowed) ** len(z), f"cocategories on {len(z)} objects")
    for weights in product(allowed, repeat=len(z)):
        yield QCocategory(q, z, weights, check=False)


def modules(a, u):
    """Modules over ``a`` with source ``u``: the matrices satisfying :func:`verify_module`."""
    q, x = a.q, a.objects
    _budget(len(q) ** (len(x) * len(u)), f"{len(x)}x{len(u)} matrices")
    hom = np.ascontiguousarray(a.hom.data, dtype=np.int64)
    for data in _module_rows(q, hom.tobytes(), len(x), len(u)):
        yield QModule(a, VMatrix(q, u, x, data), check=False)


def comodules(c, v):
    # the coaction inequality is entrywise, so each row has its own admissible values
    q = c.q
    values = np.arange(len(q))
    rows = [np.flatnonzero(q.leq_table[values, q.tensor_table[w, values]]) for w in c.weights]
    choices = [r for r in rows for _ in range(len(v))]
    _budget(int(np.prod([len(r) for r in choices], dtype=float)), "comodules")
    for data in product(*choices):
        yield QComodule(c, VMatrix(q, v, c.objects, data), check=False)


def functions(x, y):
    _budget(len(y) ** len(x), f"functions {x.name} -> {y.name}")
    for row in function_table(x, y):
        yield Function(x, y, row)


def enumerate_structures(kind, q, sizes, predicate=None):
    """Stream every structure of ``kind`` on carriers of the given sizes.

    ``sizes`` is ``(tgt, src)`` for matrices, ``n`` for (co)categories and
    ``(objects, src)`` for (co)modules, which range over every
    (co)category on ``objects``.
    """
    if kind == "matrix":
        ny, nx = sizes
        stream = matrices(q, carrier("X", nx), carrier("Y", ny))
    elif kind == "category":
        stream = categories(q, carrier("X", _single(sizes)))
    elif kind == "cocategory":
        stream = cocategories(q, carrier("Z", _single(sizes)))
    elif kind == "module":
        nx, nu = sizes
        stream = (m for a in categories(q, carrier("X", nx)) for m in modules(a, carrier("U", nu)))
    elif kind == "comodule":
        nz, nv = sizes
        stream = (k for c in cocategories(q, carrier("Z", nz)) for k in comodules(c, carrier("V", nv)))
    else:
        raise ValidationError(f"cannot enumerate {kind!r}")
    if predicate is None:
        return stream
    return (s for s in stream if predicate(s))


def _single(sizes):
    if isinstance(sizes, (tuple, list)):
        (sizes,) = sizes
    return int(sizes)
