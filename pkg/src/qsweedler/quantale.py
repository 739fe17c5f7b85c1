"""Finite commutative quantales.

A quantale here is a finite lattice presented by its join table and bottom,
together with a commutative, associative, unital multiplication (``tensor``)
that distributes over joins.  Elements are opaque labels; internally every
element is its index in ``elements`` and all operations are table lookups,
so they broadcast over numpy integer arrays.

The partial order is never supplied separately.  It is read off the join
table (``a <= b`` iff ``a v b == b``), as are meets, the top element and the
residuation ``[a, b] = V{c : c (x) a <= b}``.
"""
from fractions import Fraction

import numpy as np

from . import config
from .errors import Failure, LawReport, ValidationError


class Quantale:

    def __init__(self, name, elements, join, bottom, tensor, unit, *, spec=None):
        self.name = name
        self.elements = tuple(str(e) for e in elements)
        n = len(self.elements)
        if n == 0:
            raise ValidationError("a quantale needs at least one element")
        if len(set(self.elements)) != n:
            raise ValidationError(f"duplicate element labels in {self.elements}")
        self._index = {e: i for i, e in enumerate(self.elements)}
        self.spec = spec
        self.join_table = self._table(join, "join")
        self.tensor_table = self._table(tensor, "tensor")
        self.bottom = self.index(bottom)
        self.unit = self.index(unit)

        bad = np.argwhere(self.tensor_table != self.tensor_table.T)
        if len(bad):
            a, b = bad[0]
            raise ValidationError(
                f"tensor is not commutative: {self.elements[a]}*{self.elements[b]} = "
                f"{self.elements[self.tensor_table[a, b]]} but "
                f"{self.elements[b]}*{self.elements[a]} = {self.elements[self.tensor_table[b, a]]}")

        idx = np.arange(n)
        self.leq_table = self.join_table == idx[None, :]
        self.top = self.join_all(range(n))
        # meet(a, b) is the join of all common lower bounds
        meet = np.empty((n, n), dtype=np.int64)
        for a in range(n):
            for b in range(n):
                lower = np.flatnonzero(self.leq_table[:, a] & self.leq_table[:, b])
                meet[a, b] = self.join_all(lower)
        self.meet_table = meet
        # [a, b] = join of all c with c * a <= b
        res = np.empty((n, n), dtype=np.int64)
        for a in range(n):
            ok = self.leq_table[self.tensor_table[:, a]]    # ok[c, b]: c*a <= b
            for b in range(n):
                res[a, b] = self.join_all(np.flatnonzero(ok[:, b]))
        self.res_table = res
        for t in (self.join_table, self.tensor_table, self.leq_table, self.meet_table, self.res_table):
            t.setflags(write=False)

    def _table(self, table, what):
        n = len(self.elements)
        arr = np.asarray(table)
        if arr.shape != (n, n):
            raise ValidationError(f"{what} table must be {n}x{n}, got shape {arr.shape}")
        if arr.dtype.kind in "US" or arr.dtype == object:
            arr = np.vectorize(self.index, otypes=[np.int64])(arr)
        arr = arr.astype(np.int64)
        if arr.min() < 0 or arr.max() >= n:
            raise ValidationError(f"{what} table has entries outside the carrier")
        return arr

    def __len__(self):
        return len(self.elements)

    def __repr__(self):
        return f"Quantale({self.name!r}, {len(self)} elements)"

    def __eq__(self, other):
        if self is other:
            return True
        if not isinstance(other, Quantale):
            return NotImplemented
        return (self.elements == other.elements and self.bottom == other.bottom
                and self.unit == other.unit
                and np.array_equal(self.join_table, other.join_table)
                and np.array_equal(self.tensor_table, other.tensor_table))

    def __hash__(self):
        return hash((self.name, self.elements))

    # element access

    def index(self, a):
        """Index of element ``a``: an index, a label, or a numeral such as ``0.5``."""
        if isinstance(a, (int, np.integer)) and not isinstance(a, bool):
            if 0 <= a < len(self.elements):
                return int(a)
            raise ValidationError(f"element index {a} out of range for {self.name}")
        a = str(a).strip()
        if a in self._index:
            return self._index[a]
        if a == "bottom":
            return self.bottom
        if a == "top":
            return self.top
        if a == "unit":
            return self.unit
        value = _numeral(a)
        if value is not None:
            for i, label in enumerate(self.elements):
                if _numeral(label) == value:
                    return i
        raise ValidationError(f"unknown element {a!r} in quantale {self.name}")

    def label(self, i):
        return self.elements[i]

    # vectorized operations on indices

    def join(self, a, b):
        return self.join_table[a, b]

    def meet(self, a, b):
        return self.meet_table[a, b]

    def tensor(self, a, b):
        return self.tensor_table[a, b]

    def res(self, a, b):
        return self.res_table[a, b]

    def leq(self, a, b):
        return self.leq_table[a, b]

    def join_all(self, values):
        acc = self.bottom
        for v in values:
            acc = self.join_table[acc, v]
        return int(acc)

    def meet_all(self, values):
        acc = self.top
        for v in values:
            acc = self.meet_table[acc, v]
        return int(acc)

    def join_reduce(self, arr, axis=0):
        arr = np.moveaxis(np.asarray(arr), axis, 0)
        out = np.full(arr.shape[1:], self.bottom, dtype=np.int64)
        for part in arr:
            out = self.join_table[out, part]
        return out

    def meet_reduce(self, arr, axis=0):
        arr = np.moveaxis(np.asarray(arr), axis, 0)
        out = np.full(arr.shape[1:], self.top, dtype=np.int64)
        for part in arr:
            out = self.meet_table[out, part]
        return out

    def height(self):
        """Number of elements on the longest strictly increasing chain."""
        n = len(self)
        less = self.leq_table & ~np.eye(n, dtype=bool)
        depth = np.ones(n, dtype=np.int64)
        # the order is acyclic, so n relaxation rounds suffice
        for _ in range(n):
            new = np.maximum(depth, np.max(np.where(less, depth[:, None] + 1, 1), axis=0))
            if np.array_equal(new, depth):
                break
            depth = new
        return int(depth.max())

    def idempotent_subunits(self):
        """Indices ``c`` with ``c <= e`` and ``c <= c*c``: the possible cocategory weights."""
        idx = np.arange(len(self))
        ok = self.leq_table[idx, self.unit] & self.leq_table[idx, self.tensor_table[idx, idx]]
        return [int(i) for i in np.flatnonzero(ok)]


def _numeral(text):
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        return None


def residuate(q, a, b):
    """The largest ``c`` with ``c (x) a <= b``, as a label."""
    return q.label(q.res_table[q.index(a), q.index(b)])


def descending_fixpoint(step, start):
    """Iterate a monotone, deflationary-from-top map until it stabilizes.

    ``step`` acts elementwise on an integer array of quantale indices.
    Returns the fixpoint and, per position, how many iterations changed the
    value.  On a finite lattice starting from top this is the greatest
    fixpoint and each position changes at most ``height - 1`` times.
    """
    current = np.asarray(start, dtype=np.int64).copy()
    steps = np.zeros(current.shape, dtype=np.int64)
    while True:
        nxt = step(current)
        changed = nxt != current
        if not changed.any():
            return current, steps
        steps += changed
        current = nxt


def _chain(name, n, tensor_of, spec):
    vals = [Fraction(k, n - 1) for k in range(n)]
    labels = [str(v) for v in vals]
    idx = {v: i for i, v in enumerate(vals)}
    join = [[max(i, j) for j in range(n)] for i in range(n)]
    tensor = [[idx[tensor_of(a, b)] for b in vals] for a in vals]
    return Quantale(name, labels, join, 0, tensor, n - 1, spec=spec)


def builtin(kind, n=2):
    """One of the stock quantales.

    ``bool`` is the two-element Boolean algebra with conjunction; ``godel n``
    is the n-chain ``0, 1/(n-1), ..., 1`` with ``min``; ``lukasiewicz n`` is
    the same chain with the truncated sum ``max(0, a + b - 1)``.
    """
    if kind == "bool":
        return Quantale("bool", ["0", "1"], [[0, 1], [1, 1]], 0, [[0, 0], [0, 1]], 1,
                        spec=("bool",))
    if kind not in ("godel", "lukasiewicz"):
        raise ValidationError(f"unknown builtin quantale {kind!r}")
    if not isinstance(n, (int, np.integer)) or n < 2:
        raise ValidationError(f"{kind} chains need n >= 2, got {n}")
    if n > config.current().max_chain:
        raise ValidationError(f"{kind} chains are capped at {config.current().max_chain} elements")
    if kind == "godel":
        return _chain(f"godel {n}", n, min, ("godel", n))
    return _chain(f"lukasiewicz {n}", n, lambda a, b: max(Fraction(0), a + b - 1), ("lukasiewicz", n))


def verify_quantale(q):
    """Check every quantale axiom exhaustively, one counterexample per broken law."""
    n = len(q)
    J, T = q.join_table, q.tensor_table
    a, b, c = np.meshgrid(np.arange(n), np.arange(n), np.arange(n), indexing="ij")
    report = LawReport(f"quantale {q.name}")

    def record(law, mask, *arrays):
        hits = np.argwhere(mask)
        if len(hits):
            pos = tuple(hits[0])
            report.failures.append(Failure(law, tuple(q.label(int(x[pos])) for x in arrays)))

    a2, b2 = a[:, :, 0], b[:, :, 0]
    record("join idempotence", J[np.arange(n), np.arange(n)] != np.arange(n), np.arange(n))
    record("join commutativity", J[a2, b2] != J[b2, a2], a2, b2)
    record("join associativity", J[J[a, b], c] != J[a, J[b, c]], a, b, c)
    record("join bottom", J[np.arange(n), q.bottom] != np.arange(n), np.arange(n))
    record("tensor associativity", T[T[a, b], c] != T[a, T[b, c]], a, b, c)
    record("tensor commutativity", T[a2, b2] != T[b2, a2], a2, b2)
    record("tensor unit", T[np.arange(n), q.unit] != np.arange(n), np.arange(n))
    record("join distributivity", T[a, J[b, c]] != J[T[a, b], T[a, c]], a, b, c)
    record("empty-join distributivity", T[np.arange(n), q.bottom] != q.bottom, np.arange(n))
    # a finite join-semilattice with bottom is a complete lattice, so meets come for free
    if report.ok:
        report.value = q
    return report
