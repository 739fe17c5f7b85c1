"""Quantale-valued matrices and the double category they form.

Objects are finite sets, vertical arrows are functions, horizontal arrows
``X -|-> Y`` are matrices indexed ``(target, source)``, and a 2-cell between
two matrices is a pair of boundary functions together with the verdict of
a pointwise inequality.  Because the enriching base is a poset, every
coherence equation between 2-cells holds automatically; what remains to
compute is whether a cell exists, which :func:`cell_check` decides.

Derived carriers get canonical labels so results are reproducible:
``(a,b)`` for pairs, ``inl:a`` / ``inr:b`` (or ``in2:c`` beyond two
summands) for tagged unions and ``{a↦x,b↦y}`` with sorted keys for
functions.
"""
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import product

import numpy as np
from scipy.sparse import coo_matrix
from scipy.sparse.csgraph import connected_components

from . import config
from .errors import BoundaryError, InvariantError, ValidationError


@dataclass(frozen=True)
class FinSet:
    name: str = field(compare=False)
    elements: tuple

    def __post_init__(self):
        elements = tuple(str(e) for e in self.elements)
        if len(set(elements)) != len(elements):
            raise ValidationError(f"set {self.name} has repeated elements")
        object.__setattr__(self, "elements", elements)
        object.__setattr__(self, "_pos", {e: i for i, e in enumerate(elements)})

    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __repr__(self):
        return f"FinSet({self.name!r}, {list(self.elements)})"

    def index(self, label):
        if isinstance(label, (int, np.integer)) and not isinstance(label, bool):
            if 0 <= label < len(self.elements):
                return int(label)
            raise ValidationError(f"index {label} out of range for set {self.name}")
        try:
            return self._pos[str(label)]
        except KeyError:
            raise ValidationError(f"{label!r} is not an element of {self.name}") from None


def singleton(name="1", label="*"):
    return FinSet(name, (label,))


def product_set(x, z):
    """``X * Z`` in row-major order: ``(x_i, z_j)`` sits at ``i*|Z| + j``."""
    return FinSet(f"{x.name}*{z.name}", tuple(f"({a},{b})" for a in x for b in z))


def _tags(count):
    return ["inl", "inr"] if count == 2 else [f"in{i}" for i in range(count)]


def coproduct_set(sets):
    tags = _tags(len(sets))
    return FinSet("+".join(s.name for s in sets) or "0",
                  tuple(f"{tag}:{e}" for tag, s in zip(tags, sets) for e in s))


def function_table(x, y):
    """All functions ``X -> Y`` as rows of target indices, lexicographically."""
    return _function_rows(len(x), len(y))


@lru_cache(maxsize=256)
def _function_rows(nx, ny):
    rows = list(product(range(ny), repeat=nx))
    out = np.array(rows, dtype=np.int64).reshape(len(rows), nx)
    out.setflags(write=False)
    return out


def function_index(rows, y_size):
    """Inverse of :func:`function_table` for an array of rows."""
    rows = np.asarray(rows, dtype=np.int64)
    out = np.zeros(rows.shape[:-1], dtype=np.int64)
    for j in range(rows.shape[-1]):
        out = out * y_size + rows[..., j]
    return out


def function_label(x, y, row):
    pairs = sorted((x.elements[i], y.elements[j]) for i, j in enumerate(row))
    return "{" + ",".join(f"{a}↦{b}" for a, b in pairs) + "}"


def exp_set(x, y):
    """The set ``Y^X`` of functions, ordered as :func:`function_table`."""
    return _exp_set(x.name, x.elements, y.name, y.elements)


@lru_cache(maxsize=1024)
def _exp_set(xname, xs, yname, ys):
    x, y = FinSet(xname, xs), FinSet(yname, ys)
    return FinSet(f"{yname}^{xname}", tuple(function_label(x, y, r) for r in function_table(x, y)))


class Function:
    """A total function between finite sets, stored as a tuple of target indices."""

    __slots__ = ("dom", "cod", "table")

    def __init__(self, dom, cod, table):
        table = tuple(int(t) for t in table)
        if len(table) != len(dom):
            raise ValidationError(f"function {dom.name} -> {cod.name} must be defined on all {len(dom)} elements")
        if any(not 0 <= t < len(cod) for t in table):
            raise ValidationError(f"function {dom.name} -> {cod.name} leaves its codomain")
        self.dom, self.cod, self.table = dom, cod, table

    @classmethod
    def from_mapping(cls, dom, cod, mapping):
        mapping = {str(k): v for k, v in dict(mapping).items()}
        missing = [e for e in dom if e not in mapping]
        if missing:
            raise ValidationError(f"function {dom.name} -> {cod.name} is undefined at {missing[0]}")
        extra = set(mapping) - set(dom.elements)
        if extra:
            raise ValidationError(f"{sorted(extra)[0]!r} is not an element of {dom.name}")
        return cls(dom, cod, [cod.index(mapping[e]) for e in dom])

    @classmethod
    def from_callable(cls, dom, cod, fn):
        return cls.from_mapping(dom, cod, {e: fn(e) for e in dom})

    @classmethod
    def identity(cls, x):
        return cls(x, x, range(len(x)))

    @classmethod
    def constant(cls, dom, cod, value):
        return cls(dom, cod, [cod.index(value)] * len(dom))

    @property
    def array(self):
        return np.array(self.table, dtype=np.int64)

    def __call__(self, label):
        return self.cod.elements[self.table[self.dom.index(label)]]

    def then(self, other):
        """``other`` after ``self``."""
        if self.cod != other.dom:
            raise BoundaryError(f"cannot compose {self.dom.name} -> {self.cod.name} with {other.dom.name} -> {other.cod.name}")
        return Function(self.dom, other.cod, [other.table[t] for t in self.table])

    def __eq__(self, other):
        if not isinstance(other, Function):
            return NotImplemented
        return self.dom == other.dom and self.cod == other.cod and self.table == other.table

    def __hash__(self):
        return hash((self.dom.elements, self.cod.elements, self.table))

    def __repr__(self):
        body = ", ".join(f"{a}->{self.cod.elements[t]}" for a, t in zip(self.dom, self.table))
        return f"Function({self.dom.name} -> {self.cod.name}: {body})"


def pair_map(f, g):
    """``f * g : X*Z -> Y*W``."""
    rows = [i * len(g.cod) + j for i in f.table for j in g.table]
    return Function(product_set(f.dom, g.dom), product_set(f.cod, g.cod), rows)


def curry(phi, c, x):
    """Exponential transpose of ``phi: C*X -> A`` into ``C -> A^X``."""
    if phi.dom != product_set(c, x):
        raise BoundaryError(f"{phi.dom.name} is not {c.name}*{x.name}")
    a = phi.cod
    rows = np.array(phi.table, dtype=np.int64).reshape(len(c), len(x))
    return Function(c, exp_set(x, a), function_index(rows, len(a)))


def uncurry(f, x, a):
    """Inverse of :func:`curry`: ``f: C -> A^X`` becomes ``C*X -> A``."""
    if f.cod != exp_set(x, a):
        raise BoundaryError(f"{f.cod.name} is not {a.name}^{x.name}")
    rows = function_table(x, a)[list(f.table)]
    return Function(product_set(f.dom, x), a, rows.reshape(-1))


class VMatrix:
    """A matrix ``X -|-> Y`` with entries in a quantale, indexed ``(y, x)``."""

    __slots__ = ("q", "src", "tgt", "data")

    def __init__(self, q, src, tgt, data):
        data = np.array(data, dtype=np.int64).reshape(len(tgt), len(src))
        if data.size and (data.min() < 0 or data.max() >= len(q)):
            raise ValidationError("matrix entries lie outside the quantale")
        data.setflags(write=False)
        self.q, self.src, self.tgt, self.data = q, src, tgt, data

    @classmethod
    def from_entries(cls, q, src, tgt, entries=(), default=None):
        fill = q.bottom if default is None else q.index(default)
        data = np.full((len(tgt), len(src)), fill, dtype=np.int64)
        for (y, x), v in dict(entries).items():
            data[tgt.index(y), src.index(x)] = q.index(v)
        return cls(q, src, tgt, data)

    @classmethod
    def bottom(cls, q, src, tgt):
        return cls(q, src, tgt, np.full((len(tgt), len(src)), q.bottom))

    @classmethod
    def top(cls, q, src, tgt):
        return cls(q, src, tgt, np.full((len(tgt), len(src)), q.top))

    @property
    def shape(self):
        return self.data.shape

    def entry(self, y, x):
        return self.q.label(self.data[self.tgt.index(y), self.src.index(x)])

    def entries(self):
        """``{(y, x): label}`` for every position."""
        return {(y, x): self.q.label(self.data[i, j])
                for i, y in enumerate(self.tgt) for j, x in enumerate(self.src)}

    def with_data(self, data):
        return VMatrix(self.q, self.src, self.tgt, data)

    def relabel(self, src=None, tgt=None):
        src, tgt = src or self.src, tgt or self.tgt
        if len(src) != len(self.src) or len(tgt) != len(self.tgt):
            raise BoundaryError("relabeling must preserve carrier sizes")
        return VMatrix(self.q, src, tgt, self.data)

    def is_endo(self):
        return self.src == self.tgt

    def __le__(self, other):
        _same_boundary(self, other)
        return bool(self.q.leq_table[self.data, other.data].all())

    def __or__(self, other):
        _same_boundary(self, other)
        return self.with_data(self.q.join_table[self.data, other.data])

    def __and__(self, other):
        _same_boundary(self, other)
        return self.with_data(self.q.meet_table[self.data, other.data])

    def __eq__(self, other):
        if not isinstance(other, VMatrix):
            return NotImplemented
        return (self.q == other.q and self.src == other.src and self.tgt == other.tgt
                and np.array_equal(self.data, other.data))

    __hash__ = None

    def __repr__(self):
        rows = "; ".join(" ".join(self.q.label(v) for v in row) for row in self.data)
        return f"VMatrix({self.src.name} -|-> {self.tgt.name}: [{rows}])"


def _same_quantale(*ms):
    q = ms[0].q
    for m in ms[1:]:
        if m.q != q:
            raise ValidationError(f"matrices over different quantales ({q.name}, {m.q.name})")
    return q


def _same_boundary(a, b):
    _same_quantale(a, b)
    if a.src != b.src or a.tgt != b.tgt:
        raise BoundaryError(
            f"boundaries differ: {a.src.name} -|-> {a.tgt.name} vs {b.src.name} -|-> {b.tgt.name}")


def compose_data(q, t, s):
    """Join-of-tensors product of index arrays ``t`` (..., Z, Y) and ``s`` (..., Y, X).

    Leading axes broadcast, so whole batches of matrices compose at once.
    """
    t, s = np.asarray(t), np.asarray(s)
    lead = np.broadcast_shapes(t.shape[:-2], s.shape[:-2])
    out = np.full(lead + (t.shape[-2], s.shape[-1]), q.bottom, dtype=np.int64)
    for y in range(t.shape[-1]):
        out = q.join_table[out, q.tensor_table[t[..., :, y, None], s[..., None, y, :]]]
    return out


def hcompose(t, s):
    """Horizontal composite ``T o S``: ``(T o S)(z, x) = V_y T(z, y) (x) S(y, x)``."""
    q = _same_quantale(t, s)
    if s.tgt != t.src:
        raise BoundaryError(
            f"cannot compose {s.src.name} -|-> {s.tgt.name} with {t.src.name} -|-> {t.tgt.name}")
    return VMatrix(q, s.src, t.tgt, compose_data(q, t.data, s.data))


def identity_matrix(q, x):
    data = np.full((len(x), len(x)), q.bottom, dtype=np.int64)
    np.fill_diagonal(data, q.unit)
    return VMatrix(q, x, x, data)


def tensor_data(q, s, t):
    """Kronecker-style tensor of index arrays ``s`` (..., Y, X) and ``t`` (..., W, Z)."""
    s, t = np.asarray(s), np.asarray(t)
    out = q.tensor_table[s[..., :, None, :, None], t[..., None, :, None, :]]
    lead = out.shape[:-4]
    return out.reshape(lead + (s.shape[-2] * t.shape[-2], s.shape[-1] * t.shape[-1]))


def tensor_matrices(s, t):
    """``(S (x) T)((y,w),(x,z)) = S(y,x) (x) T(w,z)`` on product carriers."""
    q = _same_quantale(s, t)
    return VMatrix(q, product_set(s.src, t.src), product_set(s.tgt, t.tgt), tensor_data(q, s.data, t.data))


def reindex(m, tgt_map, src_map):
    """``m(g(y'), f(x'))`` for ``g = tgt_map: Y' -> Y`` and ``f = src_map: X' -> X``."""
    if tgt_map.cod != m.tgt or src_map.cod != m.src:
        raise BoundaryError("reindexing maps must land in the matrix boundaries")
    return VMatrix(m.q, src_map.dom, tgt_map.dom, m.data[np.ix_(tgt_map.table, src_map.table)])


def companion_conjoint(q, f):
    """The companion ``f_*: X -|-> Y`` and conjoint ``f^*: Y -|-> X`` of ``f: X -> Y``."""
    if not isinstance(f, Function):
        raise ValidationError("companions are built from a total Function")
    data = np.full((len(f.cod), len(f.dom)), q.bottom, dtype=np.int64)
    data[list(f.table), np.arange(len(f.dom))] = q.unit
    return VMatrix(q, f.dom, f.cod, data), VMatrix(q, f.cod, f.dom, data.T)


def companion_cells(q, f):
    """The four framing cells and the two zig-zag comparisons for ``f``.

    ``p1: 1_X => f_*`` over ``(id, f)``, ``p2: f_* => 1_Y`` over ``(f, id)``,
    ``q1: 1_X => f^*`` over ``(f, id)``, ``q2: f^* => 1_Y`` over ``(id, f)``,
    then the globular unit ``1_X => f^* o f_*`` and counit ``f_* o f^* => 1_Y``.
    """
    x, y = f.dom, f.cod
    lower, upper = companion_conjoint(q, f)
    ix, iy = Function.identity(x), Function.identity(y)
    one_x, one_y = identity_matrix(q, x), identity_matrix(q, y)
    return {
        "p1": cell_check(ix, f, one_x, lower),
        "p2": cell_check(f, iy, lower, one_y),
        "q1": cell_check(f, ix, one_x, upper),
        "q2": cell_check(iy, f, upper, one_y),
        "unit": cell_check(ix, ix, one_x, hcompose(upper, lower)),
        "counit": cell_check(iy, iy, hcompose(lower, upper), one_y),
    }


@dataclass(frozen=True)
class Cell2:
    f: Function         # between sources
    g: Function         # between targets
    dom: VMatrix
    cod: VMatrix
    verdict: bool
    witness: tuple = None

    def __bool__(self):
        return self.verdict


def cell_check(f, g, dom, cod):
    """Decide whether ``dom(y, x) <= cod(g(y), f(x))`` for all ``y, x``."""
    _same_quantale(dom, cod)
    if f.dom != dom.src or f.cod != cod.src:
        raise BoundaryError(f"source map {f.dom.name} -> {f.cod.name} does not fit {dom.src.name} -> {cod.src.name}")
    if g.dom != dom.tgt or g.cod != cod.tgt:
        raise BoundaryError(f"target map {g.dom.name} -> {g.cod.name} does not fit {dom.tgt.name} -> {cod.tgt.name}")
    moved = cod.data[np.ix_(g.table, f.table)]
    ok = dom.q.leq_table[dom.data, moved]
    if ok.all():
        return Cell2(f, g, dom, cod, True)
    y, x = np.argwhere(~ok)[0]
    return Cell2(f, g, dom, cod, False, (dom.tgt.elements[y], dom.src.elements[x]))


def hom_data(q, s, t, m_rows, n_rows):
    """``H(S,T)(m, n) = /\\_{x,y} [S(y,x), T(m(y), n(x))]`` for given function rows.

    ``s`` and ``t`` may carry leading batch axes, which broadcast.
    """
    s, t = np.asarray(s), np.asarray(t)
    lead = np.broadcast_shapes(s.shape[:-2], t.shape[:-2])
    out = np.full(lead + (len(m_rows), len(n_rows)), q.top, dtype=np.int64)
    for yi in range(s.shape[-2]):
        for xi in range(s.shape[-1]):
            moved = t[..., m_rows[:, yi][:, None], n_rows[:, xi][None, :]]
            out = q.meet_table[out, q.res_table[s[..., yi, xi, None, None], moved]]
    return out


def internal_hom(s, t):
    """The closed structure: ``H(S, T): Z^X -|-> W^Y`` for ``S: X -|-> Y``, ``T: Z -|-> W``."""
    q = _same_quantale(s, t)
    x, y, z, w = s.src, s.tgt, t.src, t.tgt
    config.check_cap(len(w) ** len(y) * len(z) ** len(x), f"H({s.tgt.name}<-{s.src.name}, {t.tgt.name}<-{t.src.name})")
    m_rows, n_rows = function_table(y, w), function_table(x, z)
    return VMatrix(q, exp_set(x, z), exp_set(y, w), hom_data(q, s.data, t.data, m_rows, n_rows))


def hom_transpose_check(r, s, t, phi, psi):
    """Cells ``R (x) S => T`` over ``(phi, psi)`` versus ``R => H(S, T)`` over their transposes.

    Returns the common verdict; raises :class:`InvariantError` if they differ.
    """
    left = cell_check(phi, psi, tensor_matrices(r, s), t)
    right = cell_check(curry(phi, r.src, s.src), curry(psi, r.tgt, s.tgt), r, internal_hom(s, t))
    if left.verdict != right.verdict:
        raise InvariantError(
            f"transpose mismatch: R(x)S => T is {left.verdict} but R => H(S,T) is {right.verdict}")
    return left.verdict


def injections(sets):
    total = coproduct_set(sets)
    out, offset = [], 0
    for s in sets:
        out.append(Function(s, total, range(offset, offset + len(s))))
        offset += len(s)
    return out


def coproduct_matrices(ms):
    """Block-diagonal sum of ``M_i: X_i -|-> X_i'`` on tagged disjoint unions."""
    if not ms:
        raise ValidationError("coproduct of an empty family needs an explicit quantale")
    q = _same_quantale(*ms)
    src, tgt = coproduct_set([m.src for m in ms]), coproduct_set([m.tgt for m in ms])
    data = np.full((len(tgt), len(src)), q.bottom, dtype=np.int64)
    r = c = 0
    for m in ms:
        data[r:r + m.shape[0], c:c + m.shape[1]] = m.data
        r, c = r + m.shape[0], c + m.shape[1]
    return VMatrix(q, src, tgt, data)


def coproduct_injections(ms):
    total = coproduct_matrices(ms)
    return [cell_check(f, g, m, total)
            for m, f, g in zip(ms, injections([m.src for m in ms]), injections([m.tgt for m in ms]))]


def _quotient(x, pairs, name):
    n = len(x)
    rows = [a for a, _ in pairs]
    cols = [b for _, b in pairs]
    graph = coo_matrix((np.ones(len(pairs)), (rows, cols)), shape=(n, n))
    count, labels = connected_components(graph, directed=False)
    classes = [[] for _ in range(count)]
    for i, k in enumerate(labels):
        classes[k].append(x.elements[i])
    names = [c[0] if len(c) == 1 else "[" + ",".join(c) + "]" for c in classes]
    quotient = FinSet(name, names)
    return Function(x, quotient, labels)


def coequalizer_matrices(phi, psi):
    """Coequalizer of two parallel cells ``A => B``.

    The boundary sets of ``B`` are quotiented by the identifications the two
    cells make, and each entry of the result is the join of the ``B``-entries
    in its pair of classes.  Returns the matrix and the projection cell.
    """
    if not (phi.dom == psi.dom and phi.cod == psi.cod):
        raise BoundaryError("coequalizer needs parallel cells")
    if not (phi.verdict and psi.verdict):
        raise ValidationError("coequalizer inputs must be genuine cells (verdict true)")
    b = phi.cod
    src_q = _quotient(b.src, list(zip(phi.f.table, psi.f.table)), f"{b.src.name}/~")
    tgt_q = _quotient(b.tgt, list(zip(phi.g.table, psi.g.table)), f"{b.tgt.name}/~")
    c = fiber_join(b, tgt_q, src_q)
    return c, cell_check(src_q, tgt_q, b, c)


def fiber_join(m, tgt_map, src_map):
    """``C(v, u) = V {m(y, x) : g(y) = v, f(x) = u}``: pushforward of entries along both maps."""
    q = m.q
    data = np.full((len(tgt_map.cod), len(src_map.cod)), q.bottom, dtype=np.int64)
    for i, v in enumerate(tgt_map.table):
        for j, u in enumerate(src_map.table):
            data[v, u] = q.join_table[data[v, u], m.data[i, j]]
    return VMatrix(q, src_map.cod, tgt_map.cod, data)


def _colimit_maps(ms, maps):
    if maps is None:
        return injections([m.src for m in ms])
    if len(maps) != len(ms):
        raise ValidationError("one cocone map per family member")
    cod = maps[0].cod
    for m, f in zip(ms, maps):
        if f.dom != m.src or f.cod != cod:
            raise BoundaryError("cocone maps must send each source into a common set")
    return list(maps)


def fiber_colimit(ms, maps=None):
    """Colimit of a discrete family ``M_i: X_i -|-> Y`` with the target held fixed.

    ``C(y, x) = V_i V_{q_i(x_i) = x} M_i(y, x_i)`` where ``q_i`` are the
    coproduct injections, or the given ``maps`` into a common source.
    """
    if not ms:
        raise ValidationError("fiber colimit of an empty family needs an explicit quantale")
    q = _same_quantale(*ms)
    y = ms[0].tgt
    for m in ms:
        if m.tgt != y:
            raise BoundaryError(f"fiber colimit needs a common target, got {y.name} and {m.tgt.name}")
    maps = _colimit_maps(ms, maps)
    x = maps[0].cod
    data = np.full((len(y), len(x)), q.bottom, dtype=np.int64)
    for m, f in zip(ms, maps):
        for j, u in enumerate(f.table):
            data[:, u] = q.join_table[data[:, u], m.data[:, j]]
    return VMatrix(q, x, y, data)


def fiber_colimit_cocone(ms, maps=None):
    c = fiber_colimit(ms, maps)
    iy = Function.identity(c.tgt)
    return [cell_check(f, iy, m, c) for m, f in zip(ms, _colimit_maps(ms, maps))]
