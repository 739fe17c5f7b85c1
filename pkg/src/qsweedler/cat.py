"""Enriched categories and cocategories: monads and comonads in V-Mat.

A category on ``X`` is an endo-matrix ``A`` with ``e <= A(x, x)`` and
``A(z, y) (x) A(y, x) <= A(z, x)``; the matrix is read ``A(target, source)``.

A cocategory is stored in normal form as one weight ``c_z`` per object.
The counit ``C => 1_Z`` forces every off-diagonal entry to bottom and the
diagonal below the unit; cocomposition ``C => C o C`` then reduces to
``c_z <= c_z (x) c_z``.
"""
import numpy as np

from .errors import BoundaryError, Failure, LawReport, LawViolation, ValidationError
from .vmat import (
    Function, VMatrix, cell_check, compose_data, coproduct_set, identity_matrix,
    product_set, singleton, tensor_matrices,
)


class QCategory:

    __slots__ = ("hom",)

    def __init__(self, hom, *, check=True):
        if check:
            report = verify_category(hom)
            if not report.ok:
                raise LawViolation(report)
        self.hom = hom

    @property
    def objects(self):
        return self.hom.src

    @property
    def q(self):
        return self.hom.q

    def __eq__(self, other):
        if not isinstance(other, QCategory):
            return NotImplemented
        return self.hom == other.hom

    __hash__ = None

    def __repr__(self):
        return f"QCategory(on {self.objects.name}, {self.hom!r})"


class QCocategory:

    __slots__ = ("q", "objects", "weights")

    def __init__(self, q, objects, weights, *, check=True):
        weights = np.array([q.index(w) for w in weights], dtype=np.int64)
        if len(weights) != len(objects):
            raise ValidationError(f"need one weight per element of {objects.name}")
        weights.setflags(write=False)
        self.q, self.objects, self.weights = q, objects, weights
        if check:
            report = _cocategory_report(q, objects, weights)
            if not report.ok:
                raise LawViolation(report)

    @classmethod
    def from_mapping(cls, q, objects, mapping, default=None):
        fill = q.bottom if default is None else q.index(default)
        weights = [fill] * len(objects)
        for z, w in dict(mapping).items():
            weights[objects.index(z)] = q.index(w)
        return cls(q, objects, weights)

    @classmethod
    def from_matrix(cls, m):
        """Read a comonad given as a full endo-matrix, rejecting off-diagonal mass."""
        if not m.is_endo():
            raise BoundaryError("a cocategory needs an endo-matrix")
        off = m.data.copy()
        np.fill_diagonal(off, m.q.bottom)
        bad = np.argwhere(off != m.q.bottom)
        if len(bad):
            y, x = bad[0]
            report = LawReport(f"cocategory on {m.src.name}", [Failure(
                "counit", (m.tgt.elements[y], m.src.elements[x]),
                "off-diagonal entries must be bottom")])
            raise LawViolation(report)
        return cls(m.q, m.src, np.diagonal(m.data))

    @property
    def matrix(self):
        data = np.full((len(self.objects),) * 2, self.q.bottom, dtype=np.int64)
        np.fill_diagonal(data, self.weights)
        return VMatrix(self.q, self.objects, self.objects, data)

    def weight(self, z):
        return self.q.label(self.weights[self.objects.index(z)])

    def __eq__(self, other):
        if not isinstance(other, QCocategory):
            return NotImplemented
        return (self.q == other.q and self.objects == other.objects
                and np.array_equal(self.weights, other.weights))

    __hash__ = None

    def __repr__(self):
        body = ", ".join(f"{z}: {self.q.label(w)}" for z, w in zip(self.objects, self.weights))
        return f"QCocategory(on {self.objects.name}, {{{body}}})"


def verify_category(m):
    """Unit and composition laws for an endo-matrix; the report carries a witness on failure."""
    if not m.is_endo():
        raise BoundaryError(f"a category needs an endo-matrix, got {m.src.name} -|-> {m.tgt.name}")
    q, a = m.q, m.data
    x = m.src.elements
    report = LawReport(f"category on {m.src.name}")
    diag = np.diagonal(a)
    bad = np.flatnonzero(~q.leq_table[q.unit, diag])
    if len(bad):
        report.failures.append(Failure("unit", (x[bad[0]],), f"e is not below A({x[bad[0]]},{x[bad[0]]})"))
    comp = compose_data(q, a, a)
    bad = np.argwhere(~q.leq_table[comp, a])
    if len(bad):
        z, xi = bad[0]
        ys = np.flatnonzero(~q.leq_table[q.tensor_table[a[z, :], a[:, xi]], a[z, xi]])
        y = ys[0]
        report.failures.append(Failure(
            "composition", (x[z], x[y], x[xi]),
            f"A({x[z]},{x[y]}) * A({x[y]},{x[xi]}) = {q.label(q.tensor_table[a[z, y], a[y, xi]])} "
            f"exceeds A({x[z]},{x[xi]}) = {q.label(a[z, xi])}"))
    if report.ok:
        report.value = QCategory(m, check=False)
    return report


def _cocategory_report(q, objects, weights):
    report = LawReport(f"cocategory on {objects.name}")
    below_unit = q.leq_table[weights, q.unit]
    idem = q.leq_table[weights, q.tensor_table[weights, weights]]
    for law, ok, detail in (("counit", below_unit, "weight exceeds the unit"),
                            ("cocomposition", idem, "weight exceeds its tensor square")):
        bad = np.flatnonzero(~ok)
        if len(bad):
            z = bad[0]
            report.failures.append(Failure(law, (objects.elements[z],), f"{detail}: c = {q.label(weights[z])}"))
    return report


def verify_cocategory(q, objects, weights):
    """Accept iff every weight is below the unit and below its own tensor square."""
    if isinstance(weights, dict):
        weights = [weights.get(z, q.bottom) for z in objects]
    weights = np.array([q.index(w) for w in weights], dtype=np.int64)
    report = _cocategory_report(q, objects, weights)
    if report.ok:
        report.value = QCocategory(q, objects, weights, check=False)
    return report


def morphism_check(f, src, tgt):
    """Is ``f`` a functor ``src -> tgt`` (categories) or a cofunctor (cocategories)?"""
    if isinstance(src, QCategory) and isinstance(tgt, QCategory):
        return cell_check(f, f, src.hom, tgt.hom).verdict
    if isinstance(src, QCocategory) and isinstance(tgt, QCocategory):
        if f.dom != src.objects or f.cod != tgt.objects:
            raise BoundaryError("cofunctor map does not fit the object sets")
        return bool(src.q.leq_table[src.weights, tgt.weights[list(f.table)]].all())
    raise ValidationError("morphism_check needs two categories or two cocategories")


class Functor:
    """A function on objects that has been checked to be a functor."""

    __slots__ = ("src", "tgt", "f")

    def __init__(self, src, tgt, f):
        if f.dom != src.objects or f.cod != tgt.objects:
            raise BoundaryError("functor map does not fit the object sets")
        if not morphism_check(f, src, tgt):
            raise ValidationError(f"{f!r} is not a functor")
        self.src, self.tgt, self.f = src, tgt, f

    def then(self, other):
        return type(self)(self.src, other.tgt, self.f.then(other.f))


class Cofunctor(Functor):
    __slots__ = ()


def pullback_category(f, b):
    """Cartesian lift of ``f: X -> Y`` to ``B``: hom ``(x, x') = B(f x, f x')``."""
    if f.cod != b.objects:
        raise BoundaryError(f"{f.cod.name} is not the object set of the category")
    data = b.hom.data[np.ix_(f.table, f.table)]
    return QCategory(VMatrix(b.q, f.dom, f.dom, data), check=False)


def pushforward_cocategory(f, c):
    """Cocartesian lift of ``f: Z -> V`` to ``C``: ``d_v = V_{f z = v} c_z``."""
    if f.dom != c.objects:
        raise BoundaryError(f"{f.dom.name} is not the object set of the cocategory")
    q = c.q
    weights = np.full(len(f.cod), q.bottom, dtype=np.int64)
    for z, v in enumerate(f.table):
        weights[v] = q.join_table[weights[v], c.weights[z]]
    return QCocategory(q, f.cod, weights, check=False)


def tensor_pair(a, b):
    """Tensor of two categories or two cocategories on the product carrier."""
    if isinstance(a, QCategory) and isinstance(b, QCategory):
        return QCategory(tensor_matrices(a.hom, b.hom), check=False)
    if isinstance(a, QCocategory) and isinstance(b, QCocategory):
        if a.q != b.q:
            raise ValidationError("cocategories over different quantales")
        w = a.q.tensor_table[a.weights[:, None], b.weights[None, :]].reshape(-1)
        return QCocategory(a.q, product_set(a.objects, b.objects), w, check=False)
    raise ValidationError("tensor_pair needs two categories or two cocategories")


def unit_category(q, obj=None):
    obj = obj or singleton()
    return QCategory(identity_matrix(q, obj), check=False)


def unit_cocategory(q, obj=None):
    obj = obj or singleton()
    return QCocategory(q, obj, [q.unit], check=False)


def kleene_star(g):
    """Least ``T >= 1 v G`` closed under composition, and the number of doubling rounds."""
    if not g.is_endo():
        raise BoundaryError("star closure needs an endo-matrix")
    q = g.q
    t = q.join_table[identity_matrix(q, g.src).data, g.data]
    rounds = 0
    while True:
        nxt = q.join_table[t, compose_data(q, t, t)]
        if np.array_equal(nxt, t):
            return VMatrix(q, g.src, g.tgt, t), rounds
        t = nxt
        rounds += 1


def star_closure(g):
    """The free category on a graph ``G``: least category containing it entrywise."""
    return QCategory(kleene_star(g)[0], check=False)


def product_categories(a, b):
    """Categorical product: ``hom((x,y),(x',y')) = A(x,x') /\\ B(y,y')``."""
    q = a.q
    data = q.meet_table[a.hom.data[:, None, :, None], b.hom.data[None, :, None, :]]
    n = len(a.objects) * len(b.objects)
    carrier = product_set(a.objects, b.objects)
    return QCategory(VMatrix(q, carrier, carrier, data.reshape(n, n)), check=False)


def coproduct_cocategories(c, d):
    """Coproduct of cocategories: the weight families side by side."""
    if c.q != d.q:
        raise ValidationError("cocategories over different quantales")
    return QCocategory(c.q, coproduct_set([c.objects, d.objects]),
                       np.concatenate([c.weights, d.weights]), check=False)


def binary_limits(kind, a, b):
    """Products of categories or coproducts of cocategories, created by the underlying matrices."""
    if kind == "category":
        if not (isinstance(a, QCategory) and isinstance(b, QCategory)):
            raise ValidationError("product needs two categories")
        return product_categories(a, b)
    if kind == "cocategory":
        if not (isinstance(a, QCocategory) and isinstance(b, QCocategory)):
            raise ValidationError("coproduct needs two cocategories")
        return coproduct_cocategories(a, b)
    raise ValidationError(f"unknown structure kind {kind!r}")


def projections(a, b):
    carrier = product_set(a.objects, b.objects)
    na, nb = len(a.objects), len(b.objects)
    return (Function(carrier, a.objects, [i for i in range(na) for _ in range(nb)]),
            Function(carrier, b.objects, [j for _ in range(na) for j in range(nb)]))


def terminal_category(q, obj=None):
    obj = obj or singleton()
    return QCategory(VMatrix.top(q, obj, obj), check=False)

