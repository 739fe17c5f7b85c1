"""Left modules over categories and left comodules over cocategories.

A module over ``A`` (objects ``X``) with source ``U`` is a matrix
``M: U -|-> X`` with ``A(x, x') (x) M(x', u) <= M(x, u)``.  A comodule over
``C`` (objects ``Z``) with source ``V`` is ``K: V -|-> Z`` with
``K(z, v) <= c_z (x) K(z, v)``.  In a poset the remaining module axioms
hold automatically, so these inequalities are the whole structure.
"""
import numpy as np

from .cat import Cofunctor, Functor, morphism_check, tensor_pair
from .errors import BoundaryError, Failure, LawReport, LawViolation, ValidationError
from .vmat import (
    Function, VMatrix, cell_check, compose_data, hcompose, product_set, reindex, tensor_matrices,
)


class QModule:

    __slots__ = ("over", "mat")

    def __init__(self, over, mat, *, check=True):
        if check:
            report = verify_module(over, mat)
            if not report.ok:
                raise LawViolation(report)
        self.over, self.mat = over, mat

    @property
    def src(self):
        return self.mat.src

    def __eq__(self, other):
        if not isinstance(other, QModule):
            return NotImplemented
        return self.over == other.over and self.mat == other.mat

    __hash__ = None

    def __repr__(self):
        return f"QModule({self.mat!r} over {self.over.objects.name})"


class QComodule:

    __slots__ = ("over", "mat")

    def __init__(self, over, mat, *, check=True):
        if check:
            report = verify_comodule(over, mat)
            if not report.ok:
                raise LawViolation(report)
        self.over, self.mat = over, mat

    @property
    def src(self):
        return self.mat.src

    def __eq__(self, other):
        if not isinstance(other, QComodule):
            return NotImplemented
        return self.over == other.over and self.mat == other.mat

    __hash__ = None

    def __repr__(self):
        return f"QComodule({self.mat!r} over {self.over.objects.name})"


def verify_module(a, m):
    if m.tgt != a.objects:
        raise BoundaryError(f"module target {m.tgt.name} is not the object set {a.objects.name}")
    q = m.q
    report = LawReport(f"module {m.src.name} -|-> {m.tgt.name}")
    acted = compose_data(q, a.hom.data, m.data)
    bad = np.argwhere(~q.leq_table[acted, m.data])
    if len(bad):
        x, u = bad[0]
        xs = np.flatnonzero(~q.leq_table[q.tensor_table[a.hom.data[x, :], m.data[:, u]], m.data[x, u]])
        xp = xs[0]
        obj = m.tgt.elements
        report.failures.append(Failure(
            "action", (obj[x], obj[xp], m.src.elements[u]),
            f"A({obj[x]},{obj[xp]}) * M({obj[xp]},{m.src.elements[u]}) exceeds M({obj[x]},{m.src.elements[u]})"))
    else:
        report.value = QModule(a, m, check=False)
    return report


def verify_comodule(c, k):
    if k.tgt != c.objects:
        raise BoundaryError(f"comodule target {k.tgt.name} is not the object set {c.objects.name}")
    q = k.q
    report = LawReport(f"comodule {k.src.name} -|-> {k.tgt.name}")
    coacted = q.tensor_table[c.weights[:, None], k.data]
    bad = np.argwhere(~q.leq_table[k.data, coacted])
    if len(bad):
        z, v = bad[0]
        report.failures.append(Failure(
            "coaction", (k.tgt.elements[z], k.src.elements[v]),
            f"K = {q.label(k.data[z, v])} exceeds c * K = {q.label(coacted[z, v])}"))
    else:
        report.value = QComodule(c, k, check=False)
    return report


def mod_morphism_check(functor, source_map, m, n):
    """Is ``(functor, source_map)`` a morphism of modules ``m -> n``?

    The functor acts on the objects of ``m.over``; ``source_map`` goes
    ``m.src -> n.src``.  With posetal 2-cells the compatibility square with
    the actions commutes automatically, so the cell and the functor verdict
    are all there is.
    """
    f = functor.f if isinstance(functor, Functor) else functor
    return (morphism_check(f, m.over, n.over)
            and cell_check(source_map, f, m.mat, n.mat).verdict)


def free_module(a, m):
    """``A o M`` with the action given by composition in ``A``."""
    if m.tgt != a.objects:
        raise BoundaryError(f"{m.tgt.name} is not the object set of the category")
    return QModule(a, hcompose(a.hom, m), check=False)


def cofree_comodule(c, k):
    """``c_z (x) K(z, v)``: the largest comodule below ``K``."""
    if k.tgt != c.objects:
        raise BoundaryError(f"{k.tgt.name} is not the object set of the cocategory")
    return QComodule(c, k.with_data(c.q.tensor_table[c.weights[:, None], k.data]), check=False)


def _unwrap(alpha, kind):
    if not isinstance(alpha, kind):
        raise ValidationError(f"expected a {kind.__name__}, got {type(alpha).__name__}")
    return alpha.f


def restrict_scalars(alpha, n):
    """Pull ``N`` over ``B`` back along a functor ``A -> B``: ``M(x, t) = N(f x, t)``."""
    f = _unwrap(alpha, Functor)
    if not n.over == alpha.tgt:
        raise BoundaryError("module is not over the functor's target")
    return QModule(alpha.src, reindex(n.mat, f, Function.identity(n.src)), check=False)


def corestrict_scalars(alpha, k):
    """Push ``K`` over ``C`` forward along a cofunctor ``C -> D``: ``K'(w, v) = V_{f z = w} K(z, v)``."""
    f = _unwrap(alpha, Cofunctor)
    if not k.over == alpha.src:
        raise BoundaryError("comodule is not over the cofunctor's source")
    q = k.mat.q
    data = np.full((len(f.cod), len(k.src)), q.bottom, dtype=np.int64)
    for z, w in enumerate(f.table):
        data[w] = q.join_table[data[w], k.mat.data[z]]
    return QComodule(alpha.tgt, VMatrix(q, k.src, f.cod, data), check=False)


def source_reindex(f, n):
    """Precompose the source: ``N'(y, u') = N(y, f u')`` for ``f: U' -> U``."""
    if f.cod != n.src:
        raise BoundaryError(f"{f.cod.name} is not the source of the structure")
    mat = reindex(n.mat, Function.identity(n.mat.tgt), f)
    return type(n)(n.over, mat, check=False)


def tensor_modcomod(m, n):
    """Tensor two modules (over ``A (x) B``) or two comodules (over ``C (x) D``)."""
    if type(m) is not type(n) or not isinstance(m, (QModule, QComodule)):
        raise ValidationError("tensor needs two modules or two comodules")
    return type(m)(tensor_pair(m.over, n.over), tensor_matrices(m.mat, n.mat), check=False)


def _unit_source(m):
    if len(m.src) != 1:
        raise BoundaryError(f"{m.src.name} is not a singleton")


def unit_domain_tensor(m, n):
    """Tensor of single-column modules; the result is again single-column."""
    _unit_source(m)
    _unit_source(n)
    mat = tensor_matrices(m.mat, n.mat).relabel(src=m.src)
    return type(m)(tensor_pair(m.over, n.over), mat, check=False)


def fixed_domain_tensor(m, n):
    """``(M (x) M')((x, y), u) = M(x, u) (x) M'(y, u)`` for modules with one source ``U``."""
    if m.src != n.src:
        raise BoundaryError(f"sources differ: {m.src.name} vs {n.src.name}")
    q = m.mat.q
    data = q.tensor_table[m.mat.data[:, None, :], n.mat.data[None, :, :]]
    data = data.reshape(len(m.mat.tgt) * len(n.mat.tgt), len(m.src))
    mat = VMatrix(q, m.src, product_set(m.mat.tgt, n.mat.tgt), data)
    return type(m)(tensor_pair(m.over, n.over), mat, check=False)


def unit_module(q, over, src):
    """``J(*, u) = e``: the unit for :func:`fixed_domain_tensor` over a one-object category."""
    if len(over.objects) != 1:
        raise BoundaryError("the unit module lives over a one-object category")
    return QModule(over, VMatrix(q, src, over.objects, np.full((1, len(src)), q.unit)))


def diagonal(u):
    return Function(u, product_set(u, u), [i * len(u) + i for i in range(len(u))])

