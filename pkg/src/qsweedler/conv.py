"""Convolution structures induced by the internal hom of V-Mat.

``H(C, A)`` for a cocategory ``C`` on ``Z`` and a category ``A`` on ``X``
is a category on the function set ``X^Z``; likewise ``H(K, M)`` turns a
comodule and a module into a module over it.  Internal homs of
cocategories and comodules are the greatest structures satisfying the
relevant inequalities and are computed by descending iteration.
"""
import numpy as np

from .cat import QCategory, QCocategory, tensor_pair
from .errors import InvariantError
from .mod import QComodule, QModule
from .quantale import descending_fixpoint
from . import config
from .vmat import exp_set, function_index, function_table, internal_hom


def convolution_category(c, a):
    """``H(C, A)(s, k) = /\\_z [c_z, A(s z, k z)]`` on ``X^Z``."""
    h = internal_hom(c.matrix, a.hom)
    return QCategory(h, check=False)


def convolution_module(k, m):
    """``H(K, M)(t, s) = /\\_{z,v} [K(z, v), M(t z, s v)]``, a module over ``H(C, A)``."""
    over = convolution_category(k.over, m.over)
    return QModule(over, internal_hom(k.mat, m.mat), check=False)


def subunital_gfp(q, bound):
    """Greatest ``x`` with ``x <= e``, ``x <= bound`` and ``x <= x (x) x``, elementwise.

    Returns the values and the per-position number of descending steps.
    """
    cap = q.meet_table[q.unit, np.asarray(bound, dtype=np.int64)]
    return descending_fixpoint(lambda x: q.meet_table[cap, q.tensor_table[x, x]],
                               np.full(cap.shape, q.top, dtype=np.int64))


def coaction_gfp(q, bound, weight):
    """Greatest ``x`` with ``x <= bound`` and ``x <= weight (x) x``, elementwise."""
    bound = np.asarray(bound, dtype=np.int64)
    return descending_fixpoint(lambda x: q.meet_table[bound, q.tensor_table[weight, x]],
                               np.full(bound.shape, q.top, dtype=np.int64))


def _hom_weights(c, d):
    q = c.q
    z, w = c.objects, d.objects
    config.check_cap(len(w) ** len(z), f"{w.name}^{z.name}")
    rows = function_table(z, w)
    h = np.full(len(rows), q.top, dtype=np.int64)
    for zi in range(len(z)):
        h = q.meet_table[h, q.res_table[c.weights[zi], d.weights[rows[:, zi]]]]
    return subunital_gfp(q, h)


def hom_cocategories(c, d):
    """The internal hom of cocategories, a cocategory on ``W^Z``."""
    weights, _ = _hom_weights(c, d)
    return QCocategory(c.q, exp_set(c.objects, d.objects), weights, check=False)


def hom_comodules(k, l):
    """The internal hom of comodules, over :func:`hom_cocategories` with source ``S^V``."""
    over = hom_cocategories(k.over, l.over)
    b = internal_hom(k.mat, l.mat)
    q = b.q
    data, _ = coaction_gfp(q, b.data, over.weights[:, None])
    return QComodule(over, b.with_data(data), check=False)


def curry_check(c, d, b):
    """``H(C, H(D, B))`` and ``H(C (x) D, B)`` agree under the currying bijection."""
    nested = convolution_category(c, convolution_category(d, b))
    flat = convolution_category(tensor_pair(c, d), b)
    z, w, y = c.objects, d.objects, b.objects
    # nested objects are functions Z -> Y^W; rewrite each as a function Z*W -> Y
    outer = function_table(z, exp_set(w, y))
    inner = function_table(w, y)
    rows = inner[outer].reshape(len(outer), len(z) * len(w))
    perm = function_index(rows, len(y))
    if not np.array_equal(nested.hom.data, flat.hom.data[np.ix_(perm, perm)]):
        bad = np.argwhere(nested.hom.data != flat.hom.data[np.ix_(perm, perm)])[0]
        raise InvariantError(
            f"currying fails at ({nested.objects.elements[bad[0]]}, {nested.objects.elements[bad[1]]})")
    return True


def evaluation_check(c, a):
    """The counit inequality ``H(C,A)(s, k) (x) c_z <= A(s z, k z)`` for every ``s, k, z``."""
    h = convolution_category(c, a)
    q = a.q
    rows = function_table(c.objects, a.objects)
    for zi in range(len(c.objects)):
        lhs = q.tensor_table[h.hom.data, c.weights[zi]]
        rhs = a.hom.data[rows[:, zi][:, None], rows[:, zi][None, :]]
        if not q.leq_table[lhs, rhs].all():
            return False
    return True

