from itertools import product

import numpy as np
import pytest

from qsweedler import (
    BoundaryError, Cofunctor, Function, Functor, LawViolation, QCocategory, QComodule, QModule, VMatrix,
    cofree_comodule, corestrict_scalars, free_module, hcompose, identity_matrix, mod_morphism_check,
    pullback_category, pushforward_cocategory, restrict_scalars, source_reindex, tensor_modcomod,
    verify_category, verify_comodule, verify_module,
)
from qsweedler.cat import tensor_pair, unit_category
from qsweedler.enumeration import carrier, categories, cocategories, comodules, enumerate_structures, modules
from qsweedler.mod import diagonal, fixed_domain_tensor, unit_domain_tensor, unit_module
from qsweedler.vmat import pair_map

from conftest import fs


def chain(q):
    x = fs("X", "lo", "hi")
    return verify_category(VMatrix.from_entries(
        q, x, x, {("lo", "lo"): "unit", ("hi", "hi"): "unit", ("hi", "lo"): "unit"})).value


def right_increasing(rel, order):
    # (x', u) in M and x' <= x  implies  (x, u) in M
    n, m = rel.shape
    return all(rel[x, u] for x, xp, u in product(range(n), range(n), range(m)) if order[x, xp] and rel[xp, u])


def test_bool_modules_are_right_increasing(boolq):
    u = carrier("U", 2)
    total = 0
    for a in categories(boolq, carrier("X", 2)):
        accepted = {m.mat.data.tobytes() for m in modules(a, u)}
        for data in product(range(2), repeat=4):
            arr = np.array(data, dtype=np.int64).reshape(2, 2)
            assert (arr.tobytes() in accepted) == right_increasing(arr, a.hom.data)
            assert verify_module(a, VMatrix(boolq, u, a.objects, arr)).ok == right_increasing(arr, a.hom.data)
        total += len(accepted)
    assert total == 38
    assert sum(1 for _ in enumerate_structures("module", boolq, (2, 2))) == 38
    assert sum(1 for _ in enumerate_structures("comodule", boolq, (2, 2))) == 25


def test_module_examples(boolq, luk3):
    x, u = fs("X", "x", "x'"), fs("U", "u")
    discrete = verify_category(identity_matrix(boolq, x)).value
    for data in product(range(2), repeat=2):
        assert verify_module(discrete, VMatrix(boolq, u, x, data)).ok
    codiscrete = verify_category(VMatrix.top(luk3, x, x)).value
    m = VMatrix.from_entries(luk3, u, x, {("x'", "u"): "1/2", ("x", "u"): "0"})
    report = verify_module(codiscrete, m)
    assert not report.ok and report.failures[0].witness == ("x", "x'", "u")
    with pytest.raises(LawViolation):
        QModule(codiscrete, m)
    with pytest.raises(BoundaryError):
        verify_module(codiscrete, VMatrix.bottom(luk3, u, u))


def test_comodule_examples(luk3, boolq):
    z, v = fs("Z", "z"), fs("V", "v")
    c = QCocategory(luk3, z, ["1"])
    for w in luk3.elements:
        assert verify_comodule(c, VMatrix.from_entries(luk3, v, z, {("z", "v"): w})).ok
    zero = QCocategory(luk3, z, ["0"])
    report = verify_comodule(zero, VMatrix.from_entries(luk3, v, z, {("z", "v"): "1/2"}))
    assert report.failures[0].law == "coaction"


def test_free_module(boolq):
    a = chain(boolq)
    u = fs("U", "u1", "u2")
    m = VMatrix.from_entries(boolq, u, a.objects, {("lo", "u1"): "1"})
    f = free_module(a, m)
    # the upward saturation of the relation
    assert f.mat.entries() == {("lo", "u1"): "1", ("hi", "u1"): "1", ("lo", "u2"): "0", ("hi", "u2"): "0"}
    assert verify_module(a, f.mat).ok
    discrete = verify_category(identity_matrix(boolq, a.objects)).value
    assert free_module(discrete, m).mat == m
    empty = VMatrix.bottom(boolq, fs("E"), a.objects)
    assert free_module(a, empty).mat.shape == (2, 0)


def test_cofree_comodule(boolq):
    z, v = fs("Z", "a", "b"), fs("V", "v")
    k = VMatrix.top(boolq, v, z)
    c = QCocategory(boolq, z, ["1", "0"])
    assert cofree_comodule(c, k).mat.data.tolist() == [[1], [0]]
    assert (cofree_comodule(QCocategory(boolq, z, "00"), k).mat.data == 0).all()
    assert verify_comodule(c, cofree_comodule(c, k).mat).ok


def test_restrict_scalars(boolq):
    a = chain(boolq)
    t = fs("T", "t")
    n = QModule(a, VMatrix.from_entries(boolq, t, a.objects, {("hi", "t"): "1"}))
    ident = Functor(a, a, Function.identity(a.objects))
    assert restrict_scalars(ident, n) == n
    w = fs("W", "p", "q", "r")
    const = Function.constant(w, a.objects, "hi")
    back = restrict_scalars(Functor(pullback_category(const, a), a, const), n)
    assert back.mat.data.tolist() == [[1], [1], [1]]
    assert verify_module(back.over, back.mat).ok
    # a monotone map from a three-chain
    three = fs("C", "0", "1", "2")
    order = VMatrix(boolq, three, three, [[1 if i >= j else 0 for j in range(3)] for i in range(3)])
    src = verify_category(order).value
    mono = Function(three, a.objects, [0, 0, 1])
    pulled = restrict_scalars(Functor(src, a, mono), n)
    assert verify_module(src, pulled.mat).ok
    with pytest.raises(Exception):
        restrict_scalars(Functor(src, a, Function(three, a.objects, [1, 0, 0])), n)


def test_corestrict_scalars(boolq):
    z, v = fs("Z", "a", "b"), fs("V", "v1", "v2")
    c = QCocategory(boolq, z, "11")
    k = QComodule(c, VMatrix.from_entries(boolq, v, z, {("a", "v1"): "1", ("b", "v2"): "1"}))
    assert corestrict_scalars(Cofunctor(c, c, Function.identity(z)), k) == k
    pt = fs("P", "p", "q")
    f = Function.constant(z, pt, "p")
    d = pushforward_cocategory(f, c)
    out = corestrict_scalars(Cofunctor(c, d, f), k)
    assert out.mat.data.tolist() == [[1, 1], [0, 0]]
    assert verify_comodule(d, out.mat).ok


def test_source_reindex(godel3):
    a = list(categories(godel3, carrier("X", 2)))[5]
    n = list(modules(a, fs("U", "u1", "u2")))[-3]
    assert source_reindex(Function.identity(n.src), n) == n
    const = source_reindex(Function.constant(fs("W", "w1", "w2", "w3"), n.src, "u2"), n)
    assert (const.mat.data == n.mat.data[:, [1]]).all()
    empty = source_reindex(Function(fs("E"), n.src, []), n)
    assert empty.mat.shape == (2, 0) and verify_module(a, empty.mat).ok


def test_morphism_check(boolq):
    a = chain(boolq)
    t = fs("T", "t")
    n = QModule(a, VMatrix.from_entries(boolq, t, a.objects, {("hi", "t"): "1"}))
    assert mod_morphism_check(Function.identity(a.objects), Function.identity(t), n, n)
    assert not mod_morphism_check(Function(a.objects, a.objects, [1, 0]), Function.identity(t), n, n)
    # the counit of restriction of scalars
    f = Function.constant(fs("W", "w"), a.objects, "hi")
    alpha = Functor(pullback_category(f, a), a, f)
    assert mod_morphism_check(alpha, Function.identity(t), restrict_scalars(alpha, n), n)


def test_tensor_modules(boolq):
    a = chain(boolq)
    t = fs("T", "t")
    n = QModule(a, VMatrix.from_entries(boolq, t, a.objects, {("hi", "t"): "1"}))
    one = unit_category(boolq)
    unit = QModule(one, identity_matrix(boolq, one.objects))
    tn = tensor_modcomod(n, unit)
    assert np.array_equal(tn.mat.data, n.mat.data)
    nn = tensor_modcomod(n, n)
    assert verify_module(nn.over, nn.mat).ok
    assert nn.mat.data[:, 0].tolist() == [0, 0, 0, 1]


def test_liftings_commute_with_tensor(boolq):
    a = chain(boolq)
    t = fs("T", "t")
    n = QModule(a, VMatrix.from_entries(boolq, t, a.objects, {("hi", "t"): "1"}))
    w = fs("W", "p", "q")
    f = Function(w, a.objects, [1, 0])
    alpha = Functor(pullback_category(f, a), a, f)
    both = Functor(tensor_pair(alpha.src, alpha.src), tensor_pair(a, a), pair_map(f, f))
    lhs = restrict_scalars(both, tensor_modcomod(n, n))
    rhs = tensor_modcomod(restrict_scalars(alpha, n), restrict_scalars(alpha, n))
    assert lhs.mat.data.tolist() == rhs.mat.data.tolist()


def test_unit_and_fixed_domain_tensors(boolq):
    a = chain(boolq)
    pt = fs("1", "*")
    up = QModule(a, VMatrix.from_entries(boolq, pt, a.objects, {("hi", "*"): "1"}))
    one = unit_category(boolq)
    unit = QModule(one, identity_matrix(boolq, pt))
    assert np.array_equal(unit_domain_tensor(up, unit).mat.data, up.mat.data)
    both = unit_domain_tensor(up, up)
    assert both.mat.data[:, 0].tolist() == [0, 0, 0, 1]
    zero = QModule(a, VMatrix.bottom(boolq, pt, a.objects))
    assert (unit_domain_tensor(zero, up).mat.data == 0).all()
    with pytest.raises(BoundaryError):
        unit_domain_tensor(QModule(a, VMatrix.bottom(boolq, fs("U", "a", "b"), a.objects)), up)

    u = fs("U", "u1", "u2")
    m = QModule(a, VMatrix.from_entries(boolq, u, a.objects, {("hi", "u1"): "1", ("lo", "u2"): "1",
                                                              ("hi", "u2"): "1"}))
    j = unit_module(boolq, one, u)
    assert np.array_equal(fixed_domain_tensor(m, j).mat.data, m.mat.data)
    fixed = fixed_domain_tensor(m, m)
    via = source_reindex(diagonal(u), tensor_modcomod(m, m))
    assert np.array_equal(fixed.mat.data, via.mat.data)
    empty = QModule(a, VMatrix.bottom(boolq, fs("E"), a.objects))
    assert fixed_domain_tensor(empty, empty).mat.shape == (4, 0)


def test_outputs_are_modules(godel3):
    for a in list(categories(godel3, carrier("X", 2)))[::3]:
        for m in list(modules(a, carrier("U", 1)))[::2]:
            assert verify_module(a, free_module(a, m.mat).mat).ok
            aa = tensor_modcomod(m, m)
            assert verify_module(aa.over, aa.mat).ok
    for c in cocategories(godel3, carrier("Z", 2)):
        for k in list(comodules(c, carrier("V", 1)))[::3]:
            kk = tensor_modcomod(k, k)
            assert verify_comodule(kk.over, kk.mat).ok


def test_double_reindex(godel3):
    b = list(categories(godel3, carrier("Y", 2)))[7]
    n = list(modules(b, carrier("T", 1)))[-1]
    f = Function(carrier("X", 3), b.objects, [1, 0, 1])
    a = pullback_category(f, b)
    g = Function(carrier("W", 2), a.objects, [2, 0])
    a1 = pullback_category(g, a)
    alpha, beta = Functor(a, b, f), Functor(a1, a, g)
    assert restrict_scalars(beta.then(alpha), n) == restrict_scalars(beta, restrict_scalars(alpha, n))


def test_hcompose_is_the_free_action(boolq):
    a = chain(boolq)
    m = VMatrix.from_entries(boolq, fs("U", "u"), a.objects, {("lo", "u"): "1"})
    assert free_module(a, m).mat == hcompose(a.hom, m)
