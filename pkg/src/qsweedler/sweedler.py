"""Universal measuring cocategories and comodules, enrichment tensors, and their checks.

For categories ``A`` on ``X`` and ``B`` on ``Y``, the measuring cocategory
``P(A, B)`` lives on ``Y^X``.  Its weight at ``k`` is the greatest ``q`` with
``q <= e``, ``q <= q (x) q`` and ``q (x) A(x, x') <= B(k x, k x')``, i.e. the
largest subunital idempotent through which ``k`` measures ``A`` into ``B``.
``Q(M, N)`` does the same for modules, as a comodule over ``P(A, B)``.

The tensors ``C |> B`` and ``K (/) N`` are built as a free category and a
free module.  Every construction is paired with an exhaustive adjunction
check in :func:`verify_adjunctions`.
"""
from dataclasses import dataclass, field
from itertools import product

import numpy as np

from . import config
from .cat import QCategory, QCocategory, kleene_star
from .conv import (
    coaction_gfp, convolution_category, convolution_module, hom_cocategories, hom_comodules,
    subunital_gfp,
)
from .enumeration import carrier, categories, cocategories, comodules, modules
from .errors import Failure, LawReport, ValidationError
from .mod import QComodule, free_module
from .vmat import exp_set, function_index, function_table, hom_data, internal_hom, tensor_matrices


@dataclass
class MeasuringReport:
    operator: str
    inputs: tuple
    output: object
    steps: dict = field(default_factory=dict)     # index label -> descending/closure steps
    verification: LawReport = None

    @property
    def max_steps(self):
        return max(self.steps.values(), default=0)


def _measuring_bounds(a, b, rows):
    q = a.q
    A, B = a.hom.data, b.hom.data
    m = np.full(len(rows), q.top, dtype=np.int64)
    for x in range(A.shape[0]):
        for xp in range(A.shape[1]):
            m = q.meet_table[m, q.res_table[A[x, xp], B[rows[:, x], rows[:, xp]]]]
    return m


def measure_P_report(a, b):
    q = a.q
    x, y = a.objects, b.objects
    config.check_cap(len(y) ** len(x), f"{y.name}^{x.name}")
    rows = function_table(x, y)
    weights, steps = subunital_gfp(q, _measuring_bounds(a, b, rows))
    carrier_set = exp_set(x, y)
    out = QCocategory(q, carrier_set, weights, check=False)
    return MeasuringReport("P", (a, b), out, dict(zip(carrier_set.elements, steps.tolist())))


def measure_P(a, b):
    """The universal measuring cocategory ``P(A, B)`` on ``Y^X``."""
    return measure_P_report(a, b).output


def comeasure_Q_report(m, n, p=None):
    p = measure_P(m.over, n.over) if p is None else p
    b = internal_hom(m.mat, n.mat)
    data, steps = coaction_gfp(m.mat.q, b.data, p.weights[:, None])
    out = QComodule(p, b.with_data(data), check=False)
    labels = [(k, h) for k in b.tgt for h in b.src]
    return MeasuringReport("Q", (m, n), out, dict(zip(labels, steps.reshape(-1).tolist())))


def comeasure_Q(m, n):
    """The measuring comodule ``Q(M, N)`` over ``P(A, B)`` with source ``T^U``."""
    return comeasure_Q_report(m, n).output


def tensor_cat_report(c, b):
    g = tensor_matrices(c.matrix, b.hom)
    closure, rounds = kleene_star(g)
    return MeasuringReport("tensor_cat", (c, b), QCategory(closure, check=False), {"closure": rounds})


def tensor_cat(c, b):
    """``C |> B`` on ``Z * Y``: the free category on ``c_z (x) B(y, y')`` along the diagonal of ``Z``."""
    return tensor_cat_report(c, b).output


def tensor_mod(k, n):
    """``K (/) N``: the free ``(C |> B)``-module on ``K (x) N``."""
    return free_module(tensor_cat(k.over, n.over), tensor_matrices(k.mat, n.mat))


cotensor_cat = convolution_category
cotensor_mod = convolution_module


# exhaustive adjunction checks

def _leq_all(q, lhs, rhs):
    return q.leq_table[lhs, rhs]


def _transpose_rows(rows, picks, base):
    """For functions ``g: Z -> Y^X`` (rows ``picks`` of indices into ``rows``),
    return the transposes ``X -> Y^Z`` as indices, shape ``(len(picks), |X|)``."""
    table = rows[picks]                     # (nG, |Z|, |X|)
    return function_index(np.swapaxes(table, 1, 2), base)


def _all_maps(n_dom, n_cod):
    config.check_cap(n_cod ** n_dom, "enumerated maps")
    rows = list(product(range(n_cod), repeat=n_dom))
    return np.array(rows, dtype=np.int64).reshape(len(rows), n_dom)


def _fail(report, what, detail):
    report.failures.append(Failure("adjunction", tuple(what), detail))


def _weights_label(c):
    return "{" + ",".join(f"{z}:{c.q.label(w)}" for z, w in zip(c.objects, c.weights)) + "}"


def _adjunction_P(a, b, bound, p):
    q = a.q
    x, y = a.objects, b.objects
    rows = function_table(x, y)
    report = LawReport("adjunction P")
    cases = 0
    for nz in range(bound + 1):
        z = carrier("Z", nz)
        picks = _all_maps(nz, len(rows))
        ghat = _transpose_rows(rows, picks, len(y))
        for c in cocategories(q, z):
            h = convolution_category(c, b).hom.data
            left = _leq_all(q, c.weights[None, :], p.weights[picks]).all(axis=1)
            right = np.ones(len(picks), dtype=bool)
            for xi in range(len(x)):
                for xj in range(len(x)):
                    right &= _leq_all(q, a.hom.data[xi, xj], h[ghat[:, xi], ghat[:, xj]])
            cases += len(picks)
            for i in np.flatnonzero(left != right):
                g = [p.objects.elements[t] for t in picks[i]]
                _fail(report, (_weights_label(c), "g=" + ",".join(g)),
                      f"cofunctor into P is {left[i]} but transposed functor is {right[i]}")
    return report, cases


def _adjunction_Q(m, n, bound, p, qmod):
    q = m.mat.q
    a, b = m.over, n.over
    x, y, u, t = a.objects, b.objects, m.src, n.src
    krows, hrows = function_table(x, y), function_table(u, t)
    Q, M, N = qmod.mat.data, m.mat.data, n.mat.data
    report = LawReport("adjunction Q")
    cases = 0
    for nz in range(bound + 1):
        z = carrier("Z", nz)
        zy = function_table(z, y)
        gp = _all_maps(nz, len(krows))
        ghat = _transpose_rows(krows, gp, len(y))
        for c in cocategories(q, z):
            hcb = hom_data(q, c.matrix.data, b.hom.data, zy, zy)
            cof = _leq_all(q, c.weights[None, :], p.weights[gp]).all(axis=1)
            fun = np.ones(len(gp), dtype=bool)
            for xi in range(len(x)):
                for xj in range(len(x)):
                    fun &= _leq_all(q, a.hom.data[xi, xj], hcb[ghat[:, xi], ghat[:, xj]])
            for nv in range(bound + 1):
                v = carrier("V", nv)
                hp = _all_maps(nv, len(hrows))
                hhat = _transpose_rows(hrows, hp, len(t))
                kmods = list(comodules(c, v))
                K = np.array([k.mat.data for k in kmods], dtype=np.int64).reshape(len(kmods), nz, nv)
                hkn = hom_data(q, K, N, zy, function_table(v, t))      # (nK, |Y^Z|, |T^V|)
                left = np.broadcast_to(cof[None, :, None], (len(kmods), len(gp), len(hp))).copy()
                for zi in range(nz):
                    for vi in range(nv):
                        left &= _leq_all(q, K[:, zi, vi, None, None], Q[gp[:, zi][:, None], hp[:, vi][None, :]])
                right = np.broadcast_to(fun[None, :, None], left.shape).copy()
                for xi in range(len(x)):
                    for ui in range(len(u)):
                        right &= _leq_all(q, M[xi, ui], hkn[:, ghat[:, xi][:, None], hhat[:, ui][None, :]])
                cases += left.size
                for ki, gi, hi in np.argwhere(left != right):
                    _fail(report, (_weights_label(c), repr(kmods[ki].mat), f"g={gp[gi].tolist()}", f"h={hp[hi].tolist()}"),
                          f"comodule map into Q is {left[ki, gi, hi]} but module map into H(K,N) is {right[ki, gi, hi]}")
    return report, cases


def _adjunction_tensor_cat(c, b, bound, tc):
    q = c.q
    z, y = c.objects, b.objects
    T = tc.hom.data
    report = LawReport("adjunction tensor_cat")
    cases = 0
    for ny in range(bound + 1):
        yp = carrier("W", ny)
        maps = _all_maps(len(z) * len(y), ny)                 # f: Z*Y -> W
        # transpose f~: Y -> W^Z, f~(y)(z) = f(z, y)
        table = maps.reshape(len(maps), len(z), len(y))
        ftil = function_index(np.swapaxes(table, 1, 2), ny)
        for bp in categories(q, yp):
            B2 = bp.hom.data
            h = convolution_category(c, bp).hom.data
            left = np.ones(len(maps), dtype=bool)
            for i in range(T.shape[0]):
                for j in range(T.shape[1]):
                    left &= _leq_all(q, T[i, j], B2[maps[:, i], maps[:, j]])
            right = np.ones(len(maps), dtype=bool)
            for yi in range(len(y)):
                for yj in range(len(y)):
                    right &= _leq_all(q, b.hom.data[yi, yj], h[ftil[:, yi], ftil[:, yj]])
            cases += len(maps)
            for i in np.flatnonzero(left != right):
                _fail(report, (repr(bp.hom), f"f={maps[i].tolist()}"),
                      f"functor out of the tensor is {left[i]} but transposed functor is {right[i]}")
    return report, cases


def _adjunction_tensor_mod(k, n, bound, tm):
    q = k.mat.q
    c, b = k.over, n.over
    z, y, v, t = c.objects, b.objects, k.src, n.src
    TC, TM = tm.over.hom.data, tm.mat.data
    report = LawReport("adjunction tensor_mod")
    cases = 0
    for ny in range(bound + 1):
        yp = carrier("W", ny)
        fmaps = _all_maps(len(z) * len(y), ny)
        ftil = function_index(np.swapaxes(fmaps.reshape(len(fmaps), len(z), len(y)), 1, 2), ny)
        for bp in categories(q, yp):
            B2 = bp.hom.data
            hcb = convolution_category(c, bp).hom.data
            fun_left = np.ones(len(fmaps), dtype=bool)
            for i in range(TC.shape[0]):
                for j in range(TC.shape[1]):
                    fun_left &= _leq_all(q, TC[i, j], B2[fmaps[:, i], fmaps[:, j]])
            fun_right = np.ones(len(fmaps), dtype=bool)
            for yi in range(len(y)):
                for yj in range(len(y)):
                    fun_right &= _leq_all(q, b.hom.data[yi, yj], hcb[ftil[:, yi], ftil[:, yj]])
            for nt in range(bound + 1):
                tp = carrier("S", nt)
                smaps = _all_maps(len(v) * len(t), nt)              # sigma: V*T -> S
                stil = function_index(np.swapaxes(smaps.reshape(len(smaps), len(v), len(t)), 1, 2), nt)
                nmods = list(modules(bp, tp))
                N2 = np.array([x.mat.data for x in nmods], dtype=np.int64).reshape(len(nmods), ny, nt)
                hkn = hom_data(q, k.mat.data, N2, function_table(z, yp), function_table(v, tp))
                left = np.broadcast_to(fun_left[None, :, None], (len(nmods), len(fmaps), len(smaps))).copy()
                for i in range(TM.shape[0]):
                    for j in range(TM.shape[1]):
                        left &= _leq_all(q, TM[i, j], N2[:, fmaps[:, i][:, None], smaps[:, j][None, :]])
                right = np.broadcast_to(fun_right[None, :, None], left.shape).copy()
                for yi in range(len(y)):
                    for ti in range(len(t)):
                        right &= _leq_all(q, n.mat.data[yi, ti],
                                          hkn[:, ftil[:, yi][:, None], stil[:, ti][None, :]])
                cases += left.size
                for ni, fi, si in np.argwhere(left != right):
                    _fail(report, (repr(nmods[ni].mat), f"f={fmaps[fi].tolist()}", f"s={smaps[si].tolist()}"),
                          f"module map out of the tensor is {left[ni, fi, si]} but transposed map is {right[ni, fi, si]}")
    return report, cases


def _adjunction_hom_cocat(c, d, bound, hom):
    q = c.q
    z, w = c.objects, d.objects
    wrows = function_table(z, w)
    report = LawReport("adjunction hom_cocat")
    cases = 0
    for ne in range(bound + 1):
        ve = carrier("E", ne)
        gp = _all_maps(ne, len(wrows))
        ghat = wrows[gp]                                      # (nG, |E|, |Z|) values in W
        for e in cocategories(q, ve):
            left = _leq_all(q, e.weights[None, :], hom.weights[gp]).all(axis=1)
            ec = q.tensor_table[e.weights[:, None], c.weights[None, :]]   # (|E|, |Z|)
            right = _leq_all(q, ec[None, :, :], d.weights[ghat]).all(axis=(1, 2))
            cases += len(gp)
            for i in np.flatnonzero(left != right):
                _fail(report, (_weights_label(e), f"g={gp[i].tolist()}"),
                      f"cofunctor into the hom is {left[i]} but uncurried cofunctor is {right[i]}")
    return report, cases


def _adjunction_hom_comod(k, l, bound, hom):
    q = k.mat.q
    c, d = k.over, l.over
    z, w, v, s = c.objects, d.objects, k.src, l.src
    wrows, srows = function_table(z, w), function_table(v, s)
    H = hom.mat.data
    K, L = k.mat.data, l.mat.data
    report = LawReport("adjunction hom_comod")
    cases = 0
    for ne in range(bound + 1):
        ve = carrier("E", ne)
        gp = _all_maps(ne, len(wrows))
        ghat = wrows[gp]
        for e in cocategories(q, ve):
            cof_left = _leq_all(q, e.weights[None, :], hom.over.weights[gp]).all(axis=1)
            ec = q.tensor_table[e.weights[:, None], c.weights[None, :]]
            cof_right = _leq_all(q, ec[None, :, :], d.weights[ghat]).all(axis=(1, 2))
            for ns in range(bound + 1):
                se = carrier("R", ns)
                sp = _all_maps(ns, len(srows))
                shat = srows[sp]                               # (nS, |R|, |V|) values in S
                for emod in comodules(e, se):
                    E = emod.mat.data
                    left = np.broadcast_to(cof_left[:, None], (len(gp), len(sp))).copy()
                    for ei in range(ne):
                        for ri in range(ns):
                            left &= _leq_all(q, E[ei, ri], H[gp[:, ei][:, None], sp[:, ri][None, :]])
                    right = np.broadcast_to(cof_right[:, None], (len(gp), len(sp))).copy()
                    for ei in range(ne):
                        for zi in range(len(z)):
                            for ri in range(ns):
                                for vi in range(len(v)):
                                    val = q.tensor_table[E[ei, ri], K[zi, vi]]
                                    right &= _leq_all(q, val, L[ghat[:, ei, zi][:, None], shat[:, ri, vi][None, :]])
                    cases += left.size
                    for gi, si in np.argwhere(left != right):
                        _fail(report, (_weights_label(e), repr(emod.mat), f"g={gp[gi].tolist()}", f"s={sp[si].tolist()}"),
                              f"comodule map into the hom is {left[gi, si]} but uncurried map is {right[gi, si]}")
    return report, cases


def verify_adjunctions(which, instance, bound=2, candidate=None):
    """Exhaustively test one of the defining adjunctions on a concrete instance.

    ``which`` is one of ``P``, ``Q``, ``tensor_cat``, ``tensor_mod``,
    ``hom_cocat`` or ``hom_comod``; ``instance`` is the pair of inputs to
    the corresponding construction.  Test objects range over every carrier
    of size ``0..bound``.  ``candidate`` replaces the computed structure,
    which is how a deliberately wrong answer is shown to be caught.
    """
    first, second = instance
    if which == "P":
        p = candidate or measure_P(first, second)
        report, cases = _adjunction_P(first, second, bound, p)
    elif which == "Q":
        p = measure_P(first.over, second.over)
        qmod = candidate or comeasure_Q(first, second)
        report, cases = _adjunction_Q(first, second, bound, qmod.over if candidate else p, qmod)
    elif which == "tensor_cat":
        report, cases = _adjunction_tensor_cat(first, second, bound, candidate or tensor_cat(first, second))
    elif which == "tensor_mod":
        report, cases = _adjunction_tensor_mod(first, second, bound, candidate or tensor_mod(first, second))
    elif which == "hom_cocat":
        report, cases = _adjunction_hom_cocat(first, second, bound, candidate or hom_cocategories(first, second))
    elif which == "hom_comod":
        report, cases = _adjunction_hom_comod(first, second, bound, candidate or hom_comodules(first, second))
    else:
        raise ValidationError(f"unknown adjunction {which!r}")
    report.cases = cases
    report.failures.sort(key=lambda f: (f.witness, f.detail))
    return report


def enriched_check(a, b, c, modules=None):
    """Composition and identities of the enrichment, as inequalities between measuring weights.

    With ``modules = (m, n, o)`` over ``a, b, c`` the comodule-level
    composition is checked too.
    """
    q = a.q
    x, y, z = a.objects, b.objects, c.objects
    report = LawReport("enrichment")
    p_ab, p_bc, p_ac = measure_P(a, b), measure_P(b, c), measure_P(a, c)
    k_rows, l_rows = function_table(x, y), function_table(y, z)
    composite = function_index(l_rows[:, k_rows], len(z))    # (nL, nK): index of l o k
    lhs = q.tensor_table[p_bc.weights[:, None], p_ab.weights[None, :]]
    bad = np.argwhere(~q.leq_table[lhs, p_ac.weights[composite]])
    if len(bad):
        li, ki = bad[0]
        report.failures.append(Failure("composition", (p_bc.objects.elements[li], p_ab.objects.elements[ki])))
    p_aa = measure_P(a, a)
    ident = function_index(np.arange(len(x))[None, :], len(x))[0]
    if p_aa.weights[ident] != q.unit:
        report.failures.append(Failure("identity", (p_aa.objects.elements[ident],),
                                       f"weight {q.label(p_aa.weights[ident])} is not the unit"))
    if modules is not None:
        m, n, o = modules
        u, t, s = m.src, n.src, o.src
        q_mn, q_no, q_mo = comeasure_Q(m, n), comeasure_Q(n, o), comeasure_Q(m, o)
        h_rows, j_rows = function_table(u, t), function_table(t, s)
        jh = function_index(j_rows[:, h_rows], len(s))         # (nJ, nH)
        # Q_NO(l, j) * Q_MN(k, h) <= Q_MO(l o k, j o h)
        lhs = q.tensor_table[q_no.mat.data[:, None, :, None], q_mn.mat.data[None, :, None, :]]
        rhs = q_mo.mat.data[composite[:, :, None, None], jh[None, None, :, :]]
        bad = np.argwhere(~q.leq_table[lhs, rhs])
        if len(bad):
            li, ki, ji, hi = bad[0]
            report.failures.append(Failure("module composition", (
                q_no.mat.tgt.elements[li], q_mn.mat.tgt.elements[ki],
                q_no.mat.src.elements[ji], q_mn.mat.src.elements[hi])))
        q_mm = comeasure_Q(m, m)
        ident_u = function_index(np.arange(len(u))[None, :], len(u))[0]
        if not q.leq_table[q.unit, q_mm.mat.data[ident, ident_u]]:
            report.failures.append(Failure("module identity", (q_mm.mat.tgt.elements[ident],)))
    return report

