"""Named law suites: exhaustive (or seeded random) batch checks of structural laws.

Exhaustive mode ranges over every carrier of size ``0..bound`` (matrix
laws) or ``1..bound`` (laws about categories and modules), in a fixed
order.  Seeded mode draws ``samples`` random cases per law instead, which
reaches larger carriers cheaply.

Every failure is stored as a self-contained JSON record (quantale
included) that :func:`replay` re-checks from scratch.
"""
import builtins
import time
from dataclasses import dataclass, field
from itertools import product

import numpy as np

from . import config
from .cat import (
    Cofunctor, Functor, QCocategory, morphism_check, star_closure, tensor_pair,
    unit_category, verify_category, verify_cocategory,
)
from .conv import curry_check
from .enumeration import carrier, categories, cocategories, comodules, enumerate_structures, modules
from .errors import InvariantError, ResourceError, ValidationError
from .mod import (
    cofree_comodule, corestrict_scalars, free_module, mod_morphism_check,
    restrict_scalars, tensor_modcomod, verify_comodule, verify_module,
)
from .serialize import decode, dumps, encode
from .sweedler import enriched_check, verify_adjunctions
from .vmat import (
    Function, VMatrix, cell_check, companion_cells, companion_conjoint, compose_data, function_index,
    function_table, hcompose, hom_transpose_check, identity_matrix, internal_hom, pair_map,
    product_set, reindex, tensor_data, tensor_matrices,
)

SUITES = ("double_cat", "fibrant", "monoidal", "closed", "mod_fibration",
          "monoidal_fibration", "sweedler_adjunctions", "enrichment")

MAX_RECORDS = 25


def enumerate(kind, quantale, sizes, predicate=None):  # noqa: A001 - public name
    """Stream every structure of ``kind`` on carriers of the given sizes."""
    return enumerate_structures(kind, quantale, sizes, predicate)


@dataclass
class SuiteResult:
    name: str
    quantale: str
    bound: int
    seed: object = None
    cases: int = 0
    failure_count: int = 0
    failures: list = field(default_factory=list)
    wall_time: float = 0.0
    law_cases: dict = field(default_factory=dict)

    @property
    def ok(self):
        return self.failure_count == 0

    def to_dict(self):
        # wall time is left out so that equal runs serialize identically
        return {"suite": self.name, "quantale": self.quantale, "bound": self.bound, "seed": self.seed,
                "cases": self.cases, "law_cases": dict(sorted(self.law_cases.items())),
                "failure_count": self.failure_count, "failures": self.failures,
                "verdict": "PASS" if self.ok else "FAIL"}

    def to_json(self):
        return dumps(self.to_dict())

    def __str__(self):
        head = f"{self.name} on {self.quantale} (bound {self.bound}"
        head += f", seed {self.seed})" if self.seed is not None else ")"
        if self.ok:
            return f"{head}: PASS, {self.cases} cases"
        first = self.failures[0]
        return (f"{head}: FAIL, {self.failure_count} of {self.cases} cases; "
                f"first: {first['law']} {first['detail']}".rstrip())


# individual laws, used for seeded cases and for replaying failures

def _eq(a, b):
    return np.array_equal(a.data, b.data)


def _law_associativity(q, t, s, r):
    return _eq(hcompose(hcompose(t, s), r), hcompose(t, hcompose(s, r)))


def _law_left_unit(q, s):
    return _eq(hcompose(identity_matrix(q, s.tgt), s), s)


def _law_right_unit(q, s):
    return _eq(hcompose(s, identity_matrix(q, s.src)), s)


def _law_interchange(q, m1, m2, n1, n2):
    left = hcompose(tensor_matrices(m2, n2), tensor_matrices(m1, n1))
    return _eq(left, tensor_matrices(hcompose(m2, m1), hcompose(n2, n1)))


def _law_identity_tensor(q, x, z):
    return _eq(identity_matrix(q, product_set(x, z)), tensor_matrices(identity_matrix(q, x), identity_matrix(q, z)))


def _law_companion_cells(q, f):
    return all(c.verdict for c in companion_cells(q, f).values())


def _law_restriction_formula(q, n, f, g):
    # f^* o N o g_* has entries N(f x, g z)
    _, upper = companion_conjoint(q, f)
    lower, _ = companion_conjoint(q, g)
    return _eq(hcompose(upper, hcompose(n, lower)), reindex(n, f, g))


def _law_closed(q, r, s, t, phi, psi):
    try:
        hom_transpose_check(r, s, t, phi, psi)
    except InvariantError:
        return False
    return True


def _law_tensor_category(q, a, b):
    return verify_category(tensor_pair(a, b).hom).ok


def _law_tensor_cocategory(q, c, d):
    w = tensor_pair(c, d)
    return verify_cocategory(q, w.objects, w.weights).ok


def _law_tensor_associator(q, a, b, c):
    left = tensor_pair(tensor_pair(a, b), c).hom.data
    right = tensor_pair(a, tensor_pair(b, c)).hom.data
    return np.array_equal(left, right)


def _law_tensor_unitor(q, a):
    return np.array_equal(tensor_pair(unit_category(q), a).hom.data, a.hom.data)


def _law_companion_tensor(q, f, g):
    fl, fu = companion_conjoint(q, f)
    gl, gu = companion_conjoint(q, g)
    pl, pu = companion_conjoint(q, pair_map(f, g))
    return _eq(pl, tensor_matrices(fl, gl)) and _eq(pu, tensor_matrices(fu, gu))


def _law_functor_tensor(q, a, b, c, d, f, g):
    if not (morphism_check(f, a, b) and morphism_check(g, c, d)):
        return True
    return morphism_check(pair_map(f, g), tensor_pair(a, c), tensor_pair(b, d))


def _law_lifting(q, a, b, f, n):
    lifted = restrict_scalars(Functor(a, b, f), n)
    cell = cell_check(Function.identity(n.src), f, lifted.mat, n.mat)
    return verify_module(a, lifted.mat).ok and cell.verdict


def _law_lifting_universality(q, a1, a, b, beta, alpha, n, p, sigma):
    lifted = restrict_scalars(Functor(a, b, alpha), n)
    direct = mod_morphism_check(beta.then(alpha), sigma, p, n)
    return direct == mod_morphism_check(beta, sigma, p, lifted)


def _law_double_reindex(q, a1, a, b, beta, alpha, n):
    once = restrict_scalars(Functor(a1, b, beta.then(alpha)), n)
    twice = restrict_scalars(Functor(a1, a, beta), restrict_scalars(Functor(a, b, alpha), n))
    return _eq(once.mat, twice.mat)


def _law_free_adjunction(q, a, b, alpha, m, n, sigma):
    free = free_module(a, m)
    return mod_morphism_check(alpha, sigma, free, n) == cell_check(sigma, alpha, m, n.mat).verdict


def _law_colifting(q, c, d, f, k):
    pushed = corestrict_scalars(Cofunctor(c, d, f), k)
    cell = cell_check(Function.identity(k.src), f, k.mat, pushed.mat)
    return verify_comodule(d, pushed.mat).ok and cell.verdict


def _law_colifting_universality(q, c, d, d1, gamma, delta, k, l, sigma):
    pushed = corestrict_scalars(Cofunctor(c, d, gamma), k)
    direct = mod_morphism_check(gamma.then(delta), sigma, k, l)
    return direct == mod_morphism_check(delta, sigma, pushed, l)


def _law_lifting_tensor(q, a, b, c, d, f, g, m, n):
    alpha, beta = Functor(a, b, f), Functor(c, d, g)
    joint = Functor(tensor_pair(a, c), tensor_pair(b, d), pair_map(f, g))
    left = restrict_scalars(joint, tensor_modcomod(m, n))
    right = tensor_modcomod(restrict_scalars(alpha, m), restrict_scalars(beta, n))
    return _eq(left.mat, right.mat)


def _law_colifting_tensor(q, c, d, e, h, f, g, k, l):
    gamma, delta = Cofunctor(c, d, f), Cofunctor(e, h, g)
    joint = Cofunctor(tensor_pair(c, e), tensor_pair(d, h), pair_map(f, g))
    left = corestrict_scalars(joint, tensor_modcomod(k, l))
    right = tensor_modcomod(corestrict_scalars(gamma, k), corestrict_scalars(delta, l))
    return _eq(left.mat, right.mat) and left.over == right.over


def _law_free_tensor(q, m, n):
    left = free_module(tensor_pair(m.over, n.over), tensor_matrices(m.mat, n.mat))
    right = tensor_modcomod(free_module(m.over, m.mat), free_module(n.over, n.mat))
    return _eq(left.mat, right.mat)


def _law_cofree_tensor(q, k, l):
    left = cofree_comodule(tensor_pair(k.over, l.over), tensor_matrices(k.mat, l.mat))
    right = tensor_modcomod(cofree_comodule(k.over, k.mat), cofree_comodule(l.over, l.mat))
    return _eq(left.mat, right.mat)


def _law_adjunction(q, which, first, second, bound):
    return verify_adjunctions(which, (first, second), bound).ok


def _law_enrichment(q, a, b, c):
    return enriched_check(a, b, c).ok


def _law_module_enrichment(q, m, n, o):
    return enriched_check(m.over, n.over, o.over, modules=(m, n, o)).ok


def _law_currying(q, c, d, b):
    try:
        return curry_check(c, d, b)
    except InvariantError:
        return False


LAWS = {
    "associativity": _law_associativity,
    "left unit": _law_left_unit,
    "right unit": _law_right_unit,
    "interchange": _law_interchange,
    "identity tensor": _law_identity_tensor,
    "companion cells": _law_companion_cells,
    "restriction formula": _law_restriction_formula,
    "hom transpose": _law_closed,
    "currying": _law_currying,
    "tensor category": _law_tensor_category,
    "tensor cocategory": _law_tensor_cocategory,
    "tensor associator": _law_tensor_associator,
    "tensor unitor": _law_tensor_unitor,
    "companion tensor": _law_companion_tensor,
    "functor tensor": _law_functor_tensor,
    "lifting": _law_lifting,
    "lifting universality": _law_lifting_universality,
    "double reindex": _law_double_reindex,
    "free adjunction": _law_free_adjunction,
    "colifting": _law_colifting,
    "colifting universality": _law_colifting_universality,
    "lifting tensor": _law_lifting_tensor,
    "colifting tensor": _law_colifting_tensor,
    "free tensor": _law_free_tensor,
    "cofree tensor": _law_cofree_tensor,
    "adjunction": _law_adjunction,
    "enrichment": _law_enrichment,
    "module enrichment": _law_module_enrichment,
}


def replay(record):
    """Re-run a failure record from scratch; True if the law still fails."""
    q = decode(record["quantale"])
    case = {k: decode(v, q) for k, v in record["case"].items()}
    return not LAWS[record["law"]](q, **case)


class _Run:
    """Counts cases and keeps the first few failures as serialized records."""

    def __init__(self, q):
        self.q = q
        self.cases = 0
        self.per_law = {}
        self.count = 0
        self.records = []
        self._qobj = encode(q)

    def tally(self, law, n):
        self.cases += n
        self.per_law[law] = self.per_law.get(law, 0) + n

    def check(self, law, case):
        self.tally(law, 1)
        if not LAWS[law](self.q, **case):
            self.fail(law, case)

    def fail(self, law, case, detail=""):
        self.count += 1
        if len(self.records) < MAX_RECORDS:
            if callable(case):
                case = case()
            self.records.append({"law": law, "quantale": self._qobj, "detail": detail,
                                 "case": {k: encode(v) for k, v in case.items()}})

    def batch(self, law, bad, make_case, detail=""):
        """Record a boolean array of failures; ``make_case`` rebuilds one case from its index."""
        self.tally(law, bad.size)
        hits = np.argwhere(bad)
        self.count += len(hits)
        for idx in hits[:max(0, MAX_RECORDS - len(self.records))]:
            case = make_case(tuple(int(i) for i in idx))
            self.records.append({"law": law, "quantale": self._qobj, "detail": detail,
                                 "case": {k: encode(v) for k, v in case.items()}})


def _all_data(q, rows, cols):
    """Every ``rows x cols`` matrix over ``q`` as one index array, lexicographically."""
    cells = rows * cols
    config.check_cap(len(q) ** cells, f"{rows}x{cols} matrices")
    grid = np.array(list(product(range(len(q)), repeat=cells)), dtype=np.int64)
    return grid.reshape(len(grid), rows, cols)


def _all_maps(n_dom, n_cod):
    return function_table(range(n_dom), range(n_cod))


def _mat(q, src, tgt, data):
    return VMatrix(q, src, tgt, data)


def _sets(*spec):
    return [carrier(name, n) for name, n in spec]


def _budget(count, name):
    limit = config.current().suite_cases
    if count > limit:
        raise ResourceError(f"suite {name} would check {count} cases (budget {limit}); "
                            "lower the bound or pass a seed")


# random structures for seeded mode

def _rand_matrix(q, rng, src, tgt):
    return VMatrix(q, src, tgt, rng.integers(len(q), size=(len(tgt), len(src))))


def _rand_function(rng, x, y):
    return Function(x, y, rng.integers(len(y), size=len(x)))


def _rand_category(q, rng, x):
    return star_closure(_rand_matrix(q, rng, x, x))


def _rand_cocategory(q, rng, z):
    allowed = q.idempotent_subunits()
    return QCocategory(q, z, [allowed[i] for i in rng.integers(len(allowed), size=len(z))], check=False)


def _rand_module(q, rng, a, u):
    return free_module(a, _rand_matrix(q, rng, u, a.objects))


def _rand_comodule(q, rng, c, v):
    return cofree_comodule(c, _rand_matrix(q, rng, v, c.objects))


def _rand_functor(q, rng, a, y, tries=64):
    """A random category ``b`` on ``y`` with a functor ``a -> b`` (pullback-compatible)."""
    f = _rand_function(rng, a.objects, y)
    g = _rand_matrix(q, rng, y, y)
    # make f a functor by forcing b above the image of a
    data = np.array(g.data)
    for i, j in product(range(len(a.objects)), repeat=2):
        fi, fj = f.table[i], f.table[j]
        data[fi, fj] = q.join_table[data[fi, fj], a.hom.data[i, j]]
    return star_closure(VMatrix(q, y, y, data)), f


def _rand_cofunctor(q, rng, c, w):
    """A random cocategory ``d`` on ``w`` with a cofunctor ``c -> d``."""
    f = _rand_function(rng, c.objects, w)
    d = _rand_cocategory(q, rng, w)
    weights = np.array(d.weights)
    for z, t in builtins.enumerate(f.table):
        weights[t] = q.join_table[weights[t], c.weights[z]]
    return QCocategory(q, w, weights, check=False), f


def _size(rng, bound, low=1):
    return int(rng.integers(low, bound + 1))


# suites

def _double_cat(run, q, bound, rng, samples):
    if rng is not None:
        for _ in range(samples):
            a, b, c, d = (_size(rng, bound) for _ in range(4))
            A, B, C, D = _sets(("A", a), ("B", b), ("C", c), ("D", d))
            r, s, t = _rand_matrix(q, rng, A, B), _rand_matrix(q, rng, B, C), _rand_matrix(q, rng, C, D)
            run.check("associativity", {"t": t, "s": s, "r": r})
            run.check("left unit", {"s": s})
            run.check("right unit", {"s": s})
            e, f = _size(rng, bound), _size(rng, bound)
            E, F = _sets(("E", e), ("F", f))
            run.check("interchange", {"m1": r, "m2": s, "n1": _rand_matrix(q, rng, D, E),
                                      "n2": _rand_matrix(q, rng, E, F)})
            run.check("identity tensor", {"x": A, "z": B})
        return
    sizes = range(bound + 1)
    data = {}

    def all_of(rows, cols):
        if (rows, cols) not in data:
            data[rows, cols] = _all_data(q, rows, cols)
        return data[rows, cols]

    _budget(sum(len(q) ** (a * b + b * c + c * d) for a, b, c, d in product(sizes, repeat=4)), "double_cat")
    for a, b, c, d in product(sizes, repeat=4):
        A, B, C, D = _sets(("A", a), ("B", b), ("C", c), ("D", d))
        R, S, T = all_of(b, a), all_of(c, b), all_of(d, c)
        ts = compose_data(q, T[:, None], S[None])
        left = compose_data(q, ts[:, :, None], R[None, None])
        right = compose_data(q, T[:, None, None], compose_data(q, S[:, None], R[None])[None])
        bad = (left != right).any(axis=(-2, -1))
        run.batch("associativity", bad, lambda i: {"t": _mat(q, C, D, T[i[0]]), "s": _mat(q, B, C, S[i[1]]),
                                                   "r": _mat(q, A, B, R[i[2]])})
    for a, b in product(sizes, repeat=2):
        A, B = _sets(("A", a), ("B", b))
        S = all_of(b, a)
        one_a, one_b = identity_matrix(q, A).data, identity_matrix(q, B).data
        bad = (compose_data(q, one_b, S) != S).any(axis=(-2, -1))
        run.batch("left unit", bad, lambda i: {"s": _mat(q, A, B, S[i[0]])})
        bad = (compose_data(q, S, one_a) != S).any(axis=(-2, -1))
        run.batch("right unit", bad, lambda i: {"s": _mat(q, A, B, S[i[0]])})
        run.check("identity tensor", {"x": A, "z": B})
    _interchange_exhaustive(run, q, sizes, all_of)


def _interchange_exhaustive(run, q, sizes, all_of):
    # (M2 (x) N2) o (M1 (x) N1) = (M2 o M1) (x) (N2 o N1); M2 is looped, the rest batched
    for a, b, c in product(sizes, repeat=3):
        M1s, M2s = all_of(b, a), all_of(c, b)
        A, B, C = _sets(("A", a), ("B", b), ("C", c))
        for d, e, f in product(sizes, repeat=3):
            D, E, F = _sets(("D", d), ("E", e), ("F", f))
            N1s, N2s = all_of(e, d), all_of(f, e)
            nn = compose_data(q, N2s[:, None], N1s[None])                   # (n2, n1, f, d)
            t1 = tensor_data(q, M1s[:, None], N1s[None])                    # (m1, n1, be, ad)
            for i2, m2 in builtins.enumerate(M2s):
                t2 = tensor_data(q, m2, N2s)                                # (n2, cf, be)
                left = compose_data(q, t2[None, :, None], t1[:, None])      # (m1, n2, n1, cf, ad)
                mm = compose_data(q, m2, M1s)                               # (m1, c, a)
                right = tensor_data(q, mm[:, None, None], nn[None])
                bad = (left != right).any(axis=(-2, -1))
                run.batch("interchange", bad, lambda i, i2=i2: {
                    "m1": _mat(q, A, B, M1s[i[0]]), "m2": _mat(q, B, C, M2s[i2]),
                    "n1": _mat(q, D, E, N1s[i[2]]), "n2": _mat(q, E, F, N2s[i[1]])})


def _fibrant(run, q, bound, rng, samples):
    if rng is not None:
        for _ in range(samples):
            X, Y, Z = _sets(("X", _size(rng, bound)), ("Y", _size(rng, bound)), ("Z", _size(rng, bound)))
            A, B = _sets(("A", _size(rng, bound)), ("B", _size(rng, bound)))
            run.check("companion cells", {"f": _rand_function(rng, X, Y)})
            run.check("restriction formula", {"n": _rand_matrix(q, rng, A, B), "f": _rand_function(rng, X, B),
                                              "g": _rand_function(rng, Z, A)})
        return
    sizes = range(bound + 1)
    for x, y in product(sizes, repeat=2):
        X, Y = _sets(("X", x), ("Y", y))
        for row in _all_maps(x, y):
            run.check("companion cells", {"f": Function(X, Y, row)})
    for x, z, a, b in product(sizes, repeat=4):
        X, Z, A, B = _sets(("X", x), ("Z", z), ("A", a), ("B", b))
        fs = [Function(X, B, r) for r in _all_maps(x, b)]
        gs = [Function(Z, A, r) for r in _all_maps(z, a)]
        for data in _all_data(q, b, a):
            n = VMatrix(q, A, B, data)
            for f, g in product(fs, gs):
                run.check("restriction formula", {"n": n, "f": f, "g": g})


def _closed(run, q, bound, rng, samples):
    if rng is not None:
        for _ in range(samples):
            C, D, X, Y, A, B = _sets(*((n, _size(rng, bound)) for n in "CDXYAB"))
            r, s, t = _rand_matrix(q, rng, C, D), _rand_matrix(q, rng, X, Y), _rand_matrix(q, rng, A, B)
            run.check("hom transpose", {"r": r, "s": s, "t": t,
                                        "phi": _rand_function(rng, product_set(C, X), A),
                                        "psi": _rand_function(rng, product_set(D, Y), B)})
        return
    _closed_exhaustive(run, q, range(bound + 1))


def _closed_exhaustive(run, q, sizes):
    n = len(q)
    _budget(sum(n ** (c * d + x * y + a * b) * a ** (c * x) * b ** (d * y)
                for c, d, x, y, a, b in product(sizes, repeat=6)), "closed")
    leq = q.leq_table
    for x, y, a, b in product(sizes, repeat=4):
        X, Y, A, B = _sets(("X", x), ("Y", y), ("A", a), ("B", b))
        Ss, Ts = _all_data(q, y, x), _all_data(q, b, a)
        for s in Ss:
            smat = VMatrix(q, X, Y, s)
            # honest route: the library internal hom, once per T
            H = np.stack([internal_hom(smat, VMatrix(q, A, B, t)).data for t in Ts])
            for c, d in product(sizes, repeat=2):
                C, D = _sets(("C", c), ("D", d))
                Rs = _all_data(q, d, c)
                phis, psis = _all_maps(c * x, a), _all_maps(d * y, b)
                phit = function_index(phis.reshape(len(phis), c, x), a)        # curried, (nphi, c)
                psit = function_index(psis.reshape(len(psis), d, y), b)
                rs = tensor_data(q, Rs, s)                                        # (nR, d*y, c*x)
                # left[r, t, psi, phi]: R(x)S <= T(psi, phi) everywhere
                moved = Ts[:, psis[:, None, :, None], phis[None, :, None, :]]   # (nT, npsi, nphi, dy, cx)
                left = leq[rs[:, None, None, None], moved[None]].all(axis=(-2, -1))
                hm = H[:, psit[:, None, :, None], phit[None, :, None, :]]      # (nT, npsi, nphi, d, c)
                right = leq[Rs[:, None, None, None], hm[None]].all(axis=(-2, -1))
                run.batch("hom transpose", left != right, lambda i, C=C, D=D, Rs=Rs, phis=phis, psis=psis, s=s: {
                    "r": _mat(q, C, D, Rs[i[0]]), "s": _mat(q, X, Y, s), "t": _mat(q, A, B, Ts[i[1]]),
                    "phi": Function(product_set(C, X), A, phis[i[3]]),
                    "psi": Function(product_set(D, Y), B, psis[i[2]])})


def _cats(q, bound):
    return [a for n in range(1, bound + 1) for a in categories(q, carrier("X", n))]


def _cocats(q, bound):
    return [c for n in range(1, bound + 1) for c in cocategories(q, carrier("Z", n))]


def _functors(a, b):
    return [f for f in (Function(a.objects, b.objects, r) for r in _all_maps(len(a.objects), len(b.objects)))
            if morphism_check(f, a, b)]


def _mods(a, bound):
    return [m for n in range(1, bound + 1) for m in modules(a, carrier("U", n))]


def _comods(c, bound):
    return [k for n in range(1, bound + 1) for k in comodules(c, carrier("V", n))]


def _random_cats(q, rng, bound, count):
    return [_rand_category(q, rng, carrier("X", _size(rng, bound))) for _ in range(count)]


def _monoidal(run, q, bound, rng, samples):
    if rng is not None:
        for _ in range(samples):
            a, b, c = _random_cats(q, rng, bound, 3)
            run.check("tensor category", {"a": a, "b": b})
            run.check("tensor associator", {"a": a, "b": b, "c": c})
            run.check("tensor unitor", {"a": a})
            z, w = _sets(("Z", _size(rng, bound)), ("W", _size(rng, bound)))
            run.check("tensor cocategory", {"c": _rand_cocategory(q, rng, z), "d": _rand_cocategory(q, rng, w)})
            x, y = _sets(("X", _size(rng, bound)), ("Y", _size(rng, bound)))
            run.check("companion tensor", {"f": _rand_function(rng, x, y), "g": _rand_function(rng, z, w)})
            b2, f = _rand_functor(q, rng, a, carrier("Y", _size(rng, bound)))
            d2, g = _rand_functor(q, rng, c, carrier("W", _size(rng, bound)))
            run.check("functor tensor", {"a": a, "b": b2, "c": c, "d": d2, "f": f, "g": g})
        return
    cats, cocats = _cats(q, bound), _cocats(q, bound)
    for a, b in product(cats, repeat=2):
        run.check("tensor category", {"a": a, "b": b})
    for a, b, c in product(cats, repeat=3):
        run.check("tensor associator", {"a": a, "b": b, "c": c})
    for a in cats:
        run.check("tensor unitor", {"a": a})
    for c, d in product(cocats, repeat=2):
        run.check("tensor cocategory", {"c": c, "d": d})
    sizes = range(bound + 1)
    for x, y in product(sizes, repeat=2):
        X, Y = _sets(("X", x), ("Y", y))
        fs = [Function(X, Y, r) for r in _all_maps(x, y)]
        for f, g in product(fs, repeat=2):
            run.check("companion tensor", {"f": f, "g": g})
    pairs = [(a, b, f) for a, b in product(cats, repeat=2) for f in _functors(a, b)]
    small = [p for p in pairs if len(p[0].objects) == 1 or len(p[1].objects) == 1]
    for (a, b, f), (c, d, g) in product(pairs, small):
        run.check("functor tensor", {"a": a, "b": b, "c": c, "d": d, "f": f, "g": g})


def _mod_fibration(run, q, bound, rng, samples):
    if rng is not None:
        for _ in range(samples):
            a1 = _rand_category(q, rng, carrier("W", _size(rng, bound)))
            a, beta = _rand_functor(q, rng, a1, carrier("X", _size(rng, bound)))
            b, alpha = _rand_functor(q, rng, a, carrier("Y", _size(rng, bound)))
            t, u = carrier("T", _size(rng, bound)), carrier("U", _size(rng, bound))
            n = _rand_module(q, rng, b, t)
            p = _rand_module(q, rng, a1, u)
            sigma = _rand_function(rng, u, t)
            run.check("lifting", {"a": a, "b": b, "f": alpha, "n": n})
            run.check("double reindex", {"a1": a1, "a": a, "b": b, "beta": beta, "alpha": alpha, "n": n})
            run.check("lifting universality", {"a1": a1, "a": a, "b": b, "beta": beta, "alpha": alpha,
                                               "n": n, "p": p, "sigma": sigma})
            m = _rand_matrix(q, rng, u, a.objects)
            run.check("free adjunction", {"a": a, "b": b, "alpha": alpha, "m": m, "n": n, "sigma": sigma})
            c = _rand_cocategory(q, rng, carrier("Z", _size(rng, bound)))
            d, gamma = _rand_cofunctor(q, rng, c, carrier("W", _size(rng, bound)))
            d1, delta = _rand_cofunctor(q, rng, d, carrier("R", _size(rng, bound)))
            k = _rand_comodule(q, rng, c, u)
            l = _rand_comodule(q, rng, d1, t)
            run.check("colifting", {"c": c, "d": d, "f": gamma, "k": k})
            run.check("colifting universality", {"c": c, "d": d, "d1": d1, "gamma": gamma, "delta": delta,
                                                 "k": k, "l": l, "sigma": sigma})
        return
    cats = _cats(q, bound)
    mods = {id(b): _mods(b, bound) for b in cats}
    leq = q.leq_table
    for a, b in product(cats, repeat=2):
        for f in _functors(a, b):
            alpha = Functor(a, b, f)
            for n in mods[id(b)]:
                run.check("lifting", {"a": a, "b": b, "f": f, "n": n})
                lifted = restrict_scalars(alpha, n)
                # lifting universality, batched over the source module and its source map
                for a1 in cats:
                    for beta in _functors(a1, a):
                        run.check("double reindex", {"a1": a1, "a": a, "b": b, "beta": beta, "alpha": f, "n": n})
                        comp = beta.then(f)
                        for nu in range(1, bound + 1):
                            ps = [p for p in mods[id(a1)] if len(p.src) == nu]
                            if not ps:
                                continue
                            P = np.stack([p.mat.data for p in ps])                  # (nP, x1, u)
                            sig = _all_maps(nu, len(n.src))                          # (nS, u)
                            direct = leq[P[:, None], n.mat.data[list(comp.table)][:, sig].transpose(1, 0, 2)[None]]
                            via = leq[P[:, None], lifted.mat.data[list(beta.table)][:, sig].transpose(1, 0, 2)[None]]
                            bad = direct.all(axis=(-2, -1)) != via.all(axis=(-2, -1))
                            U = ps[0].src
                            run.batch("lifting universality", bad, lambda i, ps=ps, sig=sig, a1=a1, beta=beta, U=U: {
                                "a1": a1, "a": a, "b": b, "beta": beta, "alpha": f, "n": n, "p": ps[i[0]],
                                "sigma": Function(U, n.src, sig[i[1]])})
                # free adjunction, batched over all plain matrices M and source maps
                for nu in range(1, bound + 1):
                    U = carrier("U", nu)
                    Ms = _all_data(q, len(a.objects), nu)
                    free = compose_data(q, a.hom.data, Ms)
                    sig = _all_maps(nu, len(n.src))
                    target = n.mat.data[list(f.table)][:, sig].transpose(1, 0, 2)      # (nS, x, u)
                    left = leq[free[:, None], target[None]].all(axis=(-2, -1))
                    right = leq[Ms[:, None], target[None]].all(axis=(-2, -1))
                    run.batch("free adjunction", left != right, lambda i, U=U, Ms=Ms, sig=sig: {
                        "a": a, "b": b, "alpha": f, "m": VMatrix(q, U, a.objects, Ms[i[0]]), "n": n,
                        "sigma": Function(U, n.src, sig[i[1]])})
    cocats = _cocats(q, bound)
    comods = {id(c): _comods(c, bound) for c in cocats}
    for c, d in product(cocats, repeat=2):
        for g in _functors(c, d):
            for k in comods[id(c)]:
                run.check("colifting", {"c": c, "d": d, "f": g, "k": k})
            for d1 in cocats:
                for h in _functors(d, d1):
                    comp = g.then(h)
                    for k in comods[id(c)]:
                        pushed = corestrict_scalars(Cofunctor(c, d, g), k)
                        for nt in range(1, bound + 1):
                            ls = [l for l in comods[id(d1)] if len(l.src) == nt]
                            L = np.stack([l.mat.data for l in ls])                  # (nL, w1, t)
                            sig = _all_maps(len(k.src), nt)                          # (nS, v)
                            direct = leq[k.mat.data[None, None], L[:, list(comp.table)][:, :, sig].transpose(0, 2, 1, 3)]
                            via = leq[pushed.mat.data[None, None], L[:, list(h.table)][:, :, sig].transpose(0, 2, 1, 3)]
                            bad = direct.all(axis=(-2, -1)) != via.all(axis=(-2, -1))
                            run.batch("colifting universality", bad, lambda i, ls=ls, sig=sig, d1=d1, h=h, k=k: {
                                "c": c, "d": d, "d1": d1, "gamma": g, "delta": h, "k": k, "l": ls[i[0]],
                                "sigma": Function(k.src, ls[i[0]].src, sig[i[1]])})


def _monoidal_fibration(run, q, bound, rng, samples):
    if rng is not None:
        for _ in range(samples):
            a, c = _random_cats(q, rng, bound, 2)
            b, f = _rand_functor(q, rng, a, carrier("Y", _size(rng, bound)))
            d, g = _rand_functor(q, rng, c, carrier("W", _size(rng, bound)))
            m = _rand_module(q, rng, b, carrier("U", _size(rng, bound)))
            n = _rand_module(q, rng, d, carrier("T", _size(rng, bound)))
            run.check("lifting tensor", {"a": a, "b": b, "c": c, "d": d, "f": f, "g": g, "m": m, "n": n})
            run.check("free tensor", {"m": _rand_module(q, rng, a, carrier("U", _size(rng, bound))), "n": n})
            c1 = _rand_cocategory(q, rng, carrier("Z", _size(rng, bound)))
            e1 = _rand_cocategory(q, rng, carrier("R", _size(rng, bound)))
            d1, g1 = _rand_cofunctor(q, rng, c1, carrier("W", _size(rng, bound)))
            h1, g2 = _rand_cofunctor(q, rng, e1, carrier("S", _size(rng, bound)))
            k = _rand_comodule(q, rng, c1, carrier("V", _size(rng, bound)))
            l = _rand_comodule(q, rng, e1, carrier("T", _size(rng, bound)))
            run.check("colifting tensor", {"c": c1, "d": d1, "e": e1, "h": h1, "f": g1, "g": g2, "k": k, "l": l})
            run.check("cofree tensor", {"k": k, "l": l})
        return
    cats, cocats = _cats(q, bound), _cocats(q, bound)
    one = [a for a in cats if len(a.objects) == 1]
    lifts = [(a, b, f, m) for a, b in product(cats, repeat=2) for f in _functors(a, b) for m in _mods(b, bound)]
    small = [(a, b, f, m) for a, b in product(one, cats) for f in _functors(a, b) for m in _mods(b, 1)]
    for (a, b, f, m), (c, d, g, n) in product(lifts, small):
        run.check("lifting tensor", {"a": a, "b": b, "c": c, "d": d, "f": f, "g": g, "m": m, "n": n})
    mods = [m for a in cats for m in _mods(a, bound)]
    small_mods = [m for a in cats for m in _mods(a, 1)]
    for m, n in product(mods, small_mods):
        run.check("free tensor", {"m": m, "n": n})
    colifts = [(c, d, f, k) for c, d in product(cocats, repeat=2) for f in _functors(c, d) for k in _comods(c, bound)]
    small_co = [(c, d, f, k) for c, d in product(cocats, repeat=2) if len(c.objects) == 1
                for f in _functors(c, d) for k in _comods(c, 1)]
    for (c, d, f, k), (e, h, g, l) in product(colifts, small_co):
        run.check("colifting tensor", {"c": c, "d": d, "e": e, "h": h, "f": f, "g": g, "k": k, "l": l})
    comods = [k for c in cocats for k in _comods(c, bound)]
    for k, l in product(comods, [k for c in cocats for k in _comods(c, 1)]):
        run.check("cofree tensor", {"k": k, "l": l})


def _adjunction_case(run, which, first, second, bound):
    report = verify_adjunctions(which, (first, second), bound)
    run.tally("adjunction", report.cases)
    if not report.ok:
        run.fail("adjunction", {"which": which, "first": first, "second": second, "bound": bound},
                 str(report.failures[0]))


def _sweedler(run, q, bound, rng, samples):
    inner = min(bound, 2)
    if rng is not None:
        # each sample runs six exhaustive harnesses, so draw far fewer of them
        for _ in range(max(1, samples // 32)):
            a, b = _random_cats(q, rng, bound, 2)
            c = _rand_cocategory(q, rng, carrier("Z", _size(rng, bound)))
            d = _rand_cocategory(q, rng, carrier("W", _size(rng, bound)))
            m = _rand_module(q, rng, a, carrier("U", _size(rng, bound)))
            n = _rand_module(q, rng, b, carrier("T", _size(rng, bound)))
            k = _rand_comodule(q, rng, c, carrier("V", _size(rng, bound)))
            l = _rand_comodule(q, rng, d, carrier("S", _size(rng, bound)))
            _adjunction_case(run, "P", a, b, inner)
            _adjunction_case(run, "Q", m, n, inner)
            _adjunction_case(run, "tensor_cat", c, b, inner)
            _adjunction_case(run, "tensor_mod", k, n, inner)
            _adjunction_case(run, "hom_cocat", c, d, inner)
            _adjunction_case(run, "hom_comod", k, l, inner)
        return
    cats, cocats = _cats(q, bound), _cocats(q, bound)
    mods = [m for a in cats for m in _mods(a, bound)]
    comods = [k for c in cocats for k in _comods(c, bound)]
    for a, b in product(cats, repeat=2):
        _adjunction_case(run, "P", a, b, inner)
    for m, n in product(mods, repeat=2):
        _adjunction_case(run, "Q", m, n, inner)
    for c, b in product(cocats, cats):
        _adjunction_case(run, "tensor_cat", c, b, inner)
    for k, n in product(comods, mods):
        _adjunction_case(run, "tensor_mod", k, n, inner)
    for c, d in product(cocats, repeat=2):
        _adjunction_case(run, "hom_cocat", c, d, inner)
    for k, l in product(comods, repeat=2):
        _adjunction_case(run, "hom_comod", k, l, inner)


def _enrichment(run, q, bound, rng, samples):
    if rng is not None:
        for _ in range(samples):
            a, b, c = _random_cats(q, rng, bound, 3)
            run.check("enrichment", {"a": a, "b": b, "c": c})
            m, n, o = (_rand_module(q, rng, x, carrier("U", _size(rng, bound))) for x in (a, b, c))
            run.check("module enrichment", {"m": m, "n": n, "o": o})
            nz, nw = _size(rng, bound), _size(rng, bound)
            # the nested convolution lives on (Y^W)^Z; shrink until it fits the cap
            while (len(b.objects) ** (nz * nw)) ** 2 > config.current().cap and nz * nw > 1:
                nz, nw = max(1, nz - 1), nw if nz > 1 else nw - 1
            z = _rand_cocategory(q, rng, carrier("Z", nz))
            w = _rand_cocategory(q, rng, carrier("W", nw))
            run.check("currying", {"c": z, "d": w, "b": b})
        return
    cats, cocats = _cats(q, bound), _cocats(q, bound)
    for a, b, c in product(cats, repeat=3):
        run.check("enrichment", {"a": a, "b": b, "c": c})
    single = [m for a in cats for m in _mods(a, 1)]
    for m, n, o in product(single, repeat=3):
        run.check("module enrichment", {"m": m, "n": n, "o": o})
    for c, d, b in product(cocats, cocats, cats):
        run.check("currying", {"c": c, "d": d, "b": b})


_RUNNERS = {
    "double_cat": _double_cat,
    "fibrant": _fibrant,
    "monoidal": _monoidal,
    "closed": _closed,
    "mod_fibration": _mod_fibration,
    "monoidal_fibration": _monoidal_fibration,
    "sweedler_adjunctions": _sweedler,
    "enrichment": _enrichment,
}


def run_suite(name, quantale, bound=2, seed=None, samples=256):
    """Run one named suite; exhaustive unless ``seed`` is given."""
    if name not in _RUNNERS:
        raise ValidationError(f"unknown suite {name!r}; choose from {', '.join(SUITES)}")
    if bound < 1:
        raise ValidationError("suite bound must be at least 1")
    rng = None if seed is None else np.random.default_rng(seed)
    run = _Run(quantale)
    start = time.perf_counter()
    _RUNNERS[name](run, quantale, bound, rng, samples)
    records = sorted(run.records, key=dumps)
    return SuiteResult(name, quantale.name, bound, seed, run.cases, run.count, records,
                       time.perf_counter() - start, run.per_law)
