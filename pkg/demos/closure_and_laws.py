"""Star closure of a random digraph, then a couple of law suites.

Run with ``python3 demos/closure_and_laws.py``.
"""
import numpy as np

from qsweedler import VMatrix, builtin, run_suite, star_closure
from qsweedler.enumeration import carrier

rng = np.random.default_rng(7)
q = builtin("godel", 3)
x = carrier("X", 5)
g = VMatrix(q, x, x, rng.integers(0, len(q), size=(5, 5)) * (rng.random((5, 5)) < 0.3))
print("generator\n", g.data)
print("closure\n", star_closure(g).hom.data)

for name, seed in [("double_cat", None), ("closed", None), ("mod_fibration", 3)]:
    result = run_suite(name, q, bound=1 if seed is None else 2, seed=seed, samples=64)
    print(result)
