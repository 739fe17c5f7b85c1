"""Measuring between small preorders, and a graded example that collapses.

Run with ``python3 demos/measuring.py``.
"""
from qsweedler import VMatrix, builtin, star_closure
from qsweedler.enumeration import carrier
from qsweedler.sweedler import measure_P_report

boolq = builtin("bool")
x = carrier("X", 2)
chain = star_closure(VMatrix(boolq, x, x, [[0, 0], [1, 0]]))

# over Bool the measuring weight of a map is 1 exactly when it is monotone
report = measure_P_report(chain, chain)
for label, w in zip(report.output.objects, report.output.weights):
    print(f"{label:16} weight {boolq.label(w)}")

luk = builtin("lukasiewicz", 3)
a = star_closure(VMatrix(luk, x, x, [[0, 0], [luk.top, 0]]))
b = star_closure(VMatrix(luk, x, x, [[0, 0], [luk.index("1/2"), 0]]))
report = measure_P_report(a, b)
print()
for label, w in zip(report.output.objects, report.output.weights):
    print(f"{label:16} weight {luk.label(w):4} after {report.steps[label]} step(s)")
