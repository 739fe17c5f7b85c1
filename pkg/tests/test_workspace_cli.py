import io
import json
import subprocess
import sys

import pytest

from qsweedler import LawViolation, builtin, emit_workspace, measure_P, parse_workspace, star_closure
from qsweedler.cli import main
from qsweedler.workspace import ParseError

CHAIN = """\
# the two-element chain over the Boolean quantale
quantale bool
set X { lo hi }
matrix G : X -> X { hi lo = 1 }
category A on X { lo lo = 1; hi hi = 1; hi lo = 1 }
category B on X { hi lo = 1 }
"""

GODEL = """\
quantale godel 3
set X { x }
set Y { y1 y2 }
set Z { z }
matrix S : X -> Y {
  y1 x = 1/2
  y2 x = 1
}
matrix T : Y -> Z { z y1 = 1; z y2 = 0.5 }
function f : Y -> X { y1 = x; y2 = x }
cocategory C on Y { y1 = 1/2; default = 1 }
module M : X -> A from S
category A on Y { y1 y2 = 1/2 }
"""


def run(argv, text):
    out, err = io.StringIO(), io.StringIO()
    code = main(argv, stdin=io.StringIO(text), stdout=out, stderr=err)
    return code, out.getvalue(), err.getvalue()


def test_parse_chain():
    ws = parse_workspace(CHAIN)
    assert ws.quantale.name == "bool"
    assert ws.sets["X"].elements == ("lo", "hi")
    assert ws.categories["A"].hom.data.tolist() == [[1, 0], [1, 1]]
    # the diagonal defaults to the unit
    assert ws.categories["B"].hom.data.tolist() == [[1, 0], [1, 1]]
    with pytest.raises(LawViolation, match="unit"):
        parse_workspace(CHAIN + "category D on X from G\n")


def test_parse_godel_and_forward_reference():
    text = GODEL.replace("module M : X -> A from S\ncategory A on Y { y1 y2 = 1/2 }\n",
                         "category A on Y { y1 y2 = 1/2 }\nmodule M : X -> A from S\n")
    ws = parse_workspace(text)
    assert ws.matrices["T"].entry("z", "y2") == "1/2"
    assert ws.cocategories["C"].weight("y2") == "1"
    assert ws.functions["f"]("y2") == "x"
    with pytest.raises(ParseError, match="unknown"):
        parse_workspace(GODEL)


def test_table_quantale():
    text = """quantale table {
  elements no yes
  bottom no
  unit yes
  join no yes = yes
  tensor no yes = no
  tensor yes yes = yes
}
set X { a }
matrix M : X -> X { a a = yes }
"""
    ws = parse_workspace(text)
    assert ws.quantale.elements == ("no", "yes")
    assert ws.matrices["M"].entry("a", "a") == "yes"


def test_broken_table_quantale_is_rejected():
    text = """quantale table {
  elements 0 a 1
  bottom 0
  unit 1
  join 0 a = a; join 0 1 = 1; join a 1 = 1
  tensor a a = 1
  tensor 0 0 = 0; tensor 0 a = 0; tensor 0 1 = 0
}
"""
    with pytest.raises(LawViolation, match="distributivity"):
        parse_workspace(text)


@pytest.mark.parametrize("text, line, col, needle", [
    ("quantale bool\nset Y { a }\nmatrix M : X -> Y { }\n", 3, 12, "unknown set 'X'"),
    ("quantale bool\nset X { a a }\n", 2, 1, "repeated"),
    ("set X { a }\n", 1, 1, "quantale"),
    ("quantale bool\nset X { a }\nmatrix M : X -> X { a b = 1 }\n", 3, None, "'b'"),
    ("quantale bool\nbogus X\n", 2, 1, "bogus"),
])
def test_parse_errors_carry_positions(text, line, col, needle):
    with pytest.raises(ParseError) as info:
        parse_workspace(text)
    assert info.value.line == line
    if col is not None:
        assert info.value.col == col
    assert needle in str(info.value)


def test_load_time_law_violation():
    text = "quantale lukasiewicz 3\nset Z { z1 }\ncocategory C on Z { z1 = 0.5 }\n"
    with pytest.raises(LawViolation, match="cocomposition"):
        parse_workspace(text)
    code, out, err = run(["check", "C"], text)
    assert code == 2 and "cocomposition" in err


def test_round_trip():
    ws = parse_workspace(GODEL.replace("module M : X -> A from S\n", ""))
    q = ws.quantale
    p = measure_P(ws.categories["A"], ws.categories["A"])
    star = star_closure(ws.matrices["T"].__class__.top(q, ws.sets["Y"], ws.sets["Y"]))
    items = {"P": p, "S": ws.matrices["S"], "f": ws.functions["f"], "K": star, "C": ws.cocategories["C"]}
    back = parse_workspace(emit_workspace(q, items))
    assert back.cocategories["P"] == p
    assert back.matrices["S"] == ws.matrices["S"]
    assert back.functions["f"] == ws.functions["f"]
    assert back.categories["K"] == star
    assert back.cocategories["C"] == ws.cocategories["C"]


def test_cli_measure_json():
    code, out, _ = run(["measure", "A", "A", "--json"], CHAIN)
    assert code == 0
    obj = json.loads(out)
    assert obj["kind"] == "cocategory"
    assert sorted(e["q"] for e in obj["entries"]) == ["0", "1", "1", "1"]
    assert obj["entries"] == sorted(obj["entries"], key=lambda e: (e["t"], e["s"]))
    assert out == json.dumps(obj, sort_keys=True, ensure_ascii=False) + "\n"
    assert obj["max_steps"] <= 2


def test_cli_commands():
    assert run(["check", "A"], CHAIN)[0] == 0
    code, out, _ = run(["check", "G"], CHAIN)
    assert code == 1 and "unit" in out
    code, out, _ = run(["star", "G"], CHAIN)
    assert code == 0 and "category on X" in out
    assert run(["compose", "G", "G"], CHAIN)[0] == 0
    assert run(["tensor", "A", "A", "--json"], CHAIN)[0] == 0
    assert run(["hom", "G", "G"], CHAIN)[0] == 0
    assert run(["tensorcat", "C", "A"], GODEL.replace("module M : X -> A from S\n", ""))[0] == 0


def test_cli_godel_commands():
    text = GODEL.replace("module M : X -> A from S\n", "") + "module N : X -> A from S\n"
    code, out, _ = run(["compose", "T", "S"], text)
    assert code == 0 and "1/2" in out
    assert run(["compose", "S", "T"], text)[0] == 2
    assert run(["convolve", "C", "A"], text)[0] == 0
    assert run(["comeasure", "N", "N", "--json"], text)[0] == 0


def test_cli_verify():
    code, out, _ = run(["verify", "closed", "--bound", "1"], "quantale godel 3\n")
    assert code == 0 and "PASS" in out
    code, out, _ = run(["verify", "fibrant", "--bound", "2", "--seed", "3", "--json"], "quantale bool\n")
    assert code == 0 and json.loads(out)["seed"] == 3
    assert run(["verify", "nope"], "quantale bool\n")[0] == 2


def test_cli_cap_and_usage():
    text = "quantale bool\nset X { a b c d }\nmatrix M : X -> X { }\n"
    code, _, err = run(["hom", "M", "M", "--cap", "10"], text)
    assert code == 2 and "cap" in err
    assert run(["frobnicate"], "")[0] == 2
    assert run(["check"], CHAIN)[0] == 2
    assert run(["check", "missing"], CHAIN)[0] == 2


def test_cli_restrict_corestrict():
    text = CHAIN + """set W { w }
function f : W -> X { w = hi }
set T { t }
matrix Nm : T -> X { hi t = 1 }
module N : T -> A from Nm
cocategory C on X { lo = 1; hi = 0 }
set P { p }
function g : X -> P { lo = p; hi = p }
matrix Km : T -> X { lo t = 1 }
comodule K : T -> C from Km
"""
    code, out, _ = run(["restrict", "f", "N", "--json"], text)
    assert code == 0
    assert json.loads(out)["entries"] == [{"s": "t", "t": "w", "q": "1"}]
    code, out, _ = run(["corestrict", "g", "K", "--json"], text)
    assert code == 0
    assert json.loads(out)["entries"] == [{"s": "t", "t": "p", "q": "1"}]
    assert run(["tensormod", "K", "N"], text)[0] == 0


def test_module_entry_point(tmp_path):
    path = tmp_path / "chain.qs"
    path.write_text(CHAIN, encoding="utf-8")
    proc = subprocess.run([sys.executable, "-m", "qsweedler", "measure", "A", "A", "--input", str(path)],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0
    assert "cocategory on X^X" in proc.stdout
    missing = subprocess.run([sys.executable, "-m", "qsweedler", "check", "A", "--input", str(path) + "x"],
                             capture_output=True, text=True, check=False)
    assert missing.returncode == 2


def test_determinism_of_output():
    a = run(["measure", "A", "B", "--json"], CHAIN)[1]
    b = run(["measure", "A", "B", "--json"], CHAIN)[1]
    assert a == b
    weights = [e["q"] for e in json.loads(a)["entries"]]
    assert sorted(weights) == ["0", "1", "1", "1"]


def test_builtin_quantale_names():
    assert parse_workspace("quantale lukasiewicz 5\n").quantale == builtin("lukasiewicz", 5)
