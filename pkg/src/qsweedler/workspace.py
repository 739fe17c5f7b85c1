"""Reading and writing the line-oriented workspace format.

A workspace fixes one quantale and then names sets, matrices, functions,
(co)categories and (co)modules::

    quantale godel 3
    set X { a b }
    matrix G : X -> X { b a = 1/2 }
    category A on X from G

Braces, ``;``, ``=`` and ``->`` are punctuation.  Braces must stand alone
so that labels such as ``{a↦b}`` survive a round trip.  Inside a block a
newline ends an entry just like ``;`` does.
"""
from dataclasses import dataclass, field

import numpy as np

from . import config
from .cat import QCategory, QCocategory, verify_category, verify_cocategory
from .errors import LawViolation, ValidationError
from .mod import QComodule, QModule, verify_comodule, verify_module
from .quantale import Quantale, builtin, verify_quantale
from .vmat import FinSet, Function, VMatrix

PUNCT = ("{", "}", ";", "=", ":", "->")
CONFIG_KEYS = ("cap", "enumeration", "suite_cases", "bound", "seed")


class ParseError(ValidationError):

    def __init__(self, message, line=0, col=0):
        super().__init__(f"line {line}, column {col}: {message}")
        self.line, self.col = line, col


@dataclass
class Token:
    text: str
    line: int
    col: int

    @property
    def punct(self):
        return self.text in PUNCT


def _split_word(word, line, col):
    # peel punctuation glued to a word; braces only count when they stand alone
    if word in PUNCT or word == "\n":
        return [Token(word, line, col)]
    out = []
    parts = word.split("->")
    for i, part in enumerate(parts):
        if i:
            out.append(Token("->", line, col))
            col += 2
        pieces = part.split("=")
        for j, piece in enumerate(pieces):
            if j:
                out.append(Token("=", line, col))
                col += 1
            trail = []
            while piece.endswith((";", ":")) and len(piece) > 1:
                trail.insert(0, Token(piece[-1], line, col + len(piece) - 1))
                piece = piece[:-1]
            if piece:
                out.append(Token(piece, line, col))
            out.extend(trail)
            col += len(piece) + len(trail)
    return out


def tokenize(text):
    tokens = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0]
        col = 0
        for word in line.split():
            col = line.index(word, col)
            tokens.extend(_split_word(word, lineno, col + 1))
            col += len(word)
        tokens.append(Token("\n", lineno, len(line) + 1))
    return tokens


@dataclass
class Workspace:
    quantale: Quantale = None
    sets: dict = field(default_factory=dict)
    matrices: dict = field(default_factory=dict)
    functions: dict = field(default_factory=dict)
    categories: dict = field(default_factory=dict)
    cocategories: dict = field(default_factory=dict)
    modules: dict = field(default_factory=dict)
    comodules: dict = field(default_factory=dict)
    config: dict = field(default_factory=dict)

    _TABLES = ("sets", "matrices", "functions", "categories", "cocategories", "modules", "comodules")

    def get(self, name):
        for table in self._TABLES:
            if name in getattr(self, table):
                return getattr(self, table)[name]
        raise ValidationError(f"unknown name {name!r}")

    def kind_of(self, name):
        for table in self._TABLES:
            if name in getattr(self, table):
                return table
        return None

    def names(self):
        return [n for table in self._TABLES for n in getattr(self, table)]

    def limits(self):
        return {k: v for k, v in self.config.items() if k in ("cap", "enumeration", "suite_cases")}


class _Parser:

    def __init__(self, text):
        self.tokens = tokenize(text)
        self.pos = 0
        self.ws = Workspace()

    # token helpers

    def peek(self):
        return self.tokens[self.pos] if self.pos < len(self.tokens) else Token("", 0, 0)

    def next(self):
        tok = self.peek()
        if not tok.text:
            last = self.tokens[-1] if self.tokens else Token("", 1, 1)
            raise ParseError("unexpected end of input", last.line, last.col)
        self.pos += 1
        return tok

    def expect(self, text):
        tok = self.next()
        if tok.text != text:
            raise ParseError(f"expected {text!r}, found {_show(tok)}", tok.line, tok.col)
        return tok

    def word(self, what="a name"):
        tok = self.next()
        if tok.punct or tok.text == "\n":
            raise ParseError(f"expected {what}, found {_show(tok)}", tok.line, tok.col)
        return tok

    def skip_newlines(self):
        while self.peek().text == "\n":
            self.pos += 1

    def end_statement(self):
        tok = self.peek()
        if tok.text not in ("\n", ""):
            raise ParseError(f"unexpected {_show(tok)} after statement", tok.line, tok.col)
        self.skip_newlines()

    def block(self):
        """Read ``{ ... }`` into a list of entries, each a list of tokens."""
        self.expect("{")
        entries, current = [], []
        while True:
            tok = self.next()
            if tok.text == "}":
                if current:
                    entries.append(current)
                return entries
            if tok.text in (";", "\n"):
                if current:
                    entries.append(current)
                current = []
            elif tok.text == "{":
                raise ParseError("nested '{'", tok.line, tok.col)
            else:
                current.append(tok)

    # resolution

    def fresh(self, tok):
        if self.ws.kind_of(tok.text) is not None:
            raise ParseError(f"name {tok.text!r} is already defined", tok.line, tok.col)
        return tok.text

    def lookup(self, tok, table, what):
        found = getattr(self.ws, table).get(tok.text)
        if found is None:
            other = self.ws.kind_of(tok.text)
            hint = f" (it is one of the {other})" if other else ""
            raise ParseError(f"unknown {what} {tok.text!r}{hint}", tok.line, tok.col)
        return found

    def need_quantale(self, tok):
        if self.ws.quantale is None:
            raise ParseError("a quantale must be declared first", tok.line, tok.col)
        return self.ws.quantale

    def value(self, tok):
        q = self.need_quantale(tok)
        try:
            return q.index(tok.text)
        except ValidationError as exc:
            raise ParseError(str(exc), tok.line, tok.col) from None

    def element(self, s, tok):
        try:
            return s.index(tok.text)
        except ValidationError as exc:
            raise ParseError(str(exc), tok.line, tok.col) from None

    # statements

    def parse(self):
        self.skip_newlines()
        while self.peek().text:
            tok = self.word("a statement")
            handler = getattr(self, f"stmt_{tok.text}", None)
            if handler is None:
                raise ParseError(f"unknown statement {tok.text!r}", tok.line, tok.col)
            handler(tok)
            self.end_statement()
        if self.ws.quantale is None:
            raise ParseError("no quantale declared", 1, 1)
        return self.ws

    def stmt_quantale(self, head):
        if self.ws.quantale is not None:
            raise ParseError("only one quantale per workspace", head.line, head.col)
        kind = self.word("a quantale kind")
        if kind.text == "bool":
            self.ws.quantale = builtin("bool")
        elif kind.text in ("godel", "lukasiewicz"):
            n = self.word("a chain length")
            try:
                self.ws.quantale = builtin(kind.text, int(n.text))
            except ValueError:
                raise ParseError(f"chain length must be an integer, got {n.text!r}", n.line, n.col) from None
            except ValidationError as exc:
                raise ParseError(str(exc), n.line, n.col) from None
        elif kind.text == "table":
            self.ws.quantale = self.quantale_table(kind)
        else:
            raise ParseError(f"unknown quantale {kind.text!r}", kind.line, kind.col)

    def quantale_table(self, head):
        elements, bottom, unit, join, tensor = None, None, None, {}, {}
        for entry in self.block():
            key = entry[0]
            if key.text == "elements":
                elements = [t.text for t in entry[1:]]
            elif key.text in ("bottom", "unit") and len(entry) == 2:
                if key.text == "bottom":
                    bottom = entry[1].text
                else:
                    unit = entry[1].text
            elif key.text in ("join", "tensor") and len(entry) == 5 and entry[3].text == "=":
                (join if key.text == "join" else tensor)[entry[1].text, entry[2].text] = entry[4].text
            else:
                raise ParseError(f"bad quantale table entry starting with {key.text!r}", key.line, key.col)
        if elements is None or bottom is None or unit is None:
            raise ParseError("a quantale table needs elements, bottom and unit", head.line, head.col)
        # unlisted pairs: the symmetric partner, else what idempotence, bottom and unit force
        for a in elements:
            join.setdefault((a, a), a)
            for b in elements:
                join.setdefault((bottom, b), b)
                tensor.setdefault((bottom, b), bottom)
                tensor.setdefault((unit, b), b)
        jt, tt = [], []
        for a in elements:
            jrow, trow = [], []
            for b in elements:
                for table, row, what in ((join, jrow, "join"), (tensor, trow, "tensor")):
                    v = table.get((a, b), table.get((b, a)))
                    if v is None:
                        raise ParseError(f"{what} {a} {b} is not given", head.line, head.col)
                    row.append(v)
            jt.append(jrow)
            tt.append(trow)
        try:
            q = Quantale("table", elements, jt, bottom, tt, unit)
        except ValidationError as exc:
            raise ParseError(str(exc), head.line, head.col) from None
        report = verify_quantale(q)
        if not report.ok:
            raise LawViolation(report)
        return q

    def stmt_set(self, head):
        name = self.fresh(self.word())
        items = [t.text for entry in self.block() for t in entry]
        try:
            self.ws.sets[name] = FinSet(name, items)
        except ValidationError as exc:
            raise ParseError(str(exc), head.line, head.col) from None

    def arrow(self):
        src = self.lookup(self.word("a set"), "sets", "set")
        self.expect("->")
        tgt_tok = self.word("a set")
        return src, tgt_tok

    def entries(self, head, keys):
        """Parse ``k1 .. kn = v`` entries and an optional ``default = v``."""
        out, default = [], None
        for entry in self.block():
            if len(entry) == 3 and entry[0].text == "default" and entry[1].text == "=":
                default = self.value(entry[2])
                continue
            if len(entry) != keys + 2 or entry[keys].text != "=":
                tok = entry[0]
                raise ParseError(f"expected {keys} label(s), '=', and a value", tok.line, tok.col)
            out.append((entry[:keys], entry[keys + 1]))
        return out, default

    def matrix_body(self, head, src, tgt):
        q = self.need_quantale(head)
        entries, default = self.entries(head, 2)
        data = np.full((len(tgt), len(src)), q.bottom if default is None else default, dtype=np.int64)
        for (ty, tx), v in entries:
            data[self.element(tgt, ty), self.element(src, tx)] = self.value(v)
        return VMatrix(q, src, tgt, data), {(self.element(tgt, ty), self.element(src, tx)) for (ty, tx), _ in entries}

    def stmt_matrix(self, head):
        name = self.fresh(self.word())
        self.expect(":")
        src, tgt_tok = self.arrow()
        tgt = self.lookup(tgt_tok, "sets", "set")
        self.ws.matrices[name], _ = self.matrix_body(head, src, tgt)

    def stmt_function(self, head):
        name = self.fresh(self.word())
        self.expect(":")
        src, tgt_tok = self.arrow()
        tgt = self.lookup(tgt_tok, "sets", "set")
        mapping = {}
        for entry in self.block():
            if len(entry) != 3 or entry[1].text != "=":
                raise ParseError("function entries look like 'a = b'", entry[0].line, entry[0].col)
            self.element(src, entry[0])
            self.element(tgt, entry[2])
            mapping[entry[0].text] = entry[2].text
        try:
            self.ws.functions[name] = Function.from_mapping(src, tgt, mapping)
        except ValidationError as exc:
            raise ParseError(str(exc), head.line, head.col) from None

    def stmt_category(self, head):
        name = self.fresh(self.word())
        self.expect("on")
        x = self.lookup(self.word("a set"), "sets", "set")
        q = self.need_quantale(head)
        if self.peek().text == "from":
            self.next()
            tok = self.word("a matrix")
            m = self.lookup(tok, "matrices", "matrix")
            if m.src != x or m.tgt != x:
                raise ParseError(f"matrix {tok.text} is not an endo-matrix on {x.name}", tok.line, tok.col)
        else:
            m, given = self.matrix_body(head, x, x)
            data = np.array(m.data)
            for i in range(len(x)):
                if (i, i) not in given:
                    data[i, i] = q.unit
            m = VMatrix(q, x, x, data)
        report = verify_category(m)
        if not report.ok:
            raise LawViolation(report)
        self.ws.categories[name] = QCategory(m, check=False)

    def stmt_cocategory(self, head):
        name = self.fresh(self.word())
        self.expect("on")
        z = self.lookup(self.word("a set"), "sets", "set")
        q = self.need_quantale(head)
        entries, default = self.entries(head, 1)
        weights = np.full(len(z), q.bottom if default is None else default, dtype=np.int64)
        for (tz,), v in entries:
            weights[self.element(z, tz)] = self.value(v)
        report = verify_cocategory(q, z, weights)
        if not report.ok:
            raise LawViolation(report)
        self.ws.cocategories[name] = QCocategory(q, z, weights, check=False)

    def _modlike(self, head, table, over_table, verify, cls, what):
        name = self.fresh(self.word())
        self.expect(":")
        src = self.lookup(self.word("a set"), "sets", "set")
        self.expect("->")
        over = self.lookup(self.word(what), over_table, what)
        self.expect("from")
        tok = self.word("a matrix")
        m = self.lookup(tok, "matrices", "matrix")
        if m.src != src or m.tgt != over.objects:
            raise ParseError(f"matrix {tok.text} is not {src.name} -> {over.objects.name}", tok.line, tok.col)
        report = verify(over, m)
        if not report.ok:
            raise LawViolation(report)
        getattr(self.ws, table)[name] = cls(over, m, check=False)

    def stmt_module(self, head):
        self._modlike(head, "modules", "categories", verify_module, QModule, "category")

    def stmt_comodule(self, head):
        self._modlike(head, "comodules", "cocategories", verify_comodule, QComodule, "cocategory")

    def stmt_config(self, head):
        key = self.word("a config key")
        if key.text not in CONFIG_KEYS:
            raise ParseError(f"unknown config key {key.text!r}", key.line, key.col)
        self.expect("=")
        val = self.word("a number")
        try:
            self.ws.config[key.text] = int(val.text)
        except ValueError:
            raise ParseError(f"config values are integers, got {val.text!r}", val.line, val.col) from None


def _show(tok):
    if tok.text == "\n":
        return "end of line"
    return repr(tok.text) if tok.text else "end of input"


def parse_workspace(text):
    """Parse and verify a workspace; raises :class:`ParseError` or :class:`LawViolation`."""
    return _Parser(text).parse()


# emitting

def emit_quantale(q):
    spec = getattr(q, "spec", None)
    if spec:
        return "quantale " + " ".join(str(s) for s in spec)
    lines = ["quantale table {", "  elements " + " ".join(q.elements),
             f"  bottom {q.label(q.bottom)}", f"  unit {q.label(q.unit)}"]
    n = len(q)
    for i in range(n):
        for j in range(i, n):
            lines.append(f"  join {q.label(i)} {q.label(j)} = {q.label(q.join_table[i, j])}")
    for i in range(n):
        for j in range(i, n):
            lines.append(f"  tensor {q.label(i)} {q.label(j)} = {q.label(q.tensor_table[i, j])}")
    lines.append("}")
    return "\n".join(lines)


def emit_set(s):
    return f"set {s.name} {{ {' '.join(s.elements)} }}"


def _matrix_lines(m):
    q = m.q
    return [f"  {m.tgt.elements[y]} {m.src.elements[x]} = {q.label(m.data[y, x])}"
            for y in range(len(m.tgt)) for x in range(len(m.src)) if m.data[y, x] != q.bottom]


def emit_matrix(name, m):
    body = _matrix_lines(m)
    return "\n".join([f"matrix {name} : {m.src.name} -> {m.tgt.name} {{", *body, "}"])


def emit(name, value):
    """Workspace statements defining ``value`` under ``name`` (carrier sets included)."""
    sets, lines = {}, []

    def need(s):
        sets.setdefault(s.name, s)

    if isinstance(value, FinSet):
        return emit_set(value)
    if isinstance(value, VMatrix):
        need(value.src)
        need(value.tgt)
        lines.append(emit_matrix(name, value))
    elif isinstance(value, Function):
        need(value.dom)
        need(value.cod)
        body = [f"  {a} = {value.cod.elements[t]}" for a, t in zip(value.dom, value.table)]
        lines.append("\n".join([f"function {name} : {value.dom.name} -> {value.cod.name} {{", *body, "}"]))
    elif isinstance(value, QCategory):
        need(value.objects)
        lines.append(emit_matrix(f"{name}_hom", value.hom))
        lines.append(f"category {name} on {value.objects.name} from {name}_hom")
    elif isinstance(value, QCocategory):
        need(value.objects)
        q = value.q
        body = [f"  {z} = {q.label(w)}" for z, w in zip(value.objects, value.weights)]
        lines.append("\n".join([f"cocategory {name} on {value.objects.name} {{", *body, "}"]))
    elif isinstance(value, (QModule, QComodule)):
        kind = "module" if isinstance(value, QModule) else "comodule"
        over = emit(f"{name}_over", value.over)
        need(value.mat.src)
        lines.append(over)
        lines.append(emit_matrix(f"{name}_mat", value.mat))
        lines.append(f"{kind} {name} : {value.mat.src.name} -> {name}_over from {name}_mat")
    else:
        raise ValidationError(f"cannot emit {type(value).__name__}")
    head = [emit_set(s) for s in sets.values()]
    return "\n".join(head + lines)


def emit_workspace(q, items):
    """A complete workspace text for ``items`` (name -> structure), deduplicating sets."""
    out, seen = [emit_quantale(q)], set()
    for name, value in items.items():
        for line in emit(name, value).split("\n"):
            if line.startswith("set "):
                set_name = line.split()[1]
                if set_name in seen:
                    continue
                seen.add(set_name)
            out.append(line)
    return "\n".join(out) + "\n"


def apply_limits(ws):
    """Context manager applying the workspace's resource config."""
    return config.limits(**ws.limits())
