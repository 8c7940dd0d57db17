"""Input files for the nfc driver.

A file is a list of statements, each ended by ';'.  '#' starts a comment.

    f = a5*x1^2 + a9*y1^2;          scalar of the Eulerian part
    g1 = ...; g2 = ...;             rotational scalars
    b[1,0] = c; a1[0,1] = ...;      first-level coefficients given directly
    parameters mu1, mu2;
    frequencies omega1, omega2;     names or rationals, e.g. 1, 17/7
    symbols a5, a9;                 optional: declare every coefficient symbol
    mode orbital; degree 3; mu_degree 2; subst a5 = 1/2;

Expressions use + - * ^ with natural exponents, integers and p/q
rationals.  x1, y1, x2, y2 are the real phase variables; I is reserved.
"""

from dataclasses import dataclass, field

from gmpy2 import mpq

from .poly import Poly, SymbolTable
from .ratfn import RatFn

PHASE_REAL = ("x1", "y1", "x2", "y2")
MODES = ("state", "orbital", "parametric")
TARGETS = ("f", "g1", "g2")
EXP_LIMIT = 100
DEPTH_LIMIT = 200


class ParseError(ValueError):
    def __init__(self, msg, line, col):
        super().__init__(f"line {line}, column {col}: {msg}")
        self.msg = msg
        self.line = line
        self.col = col


# ---------------------------------------------------------------- lexer

@dataclass(frozen=True)
class Tok:
    kind: str     # int, id, op, end
    text: str
    line: int
    col: int


_OPS = set("+-*/^()[],;=")


def tokenize(text: str):
    out = []
    i, line, col = 0, 1, 1
    n = len(text)
    while i < n:
        c = text[i]
        if c == "\n":
            i, line, col = i + 1, line + 1, 1
            continue
        if c in " \t\r":
            i, col = i + 1, col + 1
            continue
        if c == "#":
            while i < n and text[i] != "\n":
                i += 1
            continue
        if c.isascii() and c.isdigit():
            j = i
            while j < n and text[j].isascii() and text[j].isdigit():
                j += 1
            out.append(Tok("int", text[i:j], line, col))
            col += j - i
            i = j
            continue
        if c.isascii() and (c.isalpha() or c == "_"):
            j = i
            while j < n and text[j].isascii() and (text[j].isalnum() or text[j] == "_"):
                j += 1
            out.append(Tok("id", text[i:j], line, col))
            col += j - i
            i = j
            continue
        if c in _OPS:
            out.append(Tok("op", c, line, col))
            i, col = i + 1, col + 1
            continue
        raise ParseError(f"unexpected character {c!r}", line, col)
    out.append(Tok("end", "", line, col))
    return out


# ---------------------------------------------------------------- AST

@dataclass(frozen=True)
class Num:
    value: object
    pos: tuple


@dataclass(frozen=True)
class Var:
    name: str
    pos: tuple


@dataclass(frozen=True)
class Bin:
    op: str
    left: object
    right: object
    pos: tuple


@dataclass(frozen=True)
class Neg:
    arg: object
    pos: tuple


@dataclass(frozen=True)
class Pow:
    base: object
    exp: int
    pos: tuple


def identifiers(node, acc=None):
    acc = {} if acc is None else acc
    if isinstance(node, Var):
        acc.setdefault(node.name, node.pos)
    elif isinstance(node, Bin):
        identifiers(node.left, acc)
        identifiers(node.right, acc)
    elif isinstance(node, (Neg, Pow)):
        identifiers(node.arg if isinstance(node, Neg) else node.base, acc)
    return acc


# ---------------------------------------------------------------- parser

class _Parser:
    def __init__(self, toks, division=False):
        self.toks = toks
        self.i = 0
        self.division = division
        self.depth = 0

    @property
    def tok(self):
        return self.toks[self.i]

    def next(self):
        t = self.toks[self.i]
        self.i += 1
        return t

    def error(self, msg, tok=None):
        t = tok or self.tok
        return ParseError(msg, t.line, t.col)

    def expect(self, text):
        t = self.tok
        if t.kind == "end" or t.text != text:
            raise self.error(f"expected {text!r}" + (f", found {t.text!r}" if t.text else ", found end of input"))
        return self.next()

    def is_op(self, text):
        return self.tok.kind == "op" and self.tok.text == text

    def expr(self):
        t = self.tok
        if self.is_op("-") or self.is_op("+"):
            op = self.next().text
            node = self.term()
            if op == "-":
                node = Neg(node, (t.line, t.col))
        else:
            node = self.term()
        while self.is_op("+") or self.is_op("-"):
            op = self.next()
            node = Bin(op.text, node, self.term(), (op.line, op.col))
        return node

    def term(self):
        node = self.factor()
        while self.is_op("*") or (self.division and self.is_op("/")):
            op = self.next()
            node = Bin(op.text, node, self.factor(), (op.line, op.col))
        return node

    def factor(self):
        base = self.atom()
        if self.is_op("^"):
            op = self.next()
            t = self.tok
            if self.is_op("-") or (self.is_op("(") and self.toks[self.i + 1].text == "-"):
                raise self.error("negative exponent")
            if t.kind != "int":
                raise self.error("exponent must be a natural number")
            self.next()
            e = int(t.text)
            if e > EXP_LIMIT:
                raise ParseError(f"exponent too large (limit {EXP_LIMIT})", t.line, t.col)
            return Pow(base, e, (op.line, op.col))
        return base

    def atom(self):
        t = self.tok
        if t.kind == "int":
            self.next()
            if self.is_op("/") and not self.division:
                self.next()
                d = self.tok
                if d.kind != "int":
                    raise self.error("expected an integer denominator")
                self.next()
                if int(d.text) == 0:
                    raise ParseError("zero denominator", d.line, d.col)
                return Num(mpq(int(t.text), int(d.text)), (t.line, t.col))
            return Num(mpq(int(t.text)), (t.line, t.col))
        if t.kind == "id":
            self.next()
            if t.text == "I":
                raise ParseError("I is reserved for the imaginary unit and cannot appear in inputs", t.line, t.col)
            return Var(t.text, (t.line, t.col))
        if self.is_op("("):
            self.next()
            self.depth += 1
            if self.depth > DEPTH_LIMIT:
                raise self.error("parentheses nested too deeply", t)
            node = self.expr()
            self.expect(")")
            self.depth -= 1
            return node
        if t.kind == "end":
            raise self.error("unexpected end of input")
        raise self.error(f"unexpected {t.text!r}")


def parse_expression(text, division=False):
    """Parse one expression; division=True also allows '/' between arbitrary factors."""
    p = _Parser(tokenize(text), division)
    node = p.expr()
    if p.tok.kind != "end":
        raise p.error(f"unexpected {p.tok.text!r}")
    return node


# ---------------------------------------------------------------- input spec

@dataclass
class InputSpec:
    f: object = None
    g1: object = None
    g2: object = None
    table: dict = field(default_factory=dict)     # (kind, m, n) -> AST, kind in E, T1, T2
    parameters: tuple = ()
    frequencies: tuple = ("omega1", "omega2")       # names or mpq values
    symbols: tuple = None                           # declared coefficient symbols, or None
    mode: str = "state"
    N: int = None
    M: int = None
    subst: dict = field(default_factory=dict)
    positions: dict = field(default_factory=dict)  # statement target -> (line, col)

    def has_expressions(self):
        return any(x is not None for x in (self.f, self.g1, self.g2))

    def coefficient_names(self):
        """Symbols other than phase variables, frequencies and parameters, in order of appearance."""
        seen = {}
        for node in (self.f, self.g1, self.g2, *self.table.values()):
            if node is not None:
                identifiers(node, seen)
        skip = set(PHASE_REAL) | set(self.parameters) | {w for w in self.frequencies if isinstance(w, str)}
        names = [nm for nm in seen if nm not in skip]
        if self.symbols is not None:
            names = list(self.symbols) + [nm for nm in names if nm not in self.symbols]
        return names


_TABLE_KINDS = {"b": "E", "a1": "T1", "a2": "T2"}


def _nat(p, what):
    t = p.tok
    if t.kind != "int":
        raise p.error(f"{what} must be a natural number")
    p.next()
    return int(t.text)


def _name_list(p):
    names = []
    while True:
        t = p.tok
        if t.kind != "id":
            raise p.error("expected a name")
        if t.text in PHASE_REAL or t.text == "I":
            raise p.error(f"{t.text} is reserved")
        names.append(p.next().text)
        if not p.is_op(","):
            return tuple(names)
        p.next()


def _frequency(p):
    t = p.tok
    if t.kind == "id":
        if t.text in PHASE_REAL or t.text == "I":
            raise p.error(f"{t.text} is reserved")
        return p.next().text
    if t.kind == "int" or p.is_op("-"):
        node = p.atom() if t.kind == "int" else p.expr()
        value = _const_value(node)
        if value is None or value == 0:
            raise ParseError("a numeric frequency must be a nonzero rational", t.line, t.col)
        return value
    raise p.error("expected a frequency name or a rational")


def _const_value(node):
    if isinstance(node, Num):
        return node.value
    if isinstance(node, Neg):
        v = _const_value(node.arg)
        return None if v is None else -v
    return None


def parse_input(text) -> InputSpec:
    """Parse an input file (str or bytes).  Errors carry line and column."""
    if isinstance(text, (bytes, bytearray)):
        try:
            text = bytes(text).decode("utf-8")
        except UnicodeDecodeError as e:
            head = bytes(text)[:e.start].decode("utf-8", "replace")
            line = head.count("\n") + 1
            col = len(head) - (head.rfind("\n") + 1) + 1
            raise ParseError("invalid UTF-8", line, col) from None
    p = _Parser(tokenize(text))
    spec = InputSpec()
    seen_targets = {}
    while p.tok.kind != "end":
        t = p.tok
        if t.kind != "id":
            raise p.error(f"expected a statement, found {t.text!r}")
        word = p.next().text
        pos = (t.line, t.col)
        if word in TARGETS and p.is_op("="):
            p.next()
            if word in seen_targets:
                raise ParseError(f"{word} assigned twice", *pos)
            seen_targets[word] = pos
            setattr(spec, word, p.expr())
            spec.positions[word] = pos
        elif word in _TABLE_KINDS and p.is_op("["):
            p.next()
            m = _nat(p, "index")
            p.expect(",")
            n = _nat(p, "index")
            p.expect("]")
            p.expect("=")
            key = (_TABLE_KINDS[word], m, n)
            if key in spec.table:
                raise ParseError(f"{word}[{m},{n}] assigned twice", *pos)
            spec.table[key] = p.expr()
            spec.positions[key] = pos
        elif word in ("parameters", "params"):
            spec.parameters = _name_list(p)
        elif word == "symbols":
            spec.symbols = _name_list(p)
        elif word == "frequencies":
            w1 = _frequency(p)
            p.expect(",")
            w2 = _frequency(p)
            spec.frequencies = (w1, w2)
        elif word == "mode":
            m = p.tok
            if m.kind != "id" or m.text not in MODES:
                raise p.error(f"mode must be one of {', '.join(MODES)}")
            spec.mode = p.next().text
        elif word == "degree":
            spec.N = _nat(p, "degree")
        elif word == "mu_degree":
            spec.M = _nat(p, "mu_degree")
        elif word == "subst":
            nm = p.tok
            if nm.kind != "id":
                raise p.error("expected a symbol name")
            p.next()
            p.expect("=")
            v = _const_value(p.expr())
            if v is None:
                raise ParseError("subst needs a rational value", nm.line, nm.col)
            spec.subst[nm.text] = v
        else:
            raise ParseError(f"unknown statement {word!r}", *pos)
        p.expect(";")
    if spec.has_expressions() and spec.table:
        raise ParseError("give either f, g1, g2 or a coefficient table, not both", 1, 1)
    _check_symbols(spec)
    return spec


def _check_symbols(spec):
    used = {}
    for key, node in [("f", spec.f), ("g1", spec.g1), ("g2", spec.g2), *spec.table.items()]:
        if node is not None:
            identifiers(node, used)
    if spec.table:
        for nm in PHASE_REAL:
            if nm in used:
                raise ParseError(f"{nm} cannot appear in a coefficient table", *used[nm])
    if spec.symbols is None:
        return
    known = set(PHASE_REAL) | set(spec.symbols) | set(spec.parameters)
    known |= {w for w in spec.frequencies if isinstance(w, str)}
    for nm, pos in used.items():
        if nm not in known:
            raise ParseError(f"unknown symbol {nm!r}", *pos)


# ---------------------------------------------------------------- evaluation

def evaluate(node, table: SymbolTable, ratfn=False):
    """Value of an AST over table: Poly, or RatFn when ratfn is set (needed for '/')."""
    if isinstance(node, Num):
        return RatFn.const(table, node.value) if ratfn else Poly.const(table, node.value)
    if isinstance(node, Var):
        if node.name not in table:
            raise ParseError(f"unknown symbol {node.name!r}", *node.pos)
        return RatFn.var(table, node.name) if ratfn else Poly.var(table, node.name)
    if isinstance(node, Neg):
        return -evaluate(node.arg, table, ratfn)
    if isinstance(node, Pow):
        return evaluate(node.base, table, ratfn) ** node.exp
    a = evaluate(node.left, table, ratfn)
    b = evaluate(node.right, table, ratfn)
    if node.op == "+":
        return a + b
    if node.op == "-":
        return a - b
    if node.op == "*":
        return a * b
    if b.is_zero():
        raise ParseError("division by zero", *node.pos)
    return a / b


def formula(text, table: SymbolTable) -> RatFn:
    """Closed-form rational expression (with '/') as a RatFn over table."""
    return evaluate(parse_expression(text, division=True), table, ratfn=True)
