"""Identity files: a tiny polynomial expression language.

Grammar (``#`` starts a line comment)::

    file   := { "let" name "=" expr ";" } expr "==" expr
    expr   := [ "+" | "-" ] term { ("+" | "-") term }
    term   := factor { ("*" | "/") factor }
    factor := base [ "^" natural ]
    base   := integer | name | var | "(" expr ")"
            | "coeff" "(" expr "," var "," natural ")"

``var`` is one of the built-in variables ``t u S X Y W x``.  The right
operand of ``/`` must be a nonzero integer literal.  ``coeff(e, v, k)`` is
the coefficient of ``v^k`` in ``e``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
import re

from .ring import VARIABLES, FiniteField, LocalizedIntegers, MultiPoly

KEYWORDS = ("let", "coeff")


class IdentitySyntaxError(ValueError):
    def __init__(self, message, line, col, source=None):
        self.message = message
        self.line = line
        self.col = col
        self.source = source
        loc = f"{source}:" if source else ""
        super().__init__(f"{loc}{line}:{col}: {message}")


# --------------------------------------------------------------------------
# AST
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class Span:
    line: int
    col: int


@dataclass(frozen=True)
class Num:
    value: int
    span: Span = field(default=None, compare=False, repr=False)


@dataclass(frozen=True)
class Name:
    id: str
    span: Span = field(default=None, compare=False, repr=False)


@dataclass(frozen=True)
class Var:
    id: str
    span: Span = field(default=None, compare=False, repr=False)


@dataclass(frozen=True)
class Neg:
    operand: object
    span: Span = field(default=None, compare=False, repr=False)


@dataclass(frozen=True)
class BinOp:
    op: str
    left: object
    right: object
    span: Span = field(default=None, compare=False, repr=False)


@dataclass(frozen=True)
class Pow:
    base: object
    exp: int
    span: Span = field(default=None, compare=False, repr=False)


@dataclass(frozen=True)
class Coeff:
    expr: object
    var: str
    k: int
    span: Span = field(default=None, compare=False, repr=False)


@dataclass(frozen=True)
class Let:
    name: str
    expr: object
    span: Span = field(default=None, compare=False, repr=False)


@dataclass(frozen=True)
class IdentityAst:
    bindings: tuple
    lhs: object
    rhs: object
    span: Span = field(default=None, compare=False, repr=False)

    def binding(self, name):
        for b in self.bindings:
            if b.name == name:
                return b.expr
        raise KeyError(name)


# --------------------------------------------------------------------------
# Lexer
# --------------------------------------------------------------------------


_TOKEN_RE = re.compile(
    r"(?P<ws>[ \t\r]+)|(?P<nl>\n)|(?P<comment>\#[^\n]*)"
    r"|(?P<int>\d+)|(?P<name>[A-Za-z_][A-Za-z0-9_]*)"
    r"|(?P<op>==|[-+*/^()=;,])"
)


@dataclass(frozen=True)
class Token:
    kind: str  # int, name, op, eof
    text: str
    line: int
    col: int
    offset: int


def tokenize(text, source=None):
    tokens = []
    line, line_start, pos = 1, 0, 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if not m:
            raise IdentitySyntaxError(
                f"unexpected character {text[pos]!r}", line, pos - line_start + 1, source
            )
        kind = m.lastgroup
        if kind == "nl":
            line += 1
            line_start = m.end()
        elif kind not in ("ws", "comment"):
            tokens.append(Token(kind, m.group(), line, pos - line_start + 1, pos))
        pos = m.end()
    tokens.append(Token("eof", "", line, pos - line_start + 1, pos))
    return tokens


# --------------------------------------------------------------------------
# Parser
# --------------------------------------------------------------------------


class _Parser:
    def __init__(self, text, source=None, extra_names=()):
        self.tokens = tokenize(text, source)
        self.i = 0
        self.source = source
        self.declared = set(extra_names)

    @property
    def tok(self):
        return self.tokens[self.i]

    def error(self, msg, tok=None):
        tok = tok or self.tok
        raise IdentitySyntaxError(msg, tok.line, tok.col, self.source)

    def advance(self):
        t = self.tok
        self.i += 1
        return t

    def accept(self, text):
        if self.tok.kind in ("op", "name") and self.tok.text == text:
            return self.advance()
        return None

    def expect(self, text, what=None):
        t = self.accept(text)
        if t is None:
            found = self.tok.text or "end of input"
            self.error(f"expected {what or repr(text)}, found {found!r}")
        return t

    def parse_file(self):
        start = self.tok
        bindings = []
        while self.tok.kind == "name" and self.tok.text == "let":
            let = self.advance()
            name_tok = self.tok
            if name_tok.kind != "name":
                self.error("expected a name after 'let'")
            name = name_tok.text
            if name in VARIABLES or name in KEYWORDS:
                self.error(f"cannot bind reserved name {name!r}", name_tok)
            self.advance()
            self.expect("=")
            e = self.parse_expr()
            self.expect(";")
            if name in self.declared:
                self.error(f"name {name!r} already declared", name_tok)
            self.declared.add(name)
            bindings.append(Let(name, e, Span(let.line, let.col)))
        lhs = self.parse_expr()
        self.expect("==", "'=='")
        rhs = self.parse_expr()
        if self.tok.kind != "eof":
            self.error(f"unexpected {self.tok.text!r} after goal")
        return IdentityAst(tuple(bindings), lhs, rhs, Span(start.line, start.col))

    def parse_lone_expr(self):
        e = self.parse_expr()
        if self.tok.kind != "eof":
            self.error(f"unexpected {self.tok.text!r}")
        return e

    def parse_expr(self):
        start = self.tok
        sign = None
        if self.tok.kind == "op" and self.tok.text in ("+", "-"):
            sign = self.advance().text
        node = self.parse_term()
        if sign == "-":
            node = Neg(node, Span(start.line, start.col))
        while self.tok.kind == "op" and self.tok.text in ("+", "-"):
            op = self.advance()
            right = self.parse_term()
            node = BinOp(op.text, node, right, Span(op.line, op.col))
        return node

    def parse_term(self):
        node = self.parse_factor()
        while self.tok.kind == "op" and self.tok.text in ("*", "/"):
            op = self.advance()
            if op.text == "/":
                t = self.tok
                if t.kind != "int":
                    self.error("division is only allowed by an integer literal")
                if int(t.text) == 0:
                    self.error("division by zero")
                right = self.parse_factor()
                if not isinstance(right, Num):
                    self.error("division is only allowed by an integer literal", t)
            else:
                right = self.parse_factor()
            node = BinOp(op.text, node, right, Span(op.line, op.col))
        return node

    def parse_factor(self):
        base = self.parse_base()
        if self.tok.kind == "op" and self.tok.text == "^":
            caret = self.advance()
            if self.tok.kind != "int":
                self.error("missing natural exponent after '^'", caret)
            exp = int(self.advance().text)
            return Pow(base, exp, Span(caret.line, caret.col))
        return base

    def parse_base(self):
        t = self.tok
        sp = Span(t.line, t.col)
        if t.kind == "int":
            self.advance()
            return Num(int(t.text), sp)
        if t.kind == "name":
            if t.text == "coeff":
                self.advance()
                self.expect("(")
                e = self.parse_expr()
                self.expect(",")
                v = self.tok
                if v.kind != "name" or v.text not in VARIABLES:
                    self.error("expected a built-in variable")
                self.advance()
                self.expect(",")
                k = self.tok
                if k.kind != "int":
                    self.error("expected a natural number")
                self.advance()
                self.expect(")")
                return Coeff(e, v.text, int(k.text), sp)
            if t.text == "let":
                self.error("'let' bindings must precede the goal")
            self.advance()
            if t.text in VARIABLES:
                return Var(t.text, sp)
            if t.text not in self.declared:
                self.error(f"undeclared name {t.text!r}", t)
            return Name(t.text, sp)
        if t.kind == "op" and t.text == "(":
            self.advance()
            e = self.parse_expr()
            self.expect(")")
            return e
        found = t.text or "end of input"
        self.error(f"expected an operand, found {found!r}")


def parse_identity(text, source=None):
    """Parse an identity file into an :class:`IdentityAst`."""
    return _Parser(text, source).parse_file()


# --------------------------------------------------------------------------
# Pretty printing
# --------------------------------------------------------------------------

_PREC = {"+": 1, "-": 1, "*": 2, "/": 2}


def pretty_expr(node, prec=0, lead=True):
    """Minimal-parenthesis rendering; ``lead`` marks the start of an expression."""
    if isinstance(node, Num):
        return str(node.value)
    if isinstance(node, (Name, Var)):
        return node.id
    if isinstance(node, Coeff):
        return f"coeff({pretty_expr(node.expr)}, {node.var}, {node.k})"
    if isinstance(node, Pow):
        s = f"{pretty_expr(node.base, 4, False)}^{node.exp}"
        return f"({s})" if prec > 3 else s
    if isinstance(node, Neg):
        s = "-" + pretty_expr(node.operand, 2, False)
        # a sign is only legal at the start of an expression
        return s if lead and prec <= 1 else f"({s})"
    if isinstance(node, BinOp):
        p = _PREC[node.op]
        wrap = p < prec
        if p == 1:
            left = pretty_expr(node.left, 1, True if wrap else lead)
        else:
            left = pretty_expr(node.left, 2, False)
        right = pretty_expr(node.right, p + 1, False)
        s = f"{left} {node.op} {right}"
        return f"({s})" if wrap else s
    raise TypeError(f"not an expression node: {node!r}")


def pretty(ast):
    lines = [f"let {b.name} = {pretty_expr(b.expr)};" for b in ast.bindings]
    lines.append(f"{pretty_expr(ast.lhs)} == {pretty_expr(ast.rhs)}")
    return "\n".join(lines) + "\n"


# --------------------------------------------------------------------------
# Evaluation
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class Verdict:
    holds: bool
    lhs: MultiPoly
    rhs: MultiPoly
    difference: MultiPoly


def _eval(node, env, dom):
    if isinstance(node, Num):
        return MultiPoly.const(dom, node.value)
    if isinstance(node, Var):
        return MultiPoly.var(dom, node.id)
    if isinstance(node, Name):
        return env[node.id]
    if isinstance(node, Neg):
        return -_eval(node.operand, env, dom)
    if isinstance(node, Pow):
        return _eval(node.base, env, dom) ** node.exp
    if isinstance(node, Coeff):
        return _eval(node.expr, env, dom).coeff_in(node.var, node.k)
    if isinstance(node, BinOp):
        left = _eval(node.left, env, dom)
        if node.op == "/":
            return left.exact_div_int(node.right.value)
        right = _eval(node.right, env, dom)
        if node.op == "+":
            return left + right
        if node.op == "-":
            return left - right
        return left * right
    raise TypeError(f"not an expression node: {node!r}")


def _base_env(dom):
    if isinstance(dom, FiniteField) and dom.r > 1:
        return {dom.generator_name: MultiPoly.const(dom, dom.generator())}
    return {}


def evaluate_identity(ast, domain=None):
    """Exact verdict for ``lhs == rhs`` over ``domain`` (default Z[1/210])."""
    dom = domain or LocalizedIntegers()
    env = _base_env(dom)
    for b in ast.bindings:
        env[b.name] = _eval(b.expr, env, dom)
    lhs = _eval(ast.lhs, env, dom)
    rhs = _eval(ast.rhs, env, dom)
    diff = lhs - rhs
    return Verdict(diff.is_zero(), lhs, rhs, diff)


def evaluate_expr(node, domain=None, env=None):
    dom = domain or LocalizedIntegers()
    full = _base_env(dom)
    full.update(env or {})
    return _eval(node, full, dom)


def parse_polynomial(text, domain=None):
    """Parse a canonical polynomial string (as printed by ``MultiPoly.to_str``)."""
    dom = domain or LocalizedIntegers()
    extra = _base_env(dom)
    node = _Parser(text, extra_names=extra).parse_lone_expr()
    return evaluate_expr(node, dom)


def literal_tokens(text):
    """Integer literal tokens of an identity file (for mutation testing)."""
    return [t for t in tokenize(text) if t.kind == "int"]


def mutate_literal(text, token, delta=1):
    new = str(int(token.text) + delta)
    return text[: token.offset] + new + text[token.offset + len(token.text):]
