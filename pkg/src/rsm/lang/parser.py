"""Lexer and recursive-descent parser for the reversible language.

Grammar (whitespace-insensitive, ``//`` comments):

    program    := procedure+
    procedure  := "procedure" IDENT "(" [param {"," param}] ")" stmt*
    param      := "int" IDENT ["[" "]"] | "stack" IDENT
    stmt       := lval ("+="|"-="|"*=") rhs ["mod" IDENT]
                | "if" expr "then" stmt* ["else" stmt*] "fi" expr
                | "from" expr "loop" stmt* "until" expr
                | "iterate" "int" IDENT "=" expr ("to"|"downto") expr stmt* "end"
                | "local" "int" IDENT "=" expr stmt* "delocal" "int" IDENT "=" expr
                | ("call"|"uncall") IDENT "(" [expr {"," expr}] ")"
                | ("push"|"pop") "(" lval "," IDENT ")"
    rhs        := "inv" "(" expr ")"          (only after "*=")
                | expr
    lval       := IDENT ["[" expr "]"]

Expression precedence, loosest to tightest: comparisons (= != <), additive
(+ -), multiplicative (*), power (^, right-associative), atoms.  Unary
minus is accepted on integer literals only.
"""

from __future__ import annotations

from typing import NamedTuple

from ..errors import ParseError
from ..modarith import WORD_MAX
from . import ast
from .validate import validate

KEYWORDS = frozenset(
    """procedure int stack if then else fi from loop until iterate to downto end
       local delocal call uncall push pop top mod inv""".split()
)

_PUNCT2 = ("+=", "-=", "*=", "!=")
_PUNCT1 = "()[],+-*^=<"

STATEMENT_KEYWORDS = frozenset({"if", "from", "iterate", "local", "call", "uncall", "push", "pop"})


class Token(NamedTuple):
    kind: str  # ident | int | kw | punct | eof
    text: str
    line: int
    col: int


def tokenize(source: str) -> list[Token]:
    tokens: list[Token] = []
    line, col = 1, 1
    i, n = 0, len(source)
    while i < n:
        ch = source[i]
        if ch == "\n":
            i += 1
            line += 1
            col = 1
            continue
        if ch in " \t\r":
            i += 1
            col += 1
            continue
        if source.startswith("//", i):
            while i < n and source[i] != "\n":
                i += 1
            continue
        if ch.isdigit():
            start = i
            while i < n and source[i].isdigit():
                i += 1
            text = source[start:i]
            tokens.append(Token("int", text, line, col))
            col += i - start
            continue
        if ch.isalpha():
            start = i
            while i < n and (source[i].isalnum() or source[i] == "_"):
                i += 1
            text = source[start:i]
            kind = "kw" if text in KEYWORDS else "ident"
            tokens.append(Token(kind, text, line, col))
            col += i - start
            continue
        two = source[i : i + 2]
        if two in _PUNCT2:
            tokens.append(Token("punct", two, line, col))
            i += 2
            col += 2
            continue
        if ch in _PUNCT1:
            tokens.append(Token("punct", ch, line, col))
            i += 1
            col += 1
            continue
        raise ParseError(f"unexpected character {ch!r}", line, col)
    tokens.append(Token("eof", "", line, col))
    return tokens


class _Parser:
    def __init__(self, source: str):
        self.tokens = tokenize(source)
        self.pos = 0

    # -- token helpers ------------------------------------------------

    def peek(self) -> Token:
        return self.tokens[self.pos]

    def next(self) -> Token:
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def at(self, kind: str, text: str | None = None) -> bool:
        tok = self.peek()
        return tok.kind == kind and (text is None or tok.text == text)

    def accept(self, kind: str, text: str | None = None) -> Token | None:
        if self.at(kind, text):
            return self.next()
        return None

    def expect(self, kind: str, text: str | None = None, what: str | None = None) -> Token:
        tok = self.peek()
        if not self.at(kind, text):
            wanted = what or (text if text is not None else kind)
            got = tok.text if tok.kind != "eof" else "end of input"
            raise ParseError(f"expected {wanted!r}, got {got!r}", tok.line, tok.col)
        return self.next()

    def expect_ident(self, what: str = "identifier") -> Token:
        tok = self.peek()
        if tok.kind != "ident":
            got = tok.text if tok.kind != "eof" else "end of input"
            raise ParseError(f"expected {what}, got {got!r}", tok.line, tok.col)
        return self.next()

    @staticmethod
    def _loc(tok: Token) -> ast.Loc:
        return (tok.line, tok.col)

    # -- program structure --------------------------------------------

    def parse_program(self) -> ast.Program:
        procedures = []
        if not self.at("kw", "procedure"):
            tok = self.peek()
            raise ParseError("expected 'procedure'", tok.line, tok.col)
        while self.at("kw", "procedure"):
            procedures.append(self.parse_procedure())
        tok = self.peek()
        if tok.kind != "eof":
            raise ParseError(f"unexpected {tok.text!r} after procedure body", tok.line, tok.col)
        return ast.Program(tuple(procedures))

    def parse_procedure(self) -> ast.Procedure:
        start = self.expect("kw", "procedure")
        name = self.expect_ident("procedure name")
        self.expect("punct", "(")
        params: list[ast.Param] = []
        if not self.at("punct", ")"):
            params.append(self.parse_param())
            while self.accept("punct", ","):
                params.append(self.parse_param())
        self.expect("punct", ")")
        body = self.parse_stmts(stop=frozenset({"procedure"}))
        return ast.Procedure(name.text, tuple(params), body, loc=self._loc(start))

    def parse_param(self) -> ast.Param:
        tok = self.peek()
        if self.accept("kw", "int"):
            name = self.expect_ident("parameter name")
            if self.accept("punct", "["):
                self.expect("punct", "]")
                return ast.Param(name.text, "array", loc=self._loc(tok))
            return ast.Param(name.text, "int", loc=self._loc(tok))
        if self.accept("kw", "stack"):
            name = self.expect_ident("parameter name")
            return ast.Param(name.text, "stack", loc=self._loc(tok))
        raise ParseError("expected parameter ('int x', 'int x[]' or 'stack x')", tok.line, tok.col)

    # -- statements ----------------------------------------------------

    def parse_stmts(self, stop: frozenset[str]) -> tuple[ast.Statement, ...]:
        stmts: list[ast.Statement] = []
        while True:
            tok = self.peek()
            if tok.kind == "eof":
                break
            if tok.kind == "kw" and (tok.text in stop or tok.text == "procedure"):
                break
            stmts.append(self.parse_stmt())
        return tuple(stmts)

    def parse_stmt(self) -> ast.Statement:
        tok = self.peek()
        if tok.kind == "ident":
            return self.parse_update()
        if tok.kind == "kw":
            if tok.text == "if":
                return self.parse_iffi()
            if tok.text == "from":
                return self.parse_fromuntil()
            if tok.text == "iterate":
                return self.parse_iterate()
            if tok.text == "local":
                return self.parse_local()
            if tok.text in ("call", "uncall"):
                return self.parse_call()
            if tok.text in ("push", "pop"):
                return self.parse_pushpop()
        got = tok.text if tok.kind != "eof" else "end of input"
        raise ParseError(f"expected a statement, got {got!r}", tok.line, tok.col)

    def parse_lvalue(self) -> ast.LValue:
        name = self.expect_ident("variable")
        if self.accept("punct", "["):
            index = self.parse_expr()
            self.expect("punct", "]")
            return ast.Index(name.text, index, loc=self._loc(name))
        return ast.Var(name.text, loc=self._loc(name))

    def parse_update(self) -> ast.Update:
        target = self.parse_lvalue()
        tok = self.peek()
        if tok.kind == "punct" and tok.text in ("+=", "-=", "*="):
            op_tok = self.next()
        else:
            raise ParseError("expected '+=', '-=' or '*=' after variable", tok.line, tok.col)
        op = op_tok.text
        if op == "*=" and self.at("kw", "inv"):
            self.next()
            self.expect("punct", "(")
            rhs = self.parse_expr()
            self.expect("punct", ")")
            op = "*=inv"
        else:
            rhs = self.parse_expr()
        modulus = None
        if self.accept("kw", "mod"):
            modulus = self.expect_ident("modulus variable").text
        loc = target.loc if target.loc is not None else self._loc(op_tok)
        return ast.Update(target, op, rhs, modulus, loc=loc)

    def parse_iffi(self) -> ast.IfFi:
        start = self.expect("kw", "if")
        test = self.parse_expr()
        self.expect("kw", "then")
        then_body = self.parse_stmts(stop=frozenset({"else", "fi"}))
        else_body: tuple[ast.Statement, ...] = ()
        if self.accept("kw", "else"):
            else_body = self.parse_stmts(stop=frozenset({"fi"}))
        self.expect("kw", "fi")
        assertion = self.parse_expr()
        return ast.IfFi(test, then_body, else_body, assertion, loc=self._loc(start))

    def parse_fromuntil(self) -> ast.FromUntil:
        start = self.expect("kw", "from")
        entry = self.parse_expr()
        self.expect("kw", "loop")
        body = self.parse_stmts(stop=frozenset({"until"}))
        self.expect("kw", "until")
        exit_ = self.parse_expr()
        return ast.FromUntil(entry, body, exit_, loc=self._loc(start))

    def parse_iterate(self) -> ast.Iterate:
        start = self.expect("kw", "iterate")
        self.expect("kw", "int")
        counter = self.expect_ident("counter name")
        self.expect("punct", "=")
        first = self.parse_expr()
        down = False
        if self.accept("kw", "downto"):
            down = True
        else:
            self.expect("kw", "to")
        second = self.parse_expr()
        body = self.parse_stmts(stop=frozenset({"end"}))
        self.expect("kw", "end")
        return ast.Iterate(counter.text, first, second, body, down, loc=self._loc(start))

    def parse_local(self) -> ast.LocalDelocal:
        start = self.expect("kw", "local")
        self.expect("kw", "int")
        name = self.expect_ident("local variable name")
        self.expect("punct", "=")
        init = self.parse_expr()
        body = self.parse_stmts(stop=frozenset({"delocal"}))
        self.expect("kw", "delocal")
        self.expect("kw", "int")
        closing = self.expect_ident("delocal variable name")
        if closing.text != name.text:
            raise ParseError(
                f"delocal names {closing.text!r} but the open local declares {name.text!r}",
                closing.line,
                closing.col,
            )
        self.expect("punct", "=")
        final = self.parse_expr()
        return ast.LocalDelocal(name.text, init, body, final, loc=self._loc(start))

    def parse_call(self) -> ast.Statement:
        kw = self.next()
        target = self.expect_ident("procedure name")
        self.expect("punct", "(")
        args: list[ast.Expression] = []
        if not self.at("punct", ")"):
            args.append(self.parse_expr())
            while self.accept("punct", ","):
                args.append(self.parse_expr())
        self.expect("punct", ")")
        cls = ast.Call if kw.text == "call" else ast.Uncall
        return cls(target.text, tuple(args), loc=self._loc(kw))

    def parse_pushpop(self) -> ast.Statement:
        kw = self.next()
        self.expect("punct", "(")
        target = self.parse_lvalue()
        self.expect("punct", ",")
        stack = self.expect_ident("stack name")
        self.expect("punct", ")")
        cls = ast.Push if kw.text == "push" else ast.Pop
        return cls(target, stack.text, loc=self._loc(kw))

    # -- expressions ----------------------------------------------------

    def parse_expr(self) -> ast.Expression:
        left = self.parse_additive()
        while True:
            tok = self.peek()
            if tok.kind == "punct" and tok.text in ("=", "!=", "<"):
                self.next()
                right = self.parse_additive()
                left = ast.Binary(tok.text, left, right, loc=self._loc(tok))
            else:
                return left

    def parse_additive(self) -> ast.Expression:
        left = self.parse_mul()
        while True:
            tok = self.peek()
            if tok.kind == "punct" and tok.text in ("+", "-"):
                self.next()
                right = self.parse_mul()
                left = ast.Binary(tok.text, left, right, loc=self._loc(tok))
            else:
                return left

    def parse_mul(self) -> ast.Expression:
        left = self.parse_power()
        while True:
            tok = self.peek()
            if tok.kind == "punct" and tok.text == "*":
                self.next()
                right = self.parse_power()
                left = ast.Binary("*", left, right, loc=self._loc(tok))
            else:
                return left

    def parse_power(self) -> ast.Expression:
        base = self.parse_unary()
        tok = self.peek()
        if tok.kind == "punct" and tok.text == "^":
            self.next()
            exponent = self.parse_power()
            return ast.Pow(base, exponent, loc=self._loc(tok))
        return base

    def parse_unary(self) -> ast.Expression:
        tok = self.peek()
        if tok.kind == "punct" and tok.text == "-":
            self.next()
            lit = self.expect("int", what="integer literal after unary minus")
            value = -int(lit.text)
            if value < -(WORD_MAX + 1):
                raise ParseError("integer literal does not fit the 64-bit word", lit.line, lit.col)
            return ast.IntLit(value, loc=self._loc(tok))
        return self.parse_primary()

    def parse_primary(self) -> ast.Expression:
        tok = self.peek()
        if tok.kind == "int":
            self.next()
            value = int(tok.text)
            if value > WORD_MAX:
                raise ParseError("integer literal does not fit the 64-bit word", tok.line, tok.col)
            return ast.IntLit(value, loc=self._loc(tok))
        if tok.kind == "kw" and tok.text == "top":
            self.next()
            self.expect("punct", "(")
            stack = self.expect_ident("stack name")
            self.expect("punct", ")")
            return ast.Top(stack.text, loc=self._loc(tok))
        if tok.kind == "ident":
            self.next()
            if self.accept("punct", "["):
                index = self.parse_expr()
                self.expect("punct", "]")
                return ast.Index(tok.text, index, loc=self._loc(tok))
            return ast.Var(tok.text, loc=self._loc(tok))
        if tok.kind == "punct" and tok.text == "(":
            self.next()
            expr = self.parse_expr()
            self.expect("punct", ")")
            return expr
        got = tok.text if tok.kind != "eof" else "end of input"
        raise ParseError(f"expected an expression, got {got!r}", tok.line, tok.col)


def parse(source: str, check: bool = True) -> ast.Program:
    """Parse source text into a Program.

    With ``check`` (the default) the static well-formedness rules are
    enforced and the first violation is raised as StaticError; pass
    ``check=False`` to obtain the tree of a syntactically valid but
    statically broken program (used by the validation endpoint).
    """
    program = _Parser(source).parse_program()
    if check:
        problems = validate(program)
        if problems:
            raise problems[0]
    return program
