"""Recursive-descent parser producing `nodes.Ast`.

Grammar (informal):

    file      := method*
    method    := 'function' NAME '(' [ VAR (',' VAR)* [','] ] ')' block
    block     := '{' stmt* '}'
    stmt      := foreach | if | return | assign-or-expr ';'
    foreach   := 'foreach' '(' expr 'as' VAR ['=>' VAR] ')' block
    if        := 'if' '(' expr ')' block ['else' (block | if)]
    return    := 'return' [expr] ';'
    assign    := lvalue ('=' | '.=' | '+=') expr      -- `$x[] = e` is the
                                                          append form `[]=`
    expr      := precedence climb over || && (== != < > <= >=) (+ - .) (* / %)
    postfix   := primary ('[' [expr] ']' | '->' NAME | '(' args ')')*
    primary   := VAR | INT | STRING | 'vec' '[' items ']' | 'dict' '[' pairs ']'
               | 'tuple' '(' args ')' | 'shape' '(' pairs ')'
               | NAME ['::' NAME] | '(' expr ')'

Lambdas (`==>`) and other full-Hack constructs are rejected.
"""

from __future__ import annotations

from .errors import MiniHackSyntaxError
from .lexer import Token, tokenize
from .nodes import (
    Assign, Ast, Binary, Block, Call, Construct, Expr, ExprStmt, Foreach, If,
    Literal, LVALUE_KINDS, MethodDecl, MethodPath, NamePath, PropertyGet,
    Return, SourceSpan, StaticPath, Subscript, Var,
)

_CMP_OPS = {"==", "!=", "<", ">", "<=", ">="}
_ADD_OPS = {"+", "-", "."}
_MUL_OPS = {"*", "/", "%"}
_ASSIGN_OPS = {"=", ".=", "+="}
_CONSTRUCT_NAMES = {"vec", "dict", "tuple", "shape"}


class _Parser:
    def __init__(self, tokens: list[Token], file: str):
        self.tokens = tokens
        self.file = file
        self.pos = 0

    # -- token plumbing ------------------------------------------------------

    @property
    def cur(self) -> Token:
        return self.tokens[self.pos]

    def at(self, kind: str, text: str | None = None) -> bool:
        t = self.cur
        return t.kind == kind and (text is None or t.text == text)

    def at_op(self, text: str) -> bool:
        return self.at("op", text)

    def advance(self) -> Token:
        t = self.cur
        if t.kind != "eof":
            self.pos += 1
        return t

    def expect(self, kind: str, text: str | None = None) -> Token:
        if not self.at(kind, text):
            want = text or kind
            self.error(f"expected {want!r}, found {self.cur.text or self.cur.kind!r}")
        return self.advance()

    def error(self, msg: str):
        t = self.cur
        raise MiniHackSyntaxError(msg, file=self.file, line=t.line, col=t.col)

    def span_from(self, start: Token, end: Token | None = None) -> SourceSpan:
        end = end or self.tokens[max(self.pos - 1, 0)]
        return SourceSpan(self.file, start.line, start.col, end.line, end.end_col)

    # -- toplevel ------------------------------------------------------------

    def parse_file(self) -> Ast:
        methods = []
        while not self.at("eof"):
            methods.append(self.parse_method())
        return Ast(file=self.file, methods=methods)

    def parse_method(self) -> MethodDecl:
        start = self.expect("keyword", "function")
        name = self.expect("name").text
        self.expect("op", "(")
        params: list[str] = []
        while not self.at_op(")"):
            params.append(self.expect("var").text[1:])
            if self.at_op(","):
                self.advance()
            elif not self.at_op(")"):
                self.error("expected ',' or ')' in parameter list")
        self.expect("op", ")")
        body = self.parse_block()
        return MethodDecl(name=name, params=params, body=body,
                          span=self.span_from(start))

    def parse_block(self) -> Block:
        start = self.expect("op", "{")
        stmts = []
        while not self.at_op("}"):
            if self.at("eof"):
                self.error("unterminated block")
            stmts.append(self.parse_stmt())
        self.expect("op", "}")
        return Block(stmts=stmts, span=self.span_from(start))

    # -- statements ----------------------------------------------------------

    def parse_stmt(self):
        if self.at("keyword", "foreach"):
            return self.parse_foreach()
        if self.at("keyword", "if"):
            return self.parse_if()
        if self.at("keyword", "return"):
            return self.parse_return()
        start = self.cur
        expr = self.parse_expr()
        if self.cur.kind == "op" and self.cur.text in _ASSIGN_OPS:
            op = self.advance().text
            target = expr
            if isinstance(target, Subscript) and target.index is None:
                if op != "=":
                    self.error("append target '$x[]' only combines with '='")
                op = "[]="
                target = target.base
            if not isinstance(target, LVALUE_KINDS):
                self.error("assignment target must be a variable, subscript, or property")
            if isinstance(target, Subscript) and target.index is None:
                self.error("nested append targets are not supported")
            rhs = self.parse_expr()
            self.expect("op", ";")
            return Assign(span=self.span_from(start), target=target, op=op, rhs=rhs)
        self._reject_dangling_append(expr)
        self.expect("op", ";")
        return ExprStmt(span=self.span_from(start), expr=expr)

    def _reject_dangling_append(self, expr: Expr):
        if isinstance(expr, Subscript) and expr.index is None:
            self.error("'$x[]' is only valid as an assignment target")

    def parse_foreach(self) -> Foreach:
        start = self.expect("keyword", "foreach")
        self.expect("op", "(")
        subject = self.parse_expr()
        self.expect("keyword", "as")
        first = self.expect("var").text[1:]
        key, value = None, first
        if self.at_op("=>"):
            self.advance()
            key = first
            value = self.expect("var").text[1:]
        self.expect("op", ")")
        body = self.parse_block()
        return Foreach(span=self.span_from(start), subject=subject,
                       key=key, value=value, body=body)

    def parse_if(self) -> If:
        start = self.expect("keyword", "if")
        self.expect("op", "(")
        cond = self.parse_expr()
        self.expect("op", ")")
        then = self.parse_block()
        orelse = None
        if self.at("keyword", "else"):
            self.advance()
            if self.at("keyword", "if"):
                nested = self.parse_if()
                orelse = Block(stmts=[nested], span=nested.span)
            else:
                orelse = self.parse_block()
        return If(span=self.span_from(start), cond=cond, then=then, orelse=orelse)

    def parse_return(self) -> Return:
        start = self.expect("keyword", "return")
        value = None
        if not self.at_op(";"):
            value = self.parse_expr()
        self.expect("op", ";")
        return Return(span=self.span_from(start), value=value)

    # -- expressions ----------------------------------------------------------

    def parse_expr(self) -> Expr:
        return self._binary(0)

    _LEVELS = [{"||"}, {"&&"}, _CMP_OPS, _ADD_OPS, _MUL_OPS]

    def _binary(self, level: int) -> Expr:
        if level >= len(self._LEVELS):
            return self.parse_postfix()
        start = self.cur
        lhs = self._binary(level + 1)
        while self.cur.kind == "op" and self.cur.text in self._LEVELS[level]:
            op = self.advance().text
            rhs = self._binary(level + 1)
            lhs = Binary(span=self.span_from(start), op=op, lhs=lhs, rhs=rhs)
        return lhs

    def parse_postfix(self) -> Expr:
        start = self.cur
        expr = self.parse_primary()
        while True:
            if self.at_op("["):
                self.advance()
                index = None
                if not self.at_op("]"):
                    index = self.parse_expr()
                self.expect("op", "]")
                expr = Subscript(span=self.span_from(start), base=expr, index=index)
            elif self.at_op("->"):
                self.advance()
                name = self.expect("name").text
                expr = PropertyGet(span=self.span_from(start), base=expr, name=name)
            elif self.at_op("("):
                expr = self._finish_call(start, expr)
            else:
                return expr

    def _finish_call(self, start: Token, callee_expr) -> Call:
        if isinstance(callee_expr, PropertyGet):
            callee = MethodPath(base=callee_expr.base, name=callee_expr.name)
        elif isinstance(callee_expr, NamePath | StaticPath):
            callee = callee_expr
        else:
            self.error("only names, Class::method, and $obj->method can be called")
        args = self._parse_args("(", ")")
        return Call(span=self.span_from(start), callee=callee, args=args)

    def _parse_args(self, open_tok: str, close_tok: str) -> list[Expr]:
        self.expect("op", open_tok)
        args: list[Expr] = []
        while not self.at_op(close_tok):
            args.append(self.parse_expr())
            if self.at_op(","):
                self.advance()
            elif not self.at_op(close_tok):
                self.error(f"expected ',' or {close_tok!r}")
        self.expect("op", close_tok)
        return args

    def _parse_pairs(self, open_tok: str, close_tok: str) -> list[Expr]:
        """`key => value` entries flattened to [k1, v1, k2, v2, ...]."""
        self.expect("op", open_tok)
        args: list[Expr] = []
        while not self.at_op(close_tok):
            args.append(self.parse_expr())
            self.expect("op", "=>")
            args.append(self.parse_expr())
            if self.at_op(","):
                self.advance()
            elif not self.at_op(close_tok):
                self.error(f"expected ',' or {close_tok!r}")
        self.expect("op", close_tok)
        return args

    def parse_primary(self) -> Expr:
        t = self.cur
        if t.kind == "var":
            self.advance()
            return Var(span=self.span_from(t, t), name=t.text[1:])
        if t.kind == "int":
            self.advance()
            return Literal(span=self.span_from(t, t), kind="int", value=int(t.text))
        if t.kind == "string":
            self.advance()
            return Literal(span=self.span_from(t, t), kind="string",
                           value=_unquote(t.text))
        if t.kind == "name" and t.text in _CONSTRUCT_NAMES:
            return self.parse_construct()
        if t.kind == "name":
            self.advance()
            if self.at_op("::"):
                self.advance()
                member = self.expect("name").text
                path = StaticPath(cls=t.text, name=member)
            else:
                path = NamePath(name=t.text)
            if not self.at_op("("):
                self.error(f"bare name {t.text!r} must be called")
            return self._finish_call(t, path)
        if self.at_op("("):
            self.advance()
            inner = self.parse_expr()
            self.expect("op", ")")
            return inner
        self.error(f"unexpected token {t.text or t.kind!r}")

    def parse_construct(self) -> Expr:
        t = self.advance()
        kind = t.text
        if kind in ("vec", "dict"):
            args = (self._parse_args("[", "]") if kind == "vec"
                    else self._parse_pairs("[", "]"))
            if not args:
                return Literal(span=self.span_from(t), kind=kind, value=None)
        elif kind == "tuple":
            args = self._parse_args("(", ")")
        else:  # shape
            args = self._parse_pairs("(", ")")
        return Construct(span=self.span_from(t), kind=kind, args=args)


def _unquote(text: str) -> str:
    body = text[1:-1]
    return body.replace("\\" + text[0], text[0]).replace("\\\\", "\\")


def parse(source: str, file: str = "<input>") -> Ast:
    """Parse MiniHack source text into an `Ast`. Deterministic; raises
    `MiniHackSyntaxError` with a location on malformed input."""
    return _Parser(tokenize(source, file), file).parse_file()
