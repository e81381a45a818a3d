"""Syntax tree for the MiniHack subset.

Every node carries a half-open-free source span (1-based, inclusive on both
ends). Statements are Assign / Foreach / If / Return / ExprStmt; expressions
are Var / Literal / Binary / Subscript / PropertyGet / Call / Construct.
"""

from __future__ import annotations

from dataclasses import dataclass, field


@dataclass(frozen=True)
class SourceSpan:
    file: str
    start_line: int
    start_col: int
    end_line: int
    end_col: int

    def __post_init__(self):
        assert (self.start_line, self.start_col) <= (self.end_line, self.end_col), \
            f"inverted span {self}"

    def contains(self, other: "SourceSpan") -> bool:
        return (self.start_line, self.start_col) <= (other.start_line, other.start_col) \
            and (other.end_line, other.end_col) <= (self.end_line, self.end_col)

    def as_list(self):
        return [self.start_line, self.start_col, self.end_line, self.end_col]


@dataclass
class Node:
    span: SourceSpan


# --- expressions -----------------------------------------------------------

@dataclass
class Expr(Node):
    pass


@dataclass
class Var(Expr):
    name: str


@dataclass
class Literal(Expr):
    kind: str  # int | string | vec | dict
    value: object = None


@dataclass
class Binary(Expr):
    op: str
    lhs: Expr
    rhs: Expr


@dataclass
class Subscript(Expr):
    base: Expr
    index: Expr | None  # None only as an append target (`$x[] = e`)


@dataclass
class PropertyGet(Expr):
    base: Expr
    name: str


@dataclass
class StaticPath:
    cls: str
    name: str


@dataclass
class MethodPath:
    base: Expr
    name: str


@dataclass
class NamePath:
    name: str  # may be namespaced, e.g. Vec\map_with_key


Callee = StaticPath | MethodPath | NamePath


@dataclass
class Call(Expr):
    callee: Callee
    args: list[Expr]


@dataclass
class Construct(Expr):
    kind: str  # tuple | shape | vec | dict
    args: list[Expr]  # shape/dict store alternating key, value exprs


# --- statements -------------------------------------------------------------

@dataclass
class Stmt(Node):
    pass


@dataclass
class Block:
    stmts: list[Stmt]
    span: SourceSpan


@dataclass
class Assign(Stmt):
    target: Expr  # Var, Subscript, or PropertyGet
    op: str  # = | .= | += | []=
    rhs: Expr


@dataclass
class Foreach(Stmt):
    subject: Expr
    key: str | None
    value: str
    body: Block


@dataclass
class If(Stmt):
    cond: Expr
    then: Block
    orelse: Block | None


@dataclass
class Return(Stmt):
    value: Expr | None


@dataclass
class ExprStmt(Stmt):
    expr: Expr


@dataclass
class MethodDecl:
    name: str
    params: list[str]
    body: Block
    span: SourceSpan


@dataclass
class Ast:
    file: str
    methods: list[MethodDecl] = field(default_factory=list)


LVALUE_KINDS = (Var, Subscript, PropertyGet)


def expr_vars(expr: Expr) -> list[str]:
    """Variable names mentioned in `expr`, in textual order, with repeats.

    `$this` counts as a variable when it appears as a member-access base.
    """
    out: list[str] = []
    _collect_vars(expr, out)
    return out


def _collect_vars(expr, out: list[str]) -> None:
    if isinstance(expr, Var):
        out.append(expr.name)
    elif isinstance(expr, Literal):
        pass
    elif isinstance(expr, Binary):
        _collect_vars(expr.lhs, out)
        _collect_vars(expr.rhs, out)
    elif isinstance(expr, Subscript):
        _collect_vars(expr.base, out)
        if expr.index is not None:
            _collect_vars(expr.index, out)
    elif isinstance(expr, PropertyGet):
        _collect_vars(expr.base, out)
    elif isinstance(expr, Call):
        if isinstance(expr.callee, MethodPath):
            _collect_vars(expr.callee.base, out)
        for arg in expr.args:
            _collect_vars(arg, out)
    elif isinstance(expr, Construct):
        for arg in expr.args:
            _collect_vars(arg, out)
    else:
        raise TypeError(f"not an expression: {expr!r}")


def walk_stmts(block: Block):
    """Yield every statement in `block`, depth first, in source order."""
    for stmt in block.stmts:
        yield stmt
        if isinstance(stmt, Foreach):
            yield from walk_stmts(stmt.body)
        elif isinstance(stmt, If):
            yield from walk_stmts(stmt.then)
            if stmt.orelse is not None:
                yield from walk_stmts(stmt.orelse)


def walk_exprs(stmt: Stmt):
    """Yield every expression appearing directly in `stmt` (not nested stmts)."""
    if isinstance(stmt, Assign):
        yield stmt.target
        yield stmt.rhs
    elif isinstance(stmt, Foreach):
        yield stmt.subject
    elif isinstance(stmt, If):
        yield stmt.cond
    elif isinstance(stmt, Return):
        if stmt.value is not None:
            yield stmt.value
    elif isinstance(stmt, ExprStmt):
        yield stmt.expr


def subexprs(expr: Expr):
    """Yield `expr` and every nested expression, preorder."""
    yield expr
    if isinstance(expr, Binary):
        yield from subexprs(expr.lhs)
        yield from subexprs(expr.rhs)
    elif isinstance(expr, Subscript):
        yield from subexprs(expr.base)
        if expr.index is not None:
            yield from subexprs(expr.index)
    elif isinstance(expr, PropertyGet):
        yield from subexprs(expr.base)
    elif isinstance(expr, Call):
        if isinstance(expr.callee, MethodPath):
            yield from subexprs(expr.callee.base)
        for arg in expr.args:
            yield from subexprs(arg)
    elif isinstance(expr, Construct):
        for arg in expr.args:
            yield from subexprs(arg)


def method_vars(method: MethodDecl) -> list[str]:
    """Distinct variables of a method (params first), in first-occurrence order."""
    seen: dict[str, None] = {}
    for p in method.params:
        seen.setdefault(p, None)
    for stmt in walk_stmts(method.body):
        if isinstance(stmt, Foreach):
            for v in expr_vars(stmt.subject):
                seen.setdefault(v, None)
            if stmt.key is not None:
                seen.setdefault(stmt.key, None)
            seen.setdefault(stmt.value, None)
        for expr in walk_exprs(stmt):
            for v in expr_vars(expr):
                seen.setdefault(v, None)
    return list(seen)
