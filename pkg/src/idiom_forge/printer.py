"""Pretty-printer over the AST.

Used by round-trip tests (parse(print(parse(s))) must equal parse(s)
structurally) and by the synthetic corpus generator.
"""

from __future__ import annotations

from .nodes import (
    Assign, Ast, Binary, Block, Call, Construct, ExprStmt, Foreach, If,
    Literal, MethodDecl, MethodPath, NamePath, PropertyGet, Return,
    StaticPath, Subscript, Var,
)


def print_ast(ast: Ast) -> str:
    return "\n\n".join(print_method(m) for m in ast.methods) + "\n"


def print_method(method: MethodDecl) -> str:
    params = ", ".join(f"${p}" for p in method.params)
    lines = [f"function {method.name}({params}) {{"]
    lines.extend(_block_lines(method.body, 1))
    lines.append("}")
    return "\n".join(lines)


def _block_lines(block: Block, depth: int) -> list[str]:
    pad = "  " * depth
    lines = []
    for stmt in block.stmts:
        lines.extend(pad + line for line in _stmt_lines(stmt, depth))
    return lines


def _stmt_lines(stmt, depth: int) -> list[str]:
    if isinstance(stmt, Assign):
        target = print_expr(stmt.target)
        if stmt.op == "[]=":
            return [f"{target}[] = {print_expr(stmt.rhs)};"]
        return [f"{target} {stmt.op} {print_expr(stmt.rhs)};"]
    if isinstance(stmt, Foreach):
        binder = f"${stmt.value}" if stmt.key is None else f"${stmt.key} => ${stmt.value}"
        head = f"foreach ({print_expr(stmt.subject)} as {binder}) {{"
        return [head] + _block_lines(stmt.body, 1) + ["}"]
    if isinstance(stmt, If):
        lines = [f"if ({print_expr(stmt.cond)}) {{"] + _block_lines(stmt.then, 1)
        if stmt.orelse is None:
            return lines + ["}"]
        return lines + ["} else {"] + _block_lines(stmt.orelse, 1) + ["}"]
    if isinstance(stmt, Return):
        if stmt.value is None:
            return ["return;"]
        return [f"return {print_expr(stmt.value)};"]
    if isinstance(stmt, ExprStmt):
        return [f"{print_expr(stmt.expr)};"]
    raise TypeError(f"not a statement: {stmt!r}")


def print_expr(expr) -> str:
    if isinstance(expr, Var):
        return f"${expr.name}"
    if isinstance(expr, Literal):
        if expr.kind == "int":
            return str(expr.value)
        if expr.kind == "string":
            return "'" + str(expr.value).replace("\\", "\\\\").replace("'", "\\'") + "'"
        return f"{expr.kind}[]"
    if isinstance(expr, Binary):
        return f"({print_expr(expr.lhs)} {expr.op} {print_expr(expr.rhs)})"
    if isinstance(expr, Subscript):
        index = "" if expr.index is None else print_expr(expr.index)
        return f"{print_expr(expr.base)}[{index}]"
    if isinstance(expr, PropertyGet):
        return f"{print_expr(expr.base)}->{expr.name}"
    if isinstance(expr, Call):
        args = ", ".join(print_expr(a) for a in expr.args)
        callee = expr.callee
        if isinstance(callee, StaticPath):
            head = f"{callee.cls}::{callee.name}"
        elif isinstance(callee, MethodPath):
            head = f"{print_expr(callee.base)}->{callee.name}"
        elif isinstance(callee, NamePath):
            head = callee.name
        else:
            raise TypeError(f"bad callee: {callee!r}")
        return f"{head}({args})"
    if isinstance(expr, Construct):
        if expr.kind in ("shape", "dict"):
            pairs = [
                f"{print_expr(expr.args[i])} => {print_expr(expr.args[i + 1])}"
                for i in range(0, len(expr.args), 2)
            ]
            body = ", ".join(pairs)
        else:
            body = ", ".join(print_expr(a) for a in expr.args)
        if expr.kind in ("vec", "dict"):
            return f"{expr.kind}[{body}]"
        return f"{expr.kind}({body})"
    raise TypeError(f"not an expression: {expr!r}")
