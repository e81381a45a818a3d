"""Structural hashing of method ASTs.

The digest is a 64-bit value over a post-order serialization of (node kind,
operator/identifier payload, child digests). Spans are excluded, so
reformatting never changes a digest; renaming a variable always does.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass

from .nodes import (
    Assign, Ast, Binary, Block, Call, Construct, ExprStmt, Foreach, If,
    Literal, MethodDecl, MethodPath, NamePath, PropertyGet, Return,
    StaticPath, Subscript, Var,
)


@dataclass(frozen=True)
class MethodHash:
    name: str
    digest: int  # 64-bit


def structural_key(node) -> str:
    """Span-free canonical serialization of any AST node."""
    if isinstance(node, MethodDecl):
        params = ",".join(node.params)
        return f"(method {node.name} [{params}] {structural_key(node.body)})"
    if isinstance(node, Block):
        return "(block " + " ".join(structural_key(s) for s in node.stmts) + ")"
    if isinstance(node, Assign):
        return f"(assign {node.op} {structural_key(node.target)} {structural_key(node.rhs)})"
    if isinstance(node, Foreach):
        key = node.key or ""
        return (f"(foreach {structural_key(node.subject)} [{key}] [{node.value}] "
                f"{structural_key(node.body)})")
    if isinstance(node, If):
        orelse = structural_key(node.orelse) if node.orelse is not None else "-"
        return f"(if {structural_key(node.cond)} {structural_key(node.then)} {orelse})"
    if isinstance(node, Return):
        value = structural_key(node.value) if node.value is not None else "-"
        return f"(return {value})"
    if isinstance(node, ExprStmt):
        return f"(expr {structural_key(node.expr)})"
    if isinstance(node, Var):
        return f"(var {node.name})"
    if isinstance(node, Literal):
        return f"(lit {node.kind} {node.value!r})"
    if isinstance(node, Binary):
        return f"(bin {node.op} {structural_key(node.lhs)} {structural_key(node.rhs)})"
    if isinstance(node, Subscript):
        index = structural_key(node.index) if node.index is not None else "-"
        return f"(sub {structural_key(node.base)} {index})"
    if isinstance(node, PropertyGet):
        return f"(prop {structural_key(node.base)} {node.name})"
    if isinstance(node, Call):
        callee = node.callee
        if isinstance(callee, StaticPath):
            head = f"static:{callee.cls}::{callee.name}"
        elif isinstance(callee, MethodPath):
            head = f"method:{structural_key(callee.base)}->{callee.name}"
        else:
            assert isinstance(callee, NamePath)
            head = f"name:{callee.name}"
        args = " ".join(structural_key(a) for a in node.args)
        return f"(call {head} {args})"
    if isinstance(node, Construct):
        args = " ".join(structural_key(a) for a in node.args)
        return f"(construct {node.kind} {args})"
    raise TypeError(f"unhashable node: {node!r}")


def method_digest(method: MethodDecl) -> int:
    raw = hashlib.blake2b(structural_key(method).encode(), digest_size=8).digest()
    return int.from_bytes(raw, "big")


def hash_methods(ast: Ast) -> list[MethodHash]:
    """One stable 64-bit digest per method; identical across runs and hosts."""
    return [MethodHash(name=m.name, digest=method_digest(m)) for m in ast.methods]
