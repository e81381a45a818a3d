"""Syntactic role typing: every variable becomes collection, object, or
primitive from hints in the method body.

Hints, strongest first:
  collection — subscript base, `[]=` target, foreach subject, assigned a
               vec/dict value, or (with accumulator promotion, the default)
               target of `.=`.
  object     — member-access base (`->`), including receiver of method calls;
               `$this` is always object unless a collection hint outranks it.
  primitive  — everything else (the default).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum

from .nodes import (
    Assign, Call, Construct, Foreach, Literal, MethodDecl, MethodPath,
    PropertyGet, Subscript, Var, method_vars, subexprs, walk_exprs, walk_stmts,
)


class VarType(str, Enum):
    COLLECTION = "collection"
    OBJECT = "object"
    PRIMITIVE = "primitive"


_RANK = {VarType.COLLECTION: 2, VarType.OBJECT: 1, VarType.PRIMITIVE: 0}


@dataclass
class TypeTable:
    method: str
    entries: dict[str, VarType] = field(default_factory=dict)

    def __getitem__(self, var: str) -> VarType:
        return self.entries[var]

    def __contains__(self, var: str) -> bool:
        return var in self.entries

    def as_json(self) -> dict:
        return {"method": self.method,
                "types": {v: t.value for v, t in self.entries.items()}}


def infer_types(method: MethodDecl, accumulator_promotion: bool = True) -> TypeTable:
    """One pass over all occurrences; collection hints beat object hints."""
    table = TypeTable(method=method.name)
    entries = table.entries
    for var in method_vars(method):
        entries[var] = VarType.PRIMITIVE

    def raise_to(var: str, vtype: VarType) -> None:
        if var not in entries:
            entries[var] = VarType.PRIMITIVE
        if _RANK[vtype] > _RANK[entries[var]]:
            entries[var] = vtype

    if "this" in entries:
        raise_to("this", VarType.OBJECT)

    for stmt in walk_stmts(method.body):
        if isinstance(stmt, Foreach) and isinstance(stmt.subject, Var):
            raise_to(stmt.subject.name, VarType.COLLECTION)
        if isinstance(stmt, Assign):
            target = stmt.target
            if isinstance(target, Var):
                if stmt.op == "[]=":
                    raise_to(target.name, VarType.COLLECTION)
                elif stmt.op == ".=" and accumulator_promotion:
                    raise_to(target.name, VarType.COLLECTION)
                elif stmt.op == "=" and _is_collection_value(stmt.rhs):
                    raise_to(target.name, VarType.COLLECTION)
        for expr in walk_exprs(stmt):
            for sub in subexprs(expr):
                if isinstance(sub, Subscript) and isinstance(sub.base, Var):
                    raise_to(sub.base.name, VarType.COLLECTION)
                elif isinstance(sub, PropertyGet) and isinstance(sub.base, Var):
                    raise_to(sub.base.name, VarType.OBJECT)
                elif isinstance(sub, Call) and isinstance(sub.callee, MethodPath) \
                        and isinstance(sub.callee.base, Var):
                    raise_to(sub.callee.base.name, VarType.OBJECT)
    return table


def _is_collection_value(expr) -> bool:
    if isinstance(expr, Construct):
        return expr.kind in ("vec", "dict")
    return isinstance(expr, Literal) and expr.kind in ("vec", "dict")
