"""Per-region dataflow tables.

A region is one control-flow block: statements are scanned in order, every
assignment records a canonical write reference mapped to the read references
it depends on, and foreach headers record writes to the binder variables
reading the iterated subject. Canonical labels are `<type>_write_<k>` for
writes (per-type write counter) and `<type>_<k>` for appearances (per-type
counter over every flow-relevant occurrence, reads and write targets alike,
in textual order). Counters reset per region, which makes the labels
invariant under renaming and under interleaved writes of other types.

Nested blocks are analyzed first and folded into their parent with `merge`
(information flows bottom-up only: inner-local writes are dropped, and inner
reads survive only for variables that already occur in the outer region,
relabeled with their outer appearance ids). Each region's final table is
closed with `close_fixpoint`: a write's read set absorbs the read set of the
latest earlier write to each variable it reads, transitively.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import UnknownVariable
from .nodes import (
    Assign, Expr, Foreach, If, MethodDecl, PropertyGet, Stmt, Subscript, Var,
    expr_vars,
)
from .typeinfer import TypeTable

# Order used whenever reads are listed deterministically.
TYPE_RANK = {"collection": 0, "primitive": 1, "object": 2}


@dataclass(frozen=True, order=True)
class Ref:
    id: str
    var: str

    @property
    def type_name(self) -> str:
        return self.id.split("_", 1)[0]

    @property
    def is_write(self) -> bool:
        return "_write_" in self.id

    @property
    def index(self) -> int:
        return int(self.id.rsplit("_", 1)[1])

    def sort_key(self):
        return (TYPE_RANK[self.type_name], self.index)


@dataclass
class DataflowTable:
    region_id: str
    entries: dict[Ref, set[Ref]] = field(default_factory=dict)
    spans: dict[Ref, object] = field(default_factory=dict)  # write -> SourceSpan

    def copy(self) -> "DataflowTable":
        return DataflowTable(self.region_id,
                             {w: set(r) for w, r in self.entries.items()},
                             dict(self.spans))

    def writes_json(self) -> list[dict]:
        return [
            {
                "id": w.id,
                "var": w.var,
                "reads": [[r.id, r.var] for r in sorted(reads, key=Ref.sort_key)],
            }
            for w, reads in self.entries.items()
        ]


@dataclass
class RegionContext:
    """Counter state for one region."""

    appearance: dict[str, int] = field(default_factory=dict)
    write_counters: dict[str, int] = field(default_factory=dict)
    memo: dict[str, Ref] = field(default_factory=dict)

    def _type_of(self, var: str, types: TypeTable) -> str:
        if var not in types:
            raise UnknownVariable(f"variable ${var} has no type entry")
        return types[var].value

    def touch(self, var: str, types: TypeTable) -> Ref:
        """Appearance ref for `var`, allocated at first occurrence."""
        ref = self.memo.get(var)
        if ref is None:
            t = self._type_of(var, types)
            k = self.appearance.get(t, 0)
            self.appearance[t] = k + 1
            ref = Ref(f"{t}_{k}", var)
            self.memo[var] = ref
        return ref

    def write_ref(self, var: str, types: TypeTable) -> Ref:
        t = self._type_of(var, types)
        k = self.write_counters.get(t, 0)
        self.write_counters[t] = k + 1
        return Ref(f"{t}_write_{k}", var)

    def occurs(self, var: str) -> bool:
        return var in self.memo


# Compound assignments whose target's previous value is consumed. Append
# (`[]=`) extends a collection without reading its contents, so it is not
# in this set.
_SELF_READING_OPS = {".=", "+="}


def flow_assign(table: DataflowTable, ctx: RegionContext, target: str,
                rhs_vars: list[str], types: TypeTable, op: str = "=",
                span=None) -> DataflowTable:
    """Record `target := f(rhs_vars)`. Call side effects are ignored."""
    target_ref = ctx.touch(target, types)
    reads: set[Ref] = set()
    if op in _SELF_READING_OPS:
        reads.add(target_ref)
    for v in rhs_vars:
        reads.add(ctx.touch(v, types))
    write = ctx.write_ref(target, types)
    table.entries[write] = reads
    if span is not None:
        table.spans[write] = span
    return table


def flow_foreach_header(table: DataflowTable, ctx: RegionContext,
                        subject: str | list[str], key: str | None, value: str,
                        types: TypeTable, span=None) -> DataflowTable:
    """Record the loop-header writes: key and value each read the subject."""
    subject_vars = [subject] if isinstance(subject, str) else list(subject)
    subject_reads = {ctx.touch(v, types) for v in subject_vars}
    for binder in ([key, value] if key is not None else [value]):
        ctx.touch(binder, types)
        write = ctx.write_ref(binder, types)
        table.entries[write] = set(subject_reads)
        if span is not None:
            table.spans[write] = span
    return table


def close_fixpoint(table: DataflowTable) -> DataflowTable:
    """Transitively expand each write's reads through the latest earlier
    write to each read variable. Idempotent; terminates (finite lattice)."""
    closed = table.copy()
    items = list(closed.entries.items())
    latest: dict[str, int] = {}  # var -> newest earlier write index
    for i, (write, reads) in enumerate(items):
        changed = True
        while changed:
            changed = False
            for r in list(reads):
                j = latest.get(r.var)
                if j is not None and not items[j][1] <= reads:
                    reads |= items[j][1]
                    changed = True
        latest[write.var] = i
    return closed


def merge(outer: DataflowTable, inner: DataflowTable,
          outer_ctx: RegionContext) -> DataflowTable:
    """Fold a closed inner-region table into its outer region (bottom-up).

    Entries are matched by target variable. Writes only in the outer table
    are kept as-is; writes only in the inner table are dropped; for
    variables written in both, the inner reads of outer-visible variables
    are relabeled with their outer appearance ids and unioned in, then
    propagated across the other merged entries.
    """
    merged = outer.copy()
    inner_reads_by_var: dict[str, set[Ref]] = {}
    for w, reads in inner.entries.items():
        inner_reads_by_var.setdefault(w.var, set()).update(reads)

    receiver: dict[str, Ref] = {}  # var -> latest outer write to it
    for w in merged.entries:
        receiver[w.var] = w

    touched: list[Ref] = []
    for var, inner_reads in inner_reads_by_var.items():
        w = receiver.get(var)
        if w is None:
            continue
        imported = {outer_ctx.memo[r.var] for r in inner_reads
                    if outer_ctx.occurs(r.var)}
        merged.entries[w] |= imported
        touched.append(w)

    # Propagate inner-derived facts between merged entries (reads of a
    # variable that was itself written in the inner block absorb that
    # variable's merged reads). Outer-level closure is the region's job.
    changed = True
    while changed:
        changed = False
        for w in touched:
            reads = merged.entries[w]
            for r in list(reads):
                if r.var in inner_reads_by_var and r.var in receiver and r.var != w.var:
                    other = merged.entries[receiver[r.var]]
                    if not other <= reads:
                        reads |= other
                        changed = True
    return merged


@dataclass
class ControlChild:
    stmt: Stmt
    kind: str  # foreach | if
    regions: list["RegionAnalysis"]


@dataclass
class RegionAnalysis:
    region_id: str
    anchor: object  # MethodDecl | Foreach | Block
    table: DataflowTable
    ctx: RegionContext
    children: list[ControlChild] = field(default_factory=list)

    def walk(self):
        yield self
        for child in self.children:
            for region in child.regions:
                yield from region.walk()

    def sigma_json(self) -> list[dict]:
        out = []
        for region in self.walk():
            span = getattr(region.anchor, "span", None)
            out.append({
                "region": region.region_id,
                "node_span": span.as_list() if span is not None else None,
                "writes": region.table.writes_json(),
            })
        return out


def _lvalue_parts(target: Expr) -> tuple[str | None, list[str]]:
    """Base-most written variable and the index/member reads on the path."""
    reads: list[str] = []
    node = target
    while True:
        if isinstance(node, Var):
            return node.name, reads
        if isinstance(node, Subscript):
            if node.index is not None:
                reads[:0] = expr_vars(node.index)
            node = node.base
        elif isinstance(node, PropertyGet):
            node = node.base
        else:
            return None, reads


def analyze_method(method: MethodDecl, types: TypeTable) -> RegionAnalysis:
    """Analyze every control-flow block of `method` bottom-up.

    Returns the root region (the method body); nested foreach/if blocks hang
    off it in source order. Every table is fixpoint-closed. Conditions,
    returns, and bare expression statements contribute nothing.
    """
    return _analyze_block(method, f"{method.name}", method.body.stmts,
                          types, header=None)


def _analyze_block(anchor, region_id: str, stmts: list[Stmt], types: TypeTable,
                   header) -> RegionAnalysis:
    ctx = RegionContext()
    table = DataflowTable(region_id)
    region = RegionAnalysis(region_id, anchor, table, ctx)
    if header is not None:
        subject_vars, key, value, span = header
        flow_foreach_header(table, ctx, subject_vars, key, value, types, span=span)
    for pos, stmt in enumerate(stmts):
        if isinstance(stmt, Assign):
            target, index_reads = _lvalue_parts(stmt.target)
            if target is None:
                continue
            flow_assign(table, ctx, target, index_reads + expr_vars(stmt.rhs),
                        types, op=stmt.op, span=stmt.span)
        elif isinstance(stmt, Foreach):
            inner = _analyze_block(
                stmt, f"{region_id}/foreach@{pos}", stmt.body.stmts, types,
                header=(expr_vars(stmt.subject), stmt.key, stmt.value))
            table = merge(table, inner.table, ctx)
            region.table = table
            region.children.append(ControlChild(stmt, "foreach", [inner]))
        elif isinstance(stmt, If):
            branches = [_analyze_block(stmt, f"{region_id}/then@{pos}",
                                       stmt.then.stmts, types, header=None)]
            if stmt.orelse is not None:
                branches.append(_analyze_block(stmt, f"{region_id}/else@{pos}",
                                               stmt.orelse.stmts, types,
                                               header=None))
            for branch in branches:
                table = merge(table, branch.table, ctx)
            region.table = table
            region.children.append(ControlChild(stmt, "if", branches))
        # Return / ExprStmt: no writes, no appearance allocation.
    region.table = close_fixpoint(table)
    return region
