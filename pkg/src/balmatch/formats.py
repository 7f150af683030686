"""File formats: market JSON, fractional-matching tables, tree outlines."""

from __future__ import annotations

import json
from fractions import Fraction
from typing import Optional

from .fractional import FractionalMatching
from .market import Market, MarketError, Matching
from .prefs import DecomposedMarket
from .techtree import TechnologyTree, TreeError


class ParseError(ValueError):
    """Unreadable input file; message carries location context."""


# -- markets -----------------------------------------------------------------

def parse_market(text: str) -> Market:
    """JSON market: workers list, firm chains (best first), worker lists."""
    try:
        data = json.loads(text)
    except json.JSONDecodeError as e:
        raise ParseError(f"line {e.lineno}, column {e.colno}: {e.msg}") from e
    for key in ("workers", "firms", "worker_prefs"):
        if key not in data:
            raise ParseError(f"missing key: {key}")
    try:
        return Market.build(
            workers=data["workers"],
            firm_chains={f: [set(s) for s in chain] for f, chain in data["firms"].items()},
            worker_prefs={w: tuple(lst) for w, lst in data["worker_prefs"].items()},
        )
    except MarketError as e:
        raise ParseError(str(e)) from e


def serialize_market(m: Market) -> str:
    data = {
        "workers": list(m.workers),
        "firms": {
            f: [sorted(s) for s in m.firm_prefs[f].chain] for f in m.firms
        },
        "worker_prefs": {w: list(m.worker_prefs[w]) for w in m.workers},
    }
    return json.dumps(data, indent=2, ensure_ascii=False) + "\n"


# -- fractional matchings ----------------------------------------------------

def parse_fractional(text: str, d: DecomposedMarket) -> FractionalMatching:
    """Whitespace table: header of workers, one row per firm plus a ``null``
    row, entries as exact rationals ``p/q``."""
    lines = [ln for ln in text.splitlines() if ln.strip() and not ln.lstrip().startswith("#")]
    if not lines:
        raise ParseError("empty fractional matching file")
    header = lines[0].split()
    workers = list(d.market.workers)
    if header != workers:
        raise ParseError(
            f"header {header} does not list the market's workers {workers}"
        )
    rows: dict[str, dict[str, Fraction]] = {}
    for ln in lines[1:]:
        parts = ln.split()
        if len(parts) != len(workers) + 1:
            raise ParseError(f"bad row (expected {len(workers) + 1} fields): {ln!r}")
        label = parts[0]
        if label in rows:
            raise ParseError(f"duplicate row label: {label}")
        try:
            rows[label] = {
                w: Fraction(tok) for w, tok in zip(workers, parts[1:])
            }
        except (ValueError, ZeroDivisionError) as e:
            raise ParseError(f"bad rational in row {label}: {e}") from e
    if "null" not in rows:
        raise ParseError("missing null row")
    null_row = rows.pop("null")
    if set(rows) != set(d.market.firms):
        raise ParseError(
            f"row labels {sorted(rows)} do not match firms {sorted(d.market.firms)}"
        )
    levels = {}
    for f, row in rows.items():
        target = d.market.firm_prefs[f].chain[0]
        vals = {row[w] for w in target}
        if len(vals) != 1:
            raise ParseError(f"row {f} is not a single scale of its acceptable set")
        if any(row[w] != 0 for w in workers if w not in target):
            raise ParseError(f"row {f} has mass outside its acceptable set")
        levels[f] = vals.pop()
    return FractionalMatching(levels=levels, null_assignment=null_row)


def serialize_fractional(fm: FractionalMatching, d: DecomposedMarket) -> str:
    workers = list(d.market.workers)
    width = max(len(x) for x in workers + list(d.market.firms) + ["null"]) + 2

    def fmt(x: Fraction) -> str:
        return str(x)

    lines = ["".ljust(width) + "".join(w.rjust(width) for w in workers)]
    for f in d.market.firms:
        target = d.market.firm_prefs[f].chain[0]
        row = [fmt(fm.levels[f]) if w in target else "0" for w in workers]
        lines.append(f.ljust(width) + "".join(x.rjust(width) for x in row))
    lines.append(
        "null".ljust(width)
        + "".join(fmt(fm.null_assignment[w]).rjust(width) for w in workers)
    )
    return "\n".join(ln.rstrip() for ln in lines) + "\n"


# -- technology trees --------------------------------------------------------

def parse_tree(text: str) -> TechnologyTree:
    """Indented outline, two spaces per depth: ``name: {w1,w2}``; the
    textual order of children is the tree's child order."""
    entries = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        if not raw.strip() or raw.lstrip().startswith("#"):
            continue
        stripped = raw.lstrip(" ")
        indent = len(raw) - len(stripped)
        if indent % 2:
            raise ParseError(f"line {lineno}: odd indentation")
        if ":" not in stripped:
            raise ParseError(f"line {lineno}: expected 'name: {{workers}}'")
        name, _, rest = stripped.partition(":")
        rest = rest.strip()
        if not (rest.startswith("{") and rest.endswith("}")):
            raise ParseError(f"line {lineno}: worker set must be braced")
        inner = rest[1:-1].strip()
        members = frozenset(x.strip() for x in inner.split(",") if x.strip())
        entries.append((indent // 2, name.strip(), members))
    if not entries:
        raise ParseError("empty tree file")
    if entries[0][0] != 0:
        raise ParseError("root must be unindented")
    worker_sets: dict[str, frozenset[str]] = {}
    children: dict[str, list[str]] = {}
    stack: list[str] = []
    for depth, name, members in entries:
        if name in worker_sets:
            raise ParseError(f"duplicate vertex: {name}")
        if depth > len(stack):
            raise ParseError(f"vertex {name} skips a level")
        worker_sets[name] = members
        children[name] = []
        del stack[depth:]
        if stack:
            children[stack[-1]].append(name)
        elif depth > 0 or len(worker_sets) > 1:
            raise ParseError(f"vertex {name} is a second root")
        stack.append(name)
    try:
        return TechnologyTree(
            root=entries[0][1],
            worker_sets=worker_sets,
            children={v: tuple(c) for v, c in children.items()},
        )
    except TreeError as e:
        raise ParseError(str(e)) from e


def serialize_tree(t: TechnologyTree) -> str:
    lines = []

    def walk(v: str, depth: int):
        members = ",".join(sorted(t.worker_sets[v]))
        lines.append("  " * depth + f"{v}: {{{members}}}")
        for c in t.children.get(v, ()):
            walk(c, depth + 1)

    walk(t.root, 0)
    return "\n".join(lines) + "\n"


def tree_to_json(t: TechnologyTree) -> str:
    def node(v: str):
        return {
            "name": v,
            "workers": sorted(t.worker_sets[v]),
            "children": [node(c) for c in t.children.get(v, ())],
        }

    return json.dumps(node(t.root), indent=2)


def tree_from_json(text: str) -> TechnologyTree:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as e:
        raise ParseError(f"line {e.lineno}, column {e.colno}: {e.msg}") from e
    worker_sets: dict[str, frozenset[str]] = {}
    children: dict[str, tuple[str, ...]] = {}

    def walk(node):
        name = node["name"]
        if name in worker_sets:
            raise ParseError(f"duplicate vertex: {name}")
        worker_sets[name] = frozenset(node.get("workers", []))
        kids = node.get("children", [])
        children[name] = tuple(k["name"] for k in kids)
        for k in kids:
            walk(k)

    walk(data)
    try:
        return TechnologyTree(root=data["name"], worker_sets=worker_sets, children=children)
    except TreeError as e:
        raise ParseError(str(e)) from e


# -- matchings ---------------------------------------------------------------

def render_matching(mu: Optional[Matching], m: Market) -> str:
    """Two-row layout: firms (plus null) above their matched worker sets."""
    if mu is None:
        return "NONE"
    inv = mu.inverse()
    cells = []
    for f in list(m.firms) + [None]:
        label = f if f is not None else "null"
        members = ",".join(sorted(inv.get(f, frozenset())))
        cells.append((label, members))
    width = [max(len(a), len(b)) + 2 for a, b in cells]
    top = "".join(a.ljust(w) for (a, _), w in zip(cells, width))
    bottom = "".join(b.ljust(w) for (_, b), w in zip(cells, width))
    return top.rstrip() + "\n" + bottom.rstrip()
