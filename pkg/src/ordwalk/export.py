"""Text, JSON and DOT renderings of walk trees."""

from __future__ import annotations

import json

from .ordinal import render
from .walks_higher import SignedWalkTree

__all__ = ["tree_to_dict", "tree_to_json", "tree_to_dot", "tree_to_ascii"]

_EDGE_STYLES = ["solid", "dashed", "dotted", "bold"]


def _sign(s: int) -> str:
    return "+" if s > 0 else "-"


def tree_to_dict(tree: SignedWalkTree) -> dict:
    nodes = {}
    for node in tree.ordered():
        rec = {"in_sign": node.in_sign, "in": [render(x) for x in node.inputs]}
        if node.boundary:
            rec["boundary"] = True
        else:
            rec["out_sign"] = node.out_sign
            rec["out"] = render(node.out)
            rec["children"] = list(node.children)
        nodes[node.sigma] = rec
    return {"n": tree.n, "root": "", "nodes": nodes}


def tree_to_json(tree: SignedWalkTree) -> str:
    return json.dumps(tree_to_dict(tree))


def _node_id(sigma: str) -> str:
    return "n_" + sigma if sigma else "root"


def _dot_escape(text: str) -> str:
    return text.replace("\\", "\\\\").replace('"', '\\"').replace("{", "\\{") \
        .replace("}", "\\}").replace("|", "\\|").replace("<", "\\<").replace(">", "\\>")


def tree_to_dot(tree: SignedWalkTree, show: str = "both") -> str:
    lines = [
        "digraph walk {",
        "  node [shape=record, fontname=\"monospace\"];",
        f"  label=\"order-{tree.n} walk\";",
    ]
    for node in tree.ordered():
        top = _sign(node.in_sign) + "(" + ", ".join(render(x) for x in node.inputs) + ")"
        bottom = "×" if node.boundary else _sign(node.out_sign) + render(node.out)
        if show == "inputs":
            label = _dot_escape(top)
        elif show == "outputs":
            label = _dot_escape(bottom)
        else:
            label = "{" + _dot_escape(top) + "|" + _dot_escape(bottom) + "}"
        lines.append(f"  {_node_id(node.sigma)} [label=\"{label}\"];")
    for node in tree.ordered():
        for kid in node.children:
            style = _EDGE_STYLES[int(kid[-1]) % len(_EDGE_STYLES)]
            lines.append(f"  {_node_id(node.sigma)} -> {_node_id(kid)} "
                         f"[label=\"{kid[-1]}\", style={style}];")
    lines.append("}")
    return "\n".join(lines) + "\n"


def tree_to_ascii(tree: SignedWalkTree, show: str = "both") -> str:
    out = []
    stack = [("", 0)]
    while stack:
        sigma, depth = stack.pop()
        node = tree.nodes[sigma]
        ins = _sign(node.in_sign) + "(" + ", ".join(render(x) for x in node.inputs) + ")"
        res = "×" if node.boundary else _sign(node.out_sign) + render(node.out)
        if show == "inputs":
            body = ins
        elif show == "outputs":
            body = res
        else:
            body = f"{ins} -> {res}"
        out.append(f"{'  ' * depth}[{sigma or 'root'}] {body}")
        stack.extend((kid, depth + 1) for kid in reversed(node.children))
    return "\n".join(out) + "\n"
