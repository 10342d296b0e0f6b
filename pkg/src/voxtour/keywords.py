"""Keyword detection and relevance ordering over a scene tree.

Given free text (a visitor question or a narration answer), find which nodes
are mentioned and where, then order the tree so that structures mentioned
early come first. The ordering is hierarchical: a parent whose subtree is
mentioned early outranks a parent whose subtree shows up late, regardless of
how the flat character positions interleave.
"""

from __future__ import annotations

import math
import re
from typing import Optional

from .scene_model import SceneTree, depth_of

def _term_pattern(term: str) -> str:
    # Word-bounded, tolerant of an added plural "s" and of run-on whitespace
    # inside multi-word names.
    body = re.escape(term).replace(r"\ ", r"\s+")
    return r"(?<!\w)" + body + r"s?(?!\w)"


def _node_pattern(node) -> re.Pattern:
    terms = {node.name}
    if node.label.lower() != node.name.lower():
        terms.add(node.label)
    # re.compile memoizes by pattern string, so repeat queries stay cheap.
    return re.compile("|".join(_term_pattern(t) for t in sorted(terms)), re.IGNORECASE)


def detect_keywords(tree: SceneTree, text: str) -> dict[str, int]:
    """Map node id -> 1-based character index of its first mention in text.

    A node is mentioned when its name or label occurs as a whole word
    (plural-tolerant). Nodes that never occur are absent from the result.
    """
    hits: dict[str, int] = {}
    for node in tree.nodes.values():
        m = _node_pattern(node).search(text)
        if m:
            hits[node.id] = m.start() + 1
    return hits


def update_minimum_indices(tree: SceneTree, hits: dict[str, int]) -> dict[str, float]:
    """Propagate first-mention indices bottom-up.

    Each node gets the smallest index found anywhere in its subtree, or
    math.inf when the subtree is never mentioned. Computed per query; nothing
    is stored on the tree.
    """
    minima: dict[str, float] = {}

    def visit(node_id: str) -> float:
        best = float(hits.get(node_id, math.inf))
        for child_id in tree.node(node_id).child_ids:
            best = min(best, visit(child_id))
        minima[node_id] = best
        return best

    visit(tree.root_id)
    return minima


def sort_nodes(
    tree: SceneTree,
    hits: dict[str, int],
    start_id: Optional[str] = None,
    minima: Optional[dict[str, float]] = None,
) -> list[str]:
    """Order mentioned nodes by hierarchical relevance.

    Depth-first from start_id (root by default), emitting each mentioned node
    when visited and descending into children in ascending order of their
    subtree minimum index. Unmentioned subtrees sort last and emit nothing;
    ties keep document order.
    """
    if minima is None:
        minima = update_minimum_indices(tree, hits)
    ordered: list[str] = []

    def visit(node_id: str) -> None:
        if node_id in hits:
            ordered.append(node_id)
        children = sorted(tree.node(node_id).child_ids, key=lambda c: minima[c])
        for child_id in children:
            if not math.isinf(minima[child_id]):
                visit(child_id)

    visit(start_id or tree.root_id)
    return ordered


def select_focus_node(tree: SceneTree, text: str) -> Optional[str]:
    """Pick the node a question is about: the deepest mention wins.

    "Show me the tail sheath" mentions both Tail and tail sheath at the same
    spot; the deeper (more specific) one is chosen. Equal depth falls back to
    the earlier mention. None when nothing is mentioned.
    """
    hits = detect_keywords(tree, text)
    if not hits:
        return None
    order = {node_id: i for i, node_id in enumerate(tree.nodes)}
    return min(hits, key=lambda nid: (-depth_of(tree, nid), hits[nid], order[nid]))
