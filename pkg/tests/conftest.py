"""Shared builders for compact synthetic scene trees."""

from __future__ import annotations

import random
from typing import Optional, Sequence

from voxtour.scene_model import SceneTree, tree_from_document


def make_doc(
    parents: Sequence[Optional[int]],
    names: Optional[Sequence[str]] = None,
    labels: Optional[Sequence[str]] = None,
    counts: Optional[Sequence[int]] = None,
    radii: Optional[Sequence[float]] = None,
) -> dict:
    """Document for a tree given by a parent-index list (entry 0 is the root).

    Indices refer to positions in the list, so document order equals list
    order and parents always precede children.
    """
    n = len(parents)
    names = list(names) if names else [f"part {i}" for i in range(n)]
    labels = list(labels) if labels else [nm[0].upper() + nm[1:] for nm in names]
    counts = list(counts) if counts else [0] * n
    radii = list(radii) if radii else [1.0] * n
    nodes = []
    for i, parent in enumerate(parents):
        count = counts[i]
        nodes.append({
            "id": f"node-{i}",
            "name": names[i],
            "label": labels[i],
            "parent_id": None if parent is None else f"node-{parent}",
            "description": f"Synthetic part number {i}.",
            "instance_count": count,
            "instances": [
                {"position": [float(i), 0.0, 0.0], "orientation": [1.0, 0.0, 0.0, 0.0]}
            ] * min(count, 1),
            "bounding_sphere": {"center": [float(i), 0.0, 0.0], "radius": radii[i]},
        })
    return {"model_name": "synthetic", "nodes": nodes}


def make_tree(parents: Sequence[Optional[int]], **kwargs) -> SceneTree:
    return tree_from_document(make_doc(parents, **kwargs))


def random_parents(rng: random.Random, max_nodes: int = 12) -> list[Optional[int]]:
    n = rng.randint(1, max_nodes)
    return [None] + [rng.randrange(i) for i in range(1, n)]


def random_tree(rng: random.Random, max_nodes: int = 12) -> SceneTree:
    return make_tree(random_parents(rng, max_nodes))
