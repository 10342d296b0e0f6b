"""Hierarchical scene tree: loading, validation, and lookup.

A scene tree describes one 3D model as a multi-scale hierarchy of ingredient
types. Trees are immutable once loaded and can be shared read-only across any
number of concurrent sessions; all per-query working data (e.g. keyword index
maps) lives outside the tree.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from pathlib import Path
from typing import IO, Optional

from .errors import ParseError, UnknownNode, ValidationError

MAX_DESCRIPTION_WORDS = 25
_QUAT_NORM_TOL = 1e-6

Vec3 = tuple[float, float, float]
Quat = tuple[float, float, float, float]  # (w, x, y, z)


@dataclass(frozen=True)
class InstancePlacement:
    """One placed copy of an ingredient type."""

    position: Vec3
    orientation: Quat  # unit quaternion


@dataclass(frozen=True)
class BoundingSphere:
    center: Vec3
    radius: float


@dataclass(frozen=True)
class SceneNode:
    id: str
    name: str
    label: str
    parent_id: Optional[str]
    child_ids: tuple[str, ...]
    description: str
    instance_count: int
    instances: tuple[InstancePlacement, ...]
    bounding_sphere: BoundingSphere

    @property
    def is_leaf(self) -> bool:
        return not self.child_ids


@dataclass(frozen=True)
class SceneTree:
    model_name: str
    root_id: str
    nodes: dict[str, SceneNode]
    # lowercase name/label -> node id; built once at load, treated read-only
    name_index: dict[str, str]
    label_index: dict[str, str]

    def node(self, node_id: str) -> SceneNode:
        try:
            return self.nodes[node_id]
        except KeyError:
            raise UnknownNode(f"no node with id {node_id!r}") from None

    def children(self, node_id: str) -> list[SceneNode]:
        return [self.nodes[c] for c in self.node(node_id).child_ids]

    def __len__(self) -> int:
        return len(self.nodes)

    def leaf_count(self) -> int:
        return sum(1 for n in self.nodes.values() if n.is_leaf)

    def names(self) -> list[str]:
        """Canonical node names in document order."""
        return [n.name for n in self.nodes.values()]


def load_scene_tree(source: str | Path | IO[str]) -> SceneTree:
    """Load and validate a scene-tree document (JSON) from a path or stream."""
    try:
        if isinstance(source, (str, Path)):
            with open(source, "r", encoding="utf-8") as fh:
                doc = json.load(fh)
        else:
            doc = json.load(source)
    except (OSError, UnicodeDecodeError) as exc:
        raise ParseError(f"cannot read scene-tree document: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ParseError(f"malformed scene-tree document: {exc}") from exc
    return tree_from_document(doc)


def tree_from_document(doc: object) -> SceneTree:
    """Build a validated SceneTree from an already parsed document."""
    if not isinstance(doc, dict):
        raise ParseError("scene-tree document must be an object")
    try:
        model_name = doc["model_name"]
        raw_nodes = doc["nodes"]
    except KeyError as exc:
        raise ParseError(f"scene-tree document missing key {exc}") from exc
    if not isinstance(raw_nodes, list) or not raw_nodes:
        raise ParseError("scene-tree document needs a non-empty node list")

    nodes: dict[str, SceneNode] = {}
    children: dict[str, list[str]] = {}
    for raw in raw_nodes:
        node = _parse_node(raw)
        if node.id in nodes:
            raise ValidationError(f"duplicate node id {node.id!r}")
        nodes[node.id] = node
        children.setdefault(node.id, [])
    # child lists derive from parent_id in document order
    for node in nodes.values():
        if node.parent_id is not None:
            if node.parent_id not in nodes:
                raise ValidationError(
                    f"node {node.id!r} references missing parent {node.parent_id!r}"
                )
            children[node.parent_id].append(node.id)
    for nid, kids in children.items():
        nodes[nid] = _with_children(nodes[nid], tuple(kids))

    roots = [n.id for n in nodes.values() if n.parent_id is None]
    if len(roots) != 1:
        raise ValidationError(
            f"expected exactly one root node, found {len(roots)}"
        )
    root_id = roots[0]

    _check_reachable(nodes, root_id)
    name_index, label_index = _build_indices(nodes)

    return SceneTree(
        model_name=str(model_name),
        root_id=root_id,
        nodes=nodes,
        name_index=name_index,
        label_index=label_index,
    )


def serialize_scene_tree(tree: SceneTree) -> dict:
    """Inverse of tree_from_document; load(serialize(t)) equals t field-for-field."""
    return {
        "model_name": tree.model_name,
        "nodes": [
            {
                "id": n.id,
                "name": n.name,
                "label": n.label,
                "parent_id": n.parent_id,
                "description": n.description,
                "instance_count": n.instance_count,
                "instances": [
                    {"position": list(i.position), "orientation": list(i.orientation)}
                    for i in n.instances
                ],
                "bounding_sphere": {
                    "center": list(n.bounding_sphere.center),
                    "radius": n.bounding_sphere.radius,
                },
            }
            for n in tree.nodes.values()
        ],
    }


def find_node(tree: SceneTree, mention: str) -> Optional[str]:
    """Resolve a spoken mention to a node id.

    Matches name or label case-insensitively; a trailing "s" is stripped and
    retried so plural mentions resolve. Absence is a value, not an error.
    """
    key = mention.strip().lower()
    if not key:
        return None
    hit = tree.name_index.get(key) or tree.label_index.get(key)
    if hit is None and key.endswith("s"):
        singular = key[:-1]
        hit = tree.name_index.get(singular) or tree.label_index.get(singular)
    return hit


def path_to_root(tree: SceneTree, node_id: str) -> list[str]:
    """Node ids from the given node up to the root, node first."""
    node = tree.node(node_id)
    path = [node.id]
    while node.parent_id is not None:
        node = tree.node(node.parent_id)
        path.append(node.id)
    return path


def depth_of(tree: SceneTree, node_id: str) -> int:
    """Root has depth 0."""
    return len(path_to_root(tree, node_id)) - 1


# --- parsing helpers ---

def _parse_node(raw: object) -> SceneNode:
    if not isinstance(raw, dict):
        raise ParseError("each node must be an object")
    try:
        node_id = str(raw["id"])
        name = str(raw["name"])
        label = str(raw["label"])
        parent_id = raw["parent_id"]
        description = str(raw["description"])
        instance_count = raw["instance_count"]
        raw_instances = raw["instances"]
        sphere = raw["bounding_sphere"]
    except KeyError as exc:
        raise ParseError(f"node missing key {exc}") from exc
    if parent_id is not None:
        parent_id = str(parent_id)

    if not name.strip():
        raise ValidationError(f"node {node_id!r} has an empty name")
    words = len(description.split())
    if words > MAX_DESCRIPTION_WORDS:
        raise ValidationError(
            f"node {node_id!r} description has {words} words "
            f"(limit {MAX_DESCRIPTION_WORDS})"
        )
    if not isinstance(instance_count, int) or instance_count < 0:
        raise ValidationError(f"node {node_id!r} instance_count must be >= 0")

    instances = tuple(_parse_instance(node_id, i) for i in raw_instances)
    if len(instances) > instance_count:
        raise ValidationError(
            f"node {node_id!r} lists more placements than instance_count"
        )
    if instance_count > 0 and not instances:
        raise ValidationError(
            f"node {node_id!r} has instances but no placement data"
        )

    try:
        center = _vec3(sphere["center"])
        radius = float(sphere["radius"])
    except (KeyError, TypeError, ValueError) as exc:
        raise ParseError(f"node {node_id!r} bounding_sphere malformed: {exc}") from exc
    if radius <= 0:
        raise ValidationError(f"node {node_id!r} bounding sphere radius must be > 0")

    return SceneNode(
        id=node_id,
        name=name,
        label=label,
        parent_id=parent_id,
        child_ids=(),
        description=description,
        instance_count=instance_count,
        instances=instances,
        bounding_sphere=BoundingSphere(center=center, radius=radius),
    )


def _parse_instance(node_id: str, raw: object) -> InstancePlacement:
    if not isinstance(raw, dict):
        raise ParseError(f"node {node_id!r} instance entries must be objects")
    try:
        position = _vec3(raw["position"])
        orientation = tuple(float(v) for v in raw["orientation"])
    except (KeyError, TypeError, ValueError) as exc:
        raise ParseError(f"node {node_id!r} instance malformed: {exc}") from exc
    if len(orientation) != 4:
        raise ParseError(f"node {node_id!r} orientation must have 4 components")
    norm = math.sqrt(sum(v * v for v in orientation))
    if abs(norm - 1.0) > _QUAT_NORM_TOL:
        raise ValidationError(
            f"node {node_id!r} instance orientation is not a unit quaternion"
        )
    return InstancePlacement(position=position, orientation=orientation)


def _vec3(raw: object) -> Vec3:
    values = tuple(float(v) for v in raw)  # type: ignore[union-attr]
    if len(values) != 3:
        raise ValueError("expected 3 components")
    return values


def _with_children(node: SceneNode, child_ids: tuple[str, ...]) -> SceneNode:
    return SceneNode(
        id=node.id,
        name=node.name,
        label=node.label,
        parent_id=node.parent_id,
        child_ids=child_ids,
        description=node.description,
        instance_count=node.instance_count,
        instances=node.instances,
        bounding_sphere=node.bounding_sphere,
    )


def _check_reachable(nodes: dict[str, SceneNode], root_id: str) -> None:
    seen: set[str] = set()
    stack = [root_id]
    while stack:
        nid = stack.pop()
        seen.add(nid)
        stack.extend(nodes[nid].child_ids)
    unreachable = set(nodes) - seen
    if unreachable:
        # parent chains that never reach the root: self-parents or parent loops
        raise ValidationError(
            f"cycle or orphan subtree detected: {sorted(unreachable)}"
        )


def _build_indices(
    nodes: dict[str, SceneNode],
) -> tuple[dict[str, str], dict[str, str]]:
    name_index: dict[str, str] = {}
    label_index: dict[str, str] = {}
    for node in nodes.values():
        key = node.name.lower()
        if name_index.get(key, node.id) != node.id:
            raise ValidationError(f"duplicate node name {node.name!r}")
        name_index[key] = node.id
    for node in nodes.values():
        key = node.label.lower()
        owner = label_index.get(key, node.id)
        if owner != node.id:
            raise ValidationError(f"duplicate node label {node.label!r}")
        # a label that shadows a different node's name makes lookups ambiguous
        if name_index.get(key, node.id) != node.id:
            raise ValidationError(
                f"label {node.label!r} collides with another node's name"
            )
        label_index[key] = node.id
    return name_index, label_index
