"""Step-by-step exploration: turn an answer into scenes and follow-up offers.

An answer is mined for mentioned structures, ordered by relevance, and walked
with a cursor: each round offers the next two nodes the visitor has not seen.
Offers the visitor passes over are skipped for good (the cursor moved past
them), selected ones are marked visited, so nothing is offered twice.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from .errors import IndexOutOfRange, NoInstances, NoPendingOptions
from .keywords import detect_keywords, select_focus_node, sort_nodes
from .narration import generate_narration
from .scenes import build_scene
from .session import SessionState
from .timeline import Scene, SceneKind

OPTIONS_PER_ROUND = 2


@dataclass
class ExplorationPlan:
    node_list: list[str]
    cursor: int = 0


def run_exploration(
    session: SessionState, question: str, answer: str
) -> list[str]:
    """Start a fresh exploration from a spoken answer.

    Enqueues the scene for the structure the question was about (the answer
    rides along as its narration), builds the ordered node list from the
    answer text, and returns the first round of options.
    """
    tree = session.tree
    session.interrupt()
    focus = select_focus_node(tree, question)
    if focus is None:
        scene = build_scene(SceneKind.SPEECH_ONLY, None, tree, session.camera, answer)
    else:
        scene = node_scene(session, focus, speech=answer)
    session.enqueue_scene(scene)
    hits = detect_keywords(tree, answer)
    session.plan = ExplorationPlan(sort_nodes(tree, hits))
    return next_options(session)


def node_scene(session: SessionState, node_id: str, speech: Optional[str] = None) -> Scene:
    """Overview for assemblies, Focus for leaf types; Overview again when a
    leaf arrives without placement data."""
    tree = session.tree
    node = tree.node(node_id)
    kind = SceneKind.OVERVIEW if node.child_ids else SceneKind.FOCUS
    try:
        return build_scene(kind, node_id, tree, session.camera, speech)
    except NoInstances:
        return build_scene(SceneKind.OVERVIEW, node_id, tree, session.camera, speech)


def next_options(session: SessionState) -> list[str]:
    """Advance the cursor to the next unvisited nodes; empties end the plan."""
    plan = session.plan
    if plan is None:
        session.pending_options = []
        return []
    options: list[str] = []
    while plan.cursor < len(plan.node_list) and len(options) < OPTIONS_PER_ROUND:
        node_id = plan.node_list[plan.cursor]
        plan.cursor += 1
        if node_id in session.visited:
            continue
        options.append(node_id)
    session.pending_options = options
    if not options:
        session.plan = None
    return options


def select_option(session: SessionState, index: int) -> Scene:
    """Visit one offered node and line up the next round."""
    options = session.pending_options
    if not options:
        raise NoPendingOptions("no exploration options are on offer")
    if not 0 <= index < len(options):
        raise IndexOutOfRange(
            f"option index {index} outside 0..{len(options) - 1}"
        )
    node_id = options[index]
    session.visited.add(node_id)
    node = session.tree.node(node_id)
    lead_in = generate_narration("transition", {"node": node.name}, rng=session.rng)
    scene = node_scene(session, node_id, speech=f"{lead_in} {node.description}")
    session.enqueue_scene(scene)
    offer_round(session)
    return scene


def offer_round(session: SessionState) -> list[str]:
    """Queue the narration for the next round of options (or the close-out)."""
    options = next_options(session)
    if options:
        names = [session.tree.node(nid).name for nid in options]
        prompt = generate_narration(
            "option-prompt", {"options": names}, rng=session.rng
        )
        session.enqueue_scene(Scene(SceneKind.SPEECH_ONLY, prompt))
    return options


def end_plan(session: SessionState) -> None:
    """Visitor signalled they are done with the guided walk."""
    session.plan = None
    session.pending_options = []
    session.timeline.queue.clear()
