"""Guided exploration: answer mining, option rounds, and the visit cursor."""

import random
from pathlib import Path

import pytest

from voxtour.errors import IndexOutOfRange, NoPendingOptions
from voxtour.exploration import (
    end_plan,
    next_options,
    offer_round,
    run_exploration,
    select_option,
)
from voxtour.keywords import detect_keywords, sort_nodes
from voxtour.scene_model import load_scene_tree
from voxtour.session import SessionState
from voxtour.timeline import SceneKind

from conftest import make_tree, random_tree
from test_keywords import PARAGRAPH

MODELS_DIR = Path(__file__).resolve().parent.parent / "src" / "voxtour" / "assets" / "models"

QUESTION = "What is a T4 bacteriophage?"
# relevance order of the structures PARAGRAPH mentions
EXPECTED_NAMES = ["T4", "head", "HOC", "capsid protein", "Tail", "baseplate"]


@pytest.fixture(scope="module")
def t4():
    return load_scene_tree(MODELS_DIR / "t4.json")


@pytest.fixture
def session(t4):
    return SessionState(t4, rng=random.Random(7))


def names_of(tree, ids):
    return [tree.node(nid).name for nid in ids]


class TestRunExploration:
    def test_first_round_for_the_t4_answer(self, session, t4):
        options = run_exploration(session, QUESTION, PARAGRAPH)
        assert names_of(t4, options) == ["T4", "head"]
        assert session.pending_options == options
        assert session.plan is not None and session.plan.cursor == 2
        # exactly one scene: the pipeline decides what narration follows
        assert len(session.timeline) == 1
        scene = session.timeline.current
        assert scene.kind is SceneKind.OVERVIEW
        assert scene.target_node_id == t4.root_id
        assert scene.speech == PARAGRAPH

    def test_focus_scene_for_leaf_question(self, session, t4):
        run_exploration(session, "Tell me about the HOC protein.", PARAGRAPH)
        scene = session.timeline.current
        assert scene.kind is SceneKind.FOCUS
        assert scene.target_node_id == t4.name_index["hoc"]

    def test_answer_without_mentions(self, session):
        answer = "I can only speak about structures in this model."
        options = run_exploration(session, "Any good lunch spots?", answer)
        assert options == []
        assert session.plan is None
        scene = session.timeline.current
        assert scene.kind is SceneKind.SPEECH_ONLY
        assert scene.speech == answer
        assert scene.target_node_id is None

    def test_interrupts_previous_activity(self, session):
        session.say("earlier chatter")
        session.say("never spoken")
        run_exploration(session, QUESTION, PARAGRAPH)
        spoken = [t for _, t in session.conversation_log]
        assert spoken == ["earlier chatter", PARAGRAPH]
        assert len(session.timeline) == 1

    def test_leaf_without_instances_gets_overview(self):
        tree = make_tree([None, 0])
        session = SessionState(tree)
        run_exploration(session, "the part 1", "All about the part 1 here.")
        scene = session.timeline.current
        assert scene.kind is SceneKind.OVERVIEW
        assert scene.target_node_id == "node-1"


class TestRounds:
    def test_select_visits_and_offers_next(self, session, t4):
        run_exploration(session, QUESTION, PARAGRAPH)
        scene = select_option(session, 1)
        head = t4.node(t4.name_index["head"])
        assert head.id in session.visited
        assert scene.kind is SceneKind.OVERVIEW
        assert scene.target_node_id == head.id
        assert head.description in scene.speech
        assert names_of(t4, session.pending_options) == ["HOC", "capsid protein"]
        # answer scene still playing; node scene and prompt wait behind it
        assert len(session.timeline) == 3
        prompt = session.timeline.queue[-1]
        assert prompt.kind is SceneKind.SPEECH_ONLY
        assert "HOC" in prompt.speech and "capsid protein" in prompt.speech

    def test_rounds_walk_the_whole_list_once(self, session, t4):
        offered = list(run_exploration(session, QUESTION, PARAGRAPH))
        while session.plan is not None:
            offered.extend(offer_round(session))
        assert names_of(t4, offered) == EXPECTED_NAMES
        assert len(set(offered)) == len(offered)
        assert session.pending_options == []

    def test_declined_offers_are_gone_for_good(self, session, t4):
        run_exploration(session, QUESTION, PARAGRAPH)
        second = offer_round(session)
        assert names_of(t4, second) == ["HOC", "capsid protein"]
        third = offer_round(session)
        assert names_of(t4, third) == ["Tail", "baseplate"]
        assert offer_round(session) == []
        assert session.plan is None

    def test_visited_nodes_skipped_in_later_plans(self, session, t4):
        run_exploration(session, QUESTION, PARAGRAPH)
        select_option(session, 1)  # visit the head
        options = run_exploration(session, QUESTION, PARAGRAPH)
        assert names_of(t4, options) == ["T4", "HOC"]

    def test_select_without_offer(self, session):
        with pytest.raises(NoPendingOptions):
            select_option(session, 0)

    def test_select_index_out_of_range(self, session):
        run_exploration(session, QUESTION, PARAGRAPH)
        with pytest.raises(IndexOutOfRange):
            select_option(session, 2)
        with pytest.raises(IndexOutOfRange):
            select_option(session, -1)

    def test_end_plan_keeps_current_scene(self, session):
        run_exploration(session, QUESTION, PARAGRAPH)
        playing = session.timeline.current
        select_option(session, 0)
        end_plan(session)
        assert session.plan is None
        assert session.pending_options == []
        assert session.timeline.current is playing
        assert len(session.timeline) == 1


class TestAgainstKeywordOrder:
    def test_rounds_reproduce_sort_order(self):
        rng = random.Random(99)
        for _ in range(120):
            tree = random_tree(rng)
            names = [n.name for n in tree.nodes.values()]
            mentioned = rng.sample(names, rng.randint(0, len(names)))
            answer = "Here " + " and then ".join(
                f"the {name} appears" for name in mentioned
            ) + "."
            session = SessionState(tree, rng=random.Random(1))
            offered = list(run_exploration(session, "tell me", answer))
            while session.plan is not None:
                offered.extend(offer_round(session))
            expected = sort_nodes(tree, detect_keywords(tree, answer))
            assert offered == expected

    def test_next_options_without_plan(self, session):
        assert next_options(session) == []
        assert session.pending_options == []
