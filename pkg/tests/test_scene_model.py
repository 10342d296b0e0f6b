"""Scene-tree loading, validation, lookup, and the bundled fixtures."""

import io
import json
import random
from pathlib import Path

import pytest
from hypothesis import given, strategies as st

from voxtour.errors import ParseError, UnknownNode, ValidationError
from voxtour.scene_model import (
    depth_of,
    find_node,
    load_scene_tree,
    path_to_root,
    serialize_scene_tree,
    tree_from_document,
)

from conftest import make_doc, make_tree, random_parents

MODELS_DIR = Path(__file__).resolve().parent.parent / "src" / "voxtour" / "assets" / "models"


@pytest.fixture(scope="module")
def t4():
    return load_scene_tree(MODELS_DIR / "t4.json")


class TestFixtures:
    @pytest.mark.parametrize("fname,nodes,leaves", [
        ("t4.json", 39, 31),
        ("sars_cov_2.json", 16, 12),
        ("hiv.json", 42, 37),
    ])
    def test_counts(self, fname, nodes, leaves):
        tree = load_scene_tree(MODELS_DIR / fname)
        assert len(tree) == nodes
        assert tree.leaf_count() == leaves

    def test_t4_head_children_order(self, t4):
        head = t4.node(find_node(t4, "head"))
        first_two = [t4.node(c).name for c in head.child_ids[:2]]
        assert first_two == ["capsid protein", "HOC"]

    def test_t4_capsid_is_head_label(self, t4):
        assert find_node(t4, "capsid") == find_node(t4, "head")

    def test_leaves_have_placements(self, t4):
        for node in t4.nodes.values():
            if node.is_leaf:
                assert node.instance_count > 0
                assert len(node.instances) >= 1


class TestLoading:
    def test_round_trip(self, t4):
        again = tree_from_document(serialize_scene_tree(t4))
        assert again == t4

    def test_loads_from_stream(self):
        doc = make_doc([None, 0])
        tree = load_scene_tree(io.StringIO(json.dumps(doc)))
        assert len(tree) == 2

    def test_malformed_json(self, tmp_path):
        bad = tmp_path / "bad.json"
        bad.write_text("{nope", encoding="utf-8")
        with pytest.raises(ParseError):
            load_scene_tree(bad)

    def test_missing_file(self, tmp_path):
        with pytest.raises(ParseError):
            load_scene_tree(tmp_path / "absent.json")

    def test_non_object_document(self):
        with pytest.raises(ParseError):
            tree_from_document([1, 2, 3])

    def test_missing_keys(self):
        with pytest.raises(ParseError):
            tree_from_document({"model_name": "x"})
        doc = make_doc([None])
        del doc["nodes"][0]["description"]
        with pytest.raises(ParseError):
            tree_from_document(doc)


class TestValidation:
    def test_duplicate_id(self):
        doc = make_doc([None, 0])
        doc["nodes"][1]["id"] = doc["nodes"][0]["id"]
        with pytest.raises(ValidationError, match="duplicate node id"):
            tree_from_document(doc)

    def test_missing_parent(self):
        doc = make_doc([None, 0])
        doc["nodes"][1]["parent_id"] = "node-99"
        with pytest.raises(ValidationError, match="missing parent"):
            tree_from_document(doc)

    def test_two_roots(self):
        with pytest.raises(ValidationError, match="exactly one root"):
            tree_from_document(make_doc([None, None]))

    def test_parent_cycle(self):
        doc = make_doc([None, 0, 1])
        doc["nodes"][1]["parent_id"] = "node-2"  # 1 <-> 2 loop off the root
        with pytest.raises(ValidationError, match="cycle or orphan"):
            tree_from_document(doc)

    def test_self_parent(self):
        doc = make_doc([None, 0])
        doc["nodes"][1]["parent_id"] = "node-1"
        with pytest.raises(ValidationError, match="cycle or orphan"):
            tree_from_document(doc)

    def test_description_word_cap(self):
        doc = make_doc([None])
        doc["nodes"][0]["description"] = "word " * 26
        with pytest.raises(ValidationError, match="description"):
            tree_from_document(doc)

    def test_negative_instance_count(self):
        doc = make_doc([None])
        doc["nodes"][0]["instance_count"] = -1
        with pytest.raises(ValidationError, match="instance_count"):
            tree_from_document(doc)

    def test_count_below_placements(self):
        doc = make_doc([None], counts=[1])
        doc["nodes"][0]["instance_count"] = 0
        with pytest.raises(ValidationError, match="placements"):
            tree_from_document(doc)

    def test_count_without_placements(self):
        doc = make_doc([None])
        doc["nodes"][0]["instance_count"] = 3
        with pytest.raises(ValidationError, match="no placement"):
            tree_from_document(doc)

    def test_non_unit_quaternion(self):
        doc = make_doc([None], counts=[1])
        doc["nodes"][0]["instances"][0]["orientation"] = [1.0, 1.0, 0.0, 0.0]
        with pytest.raises(ValidationError, match="unit quaternion"):
            tree_from_document(doc)

    def test_zero_radius(self):
        with pytest.raises(ValidationError, match="radius"):
            tree_from_document(make_doc([None], radii=[0.0]))

    def test_duplicate_name_case_insensitive(self):
        with pytest.raises(ValidationError, match="duplicate node name"):
            tree_from_document(make_doc([None, 0, 0], names=["r", "Core", "core"]))

    def test_duplicate_label(self):
        doc = make_doc([None, 0, 0], names=["r", "a", "b"])
        doc["nodes"][2]["label"] = "A"
        with pytest.raises(ValidationError, match="duplicate node label"):
            tree_from_document(doc)

    def test_label_shadows_other_name(self):
        doc = make_doc([None, 0, 0], names=["r", "alpha", "b"])
        doc["nodes"][1]["label"] = "First"
        doc["nodes"][2]["label"] = "Alpha"  # points at node 1's name
        with pytest.raises(ValidationError, match="collides"):
            tree_from_document(doc)


class TestLookup:
    def test_find_node_variants(self, t4):
        head_id = t4.name_index["head"]
        assert find_node(t4, "head") == head_id
        assert find_node(t4, "HEAD") == head_id
        assert find_node(t4, "heads") == head_id
        assert find_node(t4, "  Capsid ") == head_id
        assert find_node(t4, "capsid proteins") == t4.name_index["capsid protein"]
        assert find_node(t4, "nucleus") is None
        assert find_node(t4, "") is None

    def test_children_in_document_order(self):
        tree = make_tree([None, 0, 0, 0])
        assert tree.node("node-0").child_ids == ("node-1", "node-2", "node-3")

    def test_unknown_node(self, t4):
        with pytest.raises(UnknownNode):
            t4.node("nope")

    def test_path_and_depth_fixture(self, t4):
        spike = t4.name_index["central spike"]
        names = [t4.node(n).name for n in path_to_root(t4, spike)]
        assert names == ["central spike", "baseplate hub", "baseplate", "Tail", "T4"]
        assert depth_of(t4, spike) == 4
        assert depth_of(t4, t4.root_id) == 0

    @given(st.integers(0, 10_000))
    def test_path_properties_random_trees(self, seed):
        rng = random.Random(seed)
        tree = make_tree(random_parents(rng))
        for nid, node in tree.nodes.items():
            path = path_to_root(tree, nid)
            assert path[0] == nid
            assert path[-1] == tree.root_id
            assert depth_of(tree, nid) == len(path) - 1
            for above, below in zip(path[1:], path):
                assert tree.node(below).parent_id == above
