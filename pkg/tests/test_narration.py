"""Narration templates: coverage, determinism, and slot filling."""

import json
import random

import pytest

from voxtour.errors import ParseError, UnknownTaskType, ValidationError
from voxtour.narration import (
    REQUIRED_TASK_TYPES,
    format_options,
    generate_narration,
    load_templates,
)

FULL_PAYLOAD = {
    "model": "the T4 bacteriophage",
    "node": "head",
    "options": ["T4", "head"],
    "direction": "closer",
}


class TestTemplateFile:
    def test_required_types_covered(self):
        templates = load_templates()
        for task_type in REQUIRED_TASK_TYPES:
            assert task_type in templates
            assert len(templates[task_type]) >= 3

    def test_custom_path(self, tmp_path):
        doc = {t: [f"line for {t}"] for t in REQUIRED_TASK_TYPES}
        path = tmp_path / "templates.json"
        path.write_text(json.dumps(doc), encoding="utf-8")
        assert load_templates(path)["help"] == ["line for help"]

    def test_missing_type_rejected(self, tmp_path):
        doc = {"help": ["x"]}
        path = tmp_path / "t.json"
        path.write_text(json.dumps(doc), encoding="utf-8")
        with pytest.raises(ValidationError, match="lacks task types"):
            load_templates(path)

    def test_empty_list_rejected(self, tmp_path):
        doc = {t: ["x"] for t in REQUIRED_TASK_TYPES}
        doc["help"] = []
        path = tmp_path / "t.json"
        path.write_text(json.dumps(doc), encoding="utf-8")
        with pytest.raises(ValidationError):
            load_templates(path)

    def test_bad_json(self, tmp_path):
        path = tmp_path / "t.json"
        path.write_text("{oops", encoding="utf-8")
        with pytest.raises(ParseError):
            load_templates(path)


class TestGeneration:
    def test_option_prompt_names_both(self):
        text = generate_narration("option-prompt", {"options": ["T4", "head"]}, rng=1)
        assert "T4" in text and "head" in text

    def test_seed_determinism(self):
        for seed in range(20):
            a = generate_narration("transition", {"node": "head"}, rng=seed)
            b = generate_narration("transition", {"node": "head"}, rng=seed)
            assert a == b

    def test_shared_rng_stream(self):
        r1, r2 = random.Random(5), random.Random(5)
        a = [generate_narration("detail-prompt", rng=r1) for _ in range(5)]
        b = [generate_narration("detail-prompt", rng=r2) for _ in range(5)]
        assert a == b

    def test_all_templates_reachable(self):
        templates = load_templates()["detail-prompt"]
        seen = {
            generate_narration("detail-prompt", rng=seed) for seed in range(1000)
        }
        assert seen == set(templates)

    def test_unknown_task_type(self):
        with pytest.raises(UnknownTaskType):
            generate_narration("weather-report")

    def test_no_unfilled_slots_anywhere(self):
        for task_type in load_templates():
            for seed in range(12):
                text = generate_narration(task_type, FULL_PAYLOAD, rng=seed)
                assert "{" not in text and "}" not in text

    def test_options_payload_may_be_string(self):
        text = generate_narration(
            "option-prompt", {"options": "the head or the neck"}, rng=0
        )
        assert "head" in text and "neck" in text


class TestFormatOptions:
    def test_shapes(self):
        assert format_options([]) == ""
        assert format_options(["a"]) == "the a"
        assert format_options(["a", "b"]) == "the a or the b"
        assert format_options(["a", "b", "c"]) == "the a, the b or the c"
