"""Program parser, printer, executor and the brute-force reference evaluator."""

import math

import pytest

from src.core.errors import ExecutionError, ProgramSyntaxError, ProgramTypeError
from src.dsl import (
    Node,
    action_types,
    exec_action,
    exec_question,
    parse_program,
    render_program,
    root_kind,
)
from src.dsl.reference import reference_answer
from src.scene import canonicalize, make_object, validate_scene

# The fixture scene in canonical order:
#   0 small green rubber cylinder (-2, 1, 0)
#   1 big red metal cube (0, 0, 0)
#   2 small blue rubber sphere (0, 0, 1), on the cube
#   3 big green rubber cylinder (2, -1, 0)

QUESTIONS = [
    ("count(filter_shape(scene(),cylinder))", "2"),
    ("exist(filter_color(scene(),yellow))", "no"),
    ("query_color(unique(filter_shape(scene(),cube)))", "red"),
    ("query_size(unique(filter_shape(scene(),sphere)))", "small"),
    ("count(relate(unique(filter_shape(scene(),cube)),left))", "1"),
    ("count(relate(unique(filter_shape(scene(),cube)),on))", "1"),
    ("exist(relate(unique(filter_shape(scene(),sphere)),on))", "no"),
    (
        "equal_material(unique(filter_shape(scene(),sphere)),"
        "unique(filter_size(filter_shape(scene(),cylinder),small)))",
        "yes",
    ),
    (
        "greater_than(count(filter_material(scene(),rubber)),"
        "count(filter_material(scene(),metal)))",
        "yes",
    ),
    (
        "less_than(count(filter_material(scene(),rubber)),"
        "count(filter_material(scene(),metal)))",
        "no",
    ),
    (
        "equal_integer(count(filter_size(scene(),big)),"
        "count(filter_size(scene(),small)))",
        "yes",
    ),
    ("count(not(filter_color(scene(),green)))", "2"),
    ("count(or(filter_color(scene(),red),filter_shape(scene(),sphere)))", "2"),
    ("count(and(filter_size(scene(),big),filter_color(scene(),green)))", "1"),
]


class TestParser:
    def test_canonical_roundtrip(self):
        text = "count(filter_color(filter_material(scene(),metal),red))"
        assert render_program(parse_program(text)) == text

    def test_whitespace_insensitive(self):
        loose = "count( filter_color( scene() , red ) )"
        tight = "count(filter_color(scene(),red))"
        assert render_program(parse_program(loose)) == tight

    def test_numbers_render_as_floats(self):
        p = parse_program("add_object(attrs(small,red,metal,cube),absolute(1.5,-2))")
        rendered = "add_object(attrs(small,red,metal,cube),absolute(1.5,-2.0))"
        assert render_program(p) == rendered

    def test_root_kind(self):
        remove = parse_program("remove(filter_shape(scene(),cube))")
        assert root_kind(remove) == "action"
        assert root_kind(parse_program("exist(scene())")) == "question"

    def test_syntax_error_offset(self):
        with pytest.raises(ProgramSyntaxError) as info:
            parse_program("count(scene()")
        assert info.value.code == "syntax-error"
        assert info.value.offset == len("count(scene()")

    def test_non_ascii(self):
        with pytest.raises(ProgramSyntaxError, match="syntax-error"):
            parse_program("count(filter_color(scene(),réd))")

    @pytest.mark.parametrize(
        "text",
        [
            "count(red)",
            "frobnicate(scene())",
            "filter_color(scene(),square)",
            "count(scene(),scene())",
            "scene()",
            "seq(seq(noop(),noop()),noop())",
            "move(scene(),relative(on,filter_shape(scene(),cube)))",
            "add_object(attrs(small,red,rubber,cube),absolute(nan,nan))",
            "add_object(attrs(small,red,rubber,cube),absolute(0,inf))",
            "add_object(attrs(small,red,rubber,cube),absolute(1e999,0))",
        ],
    )
    def test_type_errors(self, text):
        with pytest.raises(ProgramTypeError, match="type-error"):
            parse_program(text)

    def test_expected_root(self):
        with pytest.raises(ProgramTypeError, match="not a question"):
            parse_program("remove(scene())", expect="question")
        with pytest.raises(ProgramTypeError, match="not an action"):
            parse_program("count(scene())", expect="action")

    def test_action_types(self):
        p = parse_program(
            "seq(remove(filter_color(scene(),red)),"
            "change_size(filter_shape(scene(),cube),small))"
        )
        assert action_types(p) == ["remove", "change"]


class TestQuestions:
    @pytest.mark.parametrize("text,expected", QUESTIONS)
    def test_answers(self, table_scene, text, expected):
        assert exec_question(parse_program(text), table_scene) == expected

    @pytest.mark.parametrize("text,expected", QUESTIONS)
    def test_reference_agrees(self, table_scene, text, expected):
        assert reference_answer(parse_program(text), table_scene) == expected

    def test_non_unique(self, table_scene):
        with pytest.raises(ExecutionError, match="non-unique"):
            q = parse_program("query_color(unique(filter_shape(scene(),cylinder)))")
            exec_question(q, table_scene)

    def test_counts_saturate(self):
        objs = [
            make_object("cube", "small", "rubber", "gray", (-3.0 + 0.6 * i, 0.0, 0.0))
            for i in range(10)
        ]
        s = canonicalize(objs)
        assert exec_question(parse_program("count(scene())"), s) == "9"


def run(text, s):
    return exec_action(parse_program(text, expect="action"), s)


def shapes(s):
    return [o.shape.value for o in s]


class TestActions:
    def test_noop(self, table_scene):
        assert run("noop()", table_scene) == table_scene

    def test_remove_settles_stack(self, table_scene):
        after = run("remove(filter_shape(scene(),cube))", table_scene)
        assert len(after) == 3
        sphere = next(o for o in after if o.shape.value == "sphere")
        assert sphere.pos == (0.0, 0.0, 0.0)
        assert validate_scene(after).ok

    def test_change_color(self, table_scene):
        after = run("change_color(filter_shape(scene(),cylinder),yellow)", table_scene)
        colors = [o.color.value for o in after if o.shape.value == "cylinder"]
        assert colors == ["yellow", "yellow"]
        assert [o.pos for o in after] == [o.pos for o in table_scene]

    def test_add_on_top(self, table_scene):
        after = run(
            "add_object(attrs(small,purple,metal,cube),"
            "on(filter_shape(scene(),sphere)))",
            table_scene,
        )
        new = next(o for o in after if o.color.value == "purple")
        assert new.pos == (0.0, 0.0, 2.0)
        assert validate_scene(after).ok

    def test_stack_too_high(self, table_scene):
        s = run(
            "add_object(attrs(small,purple,metal,cube),"
            "on(filter_shape(scene(),sphere)))",
            table_scene,
        )
        s = run(
            "add_object(attrs(small,yellow,metal,cube),"
            "on(filter_color(scene(),purple)))",
            s,
        )
        assert max(o.z for o in s) == 3.0
        with pytest.raises(ExecutionError, match="stack-too-high"):
            run(
                "add_object(attrs(small,cyan,metal,cube),"
                "on(filter_color(scene(),yellow)))",
                s,
            )

    def test_add_on_ground_uses_reading_order(self, table_scene):
        after = run("add_object(attrs(big,gray,rubber,sphere),ground())", table_scene)
        new = next(o for o in after if o.color.value == "gray")
        assert new.pos == (-3.0, 3.0, 0.0)

    def test_add_relative(self, table_scene):
        after = run(
            "add_object(attrs(big,gray,rubber,sphere),"
            "relative(right,filter_shape(scene(),cube)))",
            table_scene,
        )
        new = next(o for o in after if o.color.value == "gray")
        assert new.pos == (1.0, 0.0, 0.0)

    def test_add_absolute(self, table_scene):
        after = run(
            "add_object(attrs(big,gray,rubber,sphere),absolute(-1.5,-2.5))", table_scene
        )
        new = next(o for o in after if o.color.value == "gray")
        assert new.pos == (-1.5, -2.5, 0.0)

    def test_move_relative(self, table_scene):
        after = run(
            "move(filter_shape(scene(),sphere),"
            "relative(left,filter_shape(scene(),cube)))",
            table_scene,
        )
        sphere = next(o for o in after if o.shape.value == "sphere")
        assert sphere.pos == (-1.0, 0.0, 0.0)
        assert validate_scene(after).ok

    def test_move_to_ground_frees_stack(self, table_scene):
        after = run("move(filter_shape(scene(),cube),ground())", table_scene)
        cube = next(o for o in after if o.shape.value == "cube")
        sphere = next(o for o in after if o.shape.value == "sphere")
        assert sphere.pos == (0.0, 0.0, 0.0)
        assert cube.pos == (0.0, 0.5, 0.0)
        assert validate_scene(after).ok

    def test_move_empty_target_is_identity(self, table_scene):
        after = run("move(filter_color(scene(),cyan),ground())", table_scene)
        assert after == table_scene

    def test_anchor_inside_targets(self, table_scene):
        with pytest.raises(ExecutionError, match="invalid-placement"):
            run(
                "move(filter_material(scene(),rubber),"
                "on(filter_shape(scene(),sphere)))",
                table_scene,
            )

    def test_non_unique_anchor(self, table_scene):
        with pytest.raises(ExecutionError, match="non-unique-anchor"):
            run(
                "add_object(attrs(small,red,metal,cube),"
                "on(filter_shape(scene(),cylinder)))",
                table_scene,
            )

    def test_capacity(self):
        objs = [
            make_object("cube", "small", "rubber", "gray", (-3.0 + 0.6 * i, 0.0, 0.0))
            for i in range(10)
        ]
        with pytest.raises(ExecutionError, match="capacity"):
            run("add_object(attrs(small,red,metal,cube),ground())", canonicalize(objs))

    def test_seq_runs_in_order(self, table_scene):
        after = run(
            "seq(remove(filter_shape(scene(),sphere)),"
            "change_color(filter_shape(scene(),cube),blue))",
            table_scene,
        )
        assert shapes(after) == ["cylinder", "cube", "cylinder"]
        blue = parse_program("count(filter_color(scene(),blue))")
        assert exec_question(blue, after) == "1"

    def test_input_scene_untouched(self, table_scene):
        before = repr(table_scene)
        run("change_color(scene(),red)", table_scene)
        assert repr(table_scene) == before


def test_absolute_rejects_non_finite_point():
    p = parse_program("add_object(attrs(small,red,rubber,cube),absolute(0,0))")
    bad = Node(p.op, (p.args[0], Node("absolute", (math.nan, math.nan))))
    with pytest.raises(ExecutionError, match="invalid-placement"):
        exec_action(bad, canonicalize([]))
