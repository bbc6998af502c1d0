import hashlib
from pathlib import Path

import pytest

from ionc import InputGraph, Instance, Status, Universe, solve
from ionc.asp import (
    BIDIRECTED_CONSTRAINTS,
    LISTING,
    AnswerSetParseError,
    EmitMode,
    emit_facts,
    emit_program,
    parse_answer_sets,
)

from asp_runner import clingo_command, run_clingo
from conftest import random_case

DATA = Path(__file__).parent / "data"
needs_clingo = pytest.mark.skipif(clingo_command() is None, reason="no clingo available")


def test_golden_strict(example):
    assert emit_program(example, EmitMode.STRICT_LISTING) == (DATA / "worked_example_strict.lp").read_text()


def test_golden_facts(example):
    facts = emit_facts(example)
    for line in ("edge(0,1,0).", "edge(1,2,0).", "nedge(0,2,0).", "nedge(2,0,0)."):
        assert line in facts


def test_two_node_absent():
    inst = Instance(Universe.numbered(2), [InputGraph.from_edges([0, 1], [], [])])
    facts = emit_facts(inst)
    assert facts[-2:] == ["nedge(0,1,0).", "nedge(1,0,0)."]


def test_rule_block_is_verbatim():
    golden = (DATA / "worked_example_strict.lp").read_text().splitlines()[-len(LISTING):]
    want = hashlib.sha256("\n".join(golden).encode()).hexdigest()
    for rep in range(5):
        prog = emit_program(random_case(6, 0.4, 0.5, 3, seed=4, rep=rep).instance, EmitMode.STRICT_LISTING)
        block = prog.splitlines()[-len(LISTING):]
        assert hashlib.sha256("\n".join(block).encode()).hexdigest() == want


def test_augmented_adds_two_lines(example):
    strict = emit_program(example, EmitMode.STRICT_LISTING).splitlines()
    aug = emit_program(example, EmitMode.AUGMENTED).splitlines()
    assert len(aug) - len(strict) == 2
    assert aug[-2:] == list(BIDIRECTED_CONSTRAINTS)


def test_parse_answer():
    sols = parse_answer_sets("Answer: 1\nedge(0,1) edge(1,2)\nSATISFIABLE\n", 3)
    assert sols.status is Status.COMPLETE
    assert [g.edges for g in sols] == [[(0, 1), (1, 2)]]


def test_parse_unsat():
    sols = parse_answer_sets("clingo version 5\nReading from -\nSolving...\nUNSATISFIABLE\n", 3)
    assert sols.status is Status.UNSATISFIABLE and len(sols) == 0


def test_parse_empty_model_and_unknown():
    sols = parse_answer_sets("Answer: 1\n\nAnswer: 2\nedge(1,0)\nUNKNOWN\n", 2)
    assert len(sols) == 2 and sols.status is Status.TIMED_OUT


@pytest.mark.parametrize("text", [
    "Answer: 1\nedge(0,x)\nSATISFIABLE\n",
    "Answer: 1\nedge(0,5)\nSATISFIABLE\n",
    "Answer: 1\nedge(0,1) edge(1,0)\nSATISFIABLE\n",
    "garbage only\n",
])
def test_parse_errors(text):
    with pytest.raises(AnswerSetParseError):
        parse_answer_sets(text, 3)


def test_parse_error_line_number():
    with pytest.raises(AnswerSetParseError) as err:
        parse_answer_sets("Solving...\nAnswer: 1\nedge(0,1) bogus\n", 3)
    assert err.value.line_no == 3


@needs_clingo
def test_clingo_worked_example(example):
    out = run_clingo(emit_program(example))
    assert parse_answer_sets(out, 4).same_graphs(solve(example))


@needs_clingo
def test_clingo_bidirected_instance():
    # X <-> Y with a latent third variable; the rule block alone would also
    # admit graphs where the pair is unconnected
    u = Universe.numbered(3)
    inst = Instance(u, [InputGraph.from_edges([0, 1], [], [(0, 1)]), InputGraph.from_edges([1, 2], [(2, 1)], [])])
    native = solve(inst)
    assert parse_answer_sets(run_clingo(emit_program(inst)), 3).same_graphs(native)
    strict = parse_answer_sets(run_clingo(emit_program(inst, EmitMode.STRICT_LISTING)), 3)
    assert native.graph_set() < strict.graph_set()
