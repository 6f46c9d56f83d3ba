import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from sdfvs.errors import ContractViolation, ParseError
from sdfvs.fileformat import from_instance, normalize, parse, serialize
from sdfvs.generate import generate, planted_instance, random_instance
from sdfvs.instances import EdgeInstance, VertexInstance
from sdfvs.oracle import brute_force_solve
from sdfvs.solver import verify_solution, vertex_to_edge

C2_TEXT = "p sdfvs-e 2 2\na 1 2 s\na 2 1\nk 1\n"


def test_parse_c2():
    inst = parse(C2_TEXT).to_instance()
    assert isinstance(inst, EdgeInstance)
    assert sorted(inst.graph.arcs) == [(1, 2), (2, 1)]
    assert inst.s_arcs == {(1, 2)} and inst.budget == 1


def test_round_trip_normalizes_whitespace():
    text = "c  hello   world\n\n p  sdfvs-v 3 2 \na 1 2\na 2 3\ns 2\nu 3\nk 0\nc tail\n"
    assert serialize(parse(text)) == normalize(text)


def test_vertex_form():
    inst = parse("p sdfvs-v 2 2\na 1 2\na 2 1\ns 1\nk 1\n").to_instance()
    assert isinstance(inst, VertexInstance) and inst.s_vertices == {1}


@pytest.mark.parametrize("text, line", [
    ("p sdfvs-e 2 1\na 1 3\nk 1\n", 2),
    ("p sdfvs-v 2 1\na 1 2 s\nk 1\n", 2),
    ("p sdfvs-e 2 1\na 1 2\ns 1\n", 3),
    ("p sdfvs-x 2 1\n", 1),
    ("a 1 2\n", 1),
    ("p sdfvs-e 2 1\na 1 2 q\n", 2),
    ("p sdfvs-e 2 1\na 1 2\nk -1\n", 3),
    ("p sdfvs-e 2 1\na 1 2\nk 1\nk 2\n", 4),
    ("p sdfvs-e 2 1\na one 2\n", 2),
    ("p sdfvs-e 2 1\nz 1\n", 2),
])
def test_parse_errors_carry_line_numbers(text, line):
    with pytest.raises(ParseError) as info:
        parse(text)
    assert info.value.line == line


def test_arc_count_mismatch():
    with pytest.raises(ParseError):
        parse("p sdfvs-e 2 2\na 1 2\nk 1\n")


def test_missing_budget():
    with pytest.raises(ParseError):
        parse("p sdfvs-e 2 1\na 1 2\n").to_instance()


@settings(max_examples=100, deadline=None)
@given(st.integers(1, 12), st.integers(0, 40), st.floats(0, 1), st.integers(0, 4),
       st.integers(0, 10 ** 6))
def test_serialize_parse_round_trip(n, m, frac, k, seed):
    m = min(m, n * (n - 1))
    f = generate("random", n, m, frac, k, seed)
    text = serialize(f)
    again = parse(text)
    assert serialize(again) == text
    a, b = f.to_instance(), again.to_instance()
    assert a.graph == b.graph and a.s_arcs == b.s_arcs and a.budget == b.budget


def test_from_instance_vertex_form():
    inst = parse("p sdfvs-v 3 2\na 1 2\na 2 3\ns 3\nu 1\nk 2\n").to_instance()
    text = serialize(from_instance(inst))
    assert parse(text).to_instance() == inst


def test_planted_is_yes_by_oracle():
    inst, hidden = planted_instance(8, 20, 0.5, 2, seed=7)
    sol = brute_force_solve(inst)
    assert sol is not None and len(sol.deleted) <= 2
    assert len(hidden) == 2


def test_planted_hidden_set_solves():
    for seed in range(30):
        inst, hidden = planted_instance(20, 60, 0.5, 3, seed)
        assert verify_solution(inst, hidden)


def test_random_s_fraction_zero():
    inst = random_instance(8, 20, 0.0, 0, seed=3)
    assert inst.s_arcs == frozenset()
    assert brute_force_solve(inst).deleted == frozenset()


def test_same_seed_same_file():
    assert serialize(generate("planted", 10, 25, 0.5, 2, 9)) == \
        serialize(generate("planted", 10, 25, 0.5, 2, 9))
    assert serialize(generate("random", 10, 25, 0.5, 2, 9)) != \
        serialize(generate("random", 10, 25, 0.5, 2, 10))


def test_generator_rejects_infeasible():
    with pytest.raises(ContractViolation):
        random_instance(3, 7, 0.5, 1, 0)
    with pytest.raises(ContractViolation):
        planted_instance(3, 1, 0.5, 4, 0)
    with pytest.raises(ContractViolation):
        generate("other", 3, 1, 0.5, 1, 0)


def test_vertex_file_solves_like_edge_form():
    inst = parse("p sdfvs-v 3 3\na 1 2\na 2 3\na 3 1\ns 2\nk 1\n").to_instance()
    assert brute_force_solve(vertex_to_edge(inst)).deleted == {1}
