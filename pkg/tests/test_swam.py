import random
from collections import Counter

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import CHAIN, GOOD_PLAYER, PREFERENCES, SUITABLE_JOURNAL
from ivprolog.errors import CompileError, MachineFault
from ivprolog.interval import TOP, Interval
from ivprolog.parser import parse_goal, parse_program
from ivprolog.randprog import random_program
from ivprolog.resolution import solve
from ivprolog.swam import (
    CodeImage, Instr, Machine, assemble, block_ranges, compile, compile_query, disassemble, run,
)


def ops(image, key):
    return [image.instructions[i].op for i in block_ranges(image)[key]]


def query_ops(image):
    return [i.op for i in image.instructions[image.query_entry:]]


def image_for(source, goal):
    return compile_query(parse_goal(goal), compile(parse_program(source)))


def texts(stream):
    return [str(a) for a in stream]


def open_goals(program):
    for name, arity in program.predicates():
        yield f"{name}({','.join('V%d' % i for i in range(arity))})" if arity else name


class TestCompile:
    def test_good_player_shape(self, good_player):
        image = compile_query(parse_goal("good_player(X)"), compile(good_player))
        assert len(image.instructions) == 25
        assert ops(image, ("good_player", 1)) == [
            "trust_me", "allocate", "get_variable", "put_value", "call", "put_value", "call",
            "put_value", "call", "deallocate", "proceed"]
        assert image.instructions[2] == Instr("get_variable", ("Y0", "A0"))
        assert query_ops(image) == ["trust_me", "create_variable", "put_value", "call", "halt"]
        assert image.instructions[image.query_entry + 1] == Instr("create_variable", ("Q0", "X"))

    def test_block_addresses(self, good_player):
        image = compile(good_player)
        assert image.labels == {("good_player", 1): 0, ("coordinate", 1): 11,
                                ("fast", 1): 14, ("tall", 1): 17}

    def test_fact_block(self, good_player):
        image = compile(good_player)
        assert [image.instructions[i] for i in block_ranges(image)[("coordinate", 1)]] == [
            Instr("trust_me", (Interval(0.2, 0.4),)), Instr("get_constant", ("a", "A0")),
            Instr("proceed", ())]

    def test_clause_chain(self, chain):
        image = compile(chain)
        block = [image.instructions[i] for i in block_ranges(image)[("q", 1)]]
        assert [i.op for i in block] == ["try_me_else", "get_constant", "proceed",
                                         "trust_me", "get_constant", "proceed"]
        assert block[0].args[1] == Interval(0.8, 0.9) and block[3].args[0] == Interval(0.7, 0.8)
        assert block[0].args[0] == image.labels[("q", 1)] + 3

    def test_three_clauses_use_retry(self):
        image = compile(parse_program("r(a).\nr(b)[0.5,0.6].\nr(c)[0.1,0.2]."))
        assert [i.op for i in image.instructions if i.op.endswith("me_else") or i.op == "trust_me"] == [
            "try_me_else", "retry_me_else", "trust_me"]

    def test_ground_query(self, chain):
        image = compile_query(parse_goal("p(a)"), compile(chain))
        assert query_ops(image) == ["trust_me", "put_constant", "call", "halt"]

    def test_two_atom_query(self, chain):
        image = compile_query(parse_goal("q(X), p(X)"), compile(chain))
        assert query_ops(image) == ["trust_me", "create_variable", "put_value", "call",
                                    "put_value", "call", "halt"]

    def test_query_replaced(self, chain):
        image = compile(chain)
        once = compile_query(parse_goal("p(X)"), image)
        twice = compile_query(parse_goal("q(a)"), once)
        assert twice == compile_query(parse_goal("q(a)"), image)

    def test_strict_mode(self):
        prog = parse_program("p :- missing.")
        compile(prog)
        with pytest.raises(CompileError):
            compile(prog, strict=True)
        compile(parse_program("p :- q.\nq~r=[0.5,0.5].\nr."), strict=True)

    def test_compound_head(self):
        image = compile(parse_program("f(g(X,a),X) :- loves(mary,X)."))
        assert ops(image, ("f", 2)) == [
            "trust_me", "allocate", "get_structure", "unify_variable", "unify_variable",
            "get_variable", "get_constant", "get_value", "put_constant", "put_value", "call",
            "deallocate", "proceed"]


class TestListing:
    def test_first_line(self, good_player):
        image = compile_query(parse_goal("good_player(X)"), compile(good_player))
        lines = disassemble(image).splitlines()
        assert lines[0] == "00:good_player:trust_me [1.0,1.0]"
        assert lines[11] == "11:coordinate:trust_me [0.2,0.4]"
        assert lines[20] == "20:query:trust_me [1.0,1.0]"
        assert lines[23].split() == ["23:", "call", "good_player", "(00)"]

    def test_empty_program(self):
        image = compile_query(parse_goal("p(a)"), compile(parse_program("")))
        assert disassemble(image).splitlines() == [
            "00:query:trust_me [1.0,1.0]", "01:      put_constant a A0", "02:      call p/1 (--)",
            "03:      halt"]

    @pytest.mark.parametrize("source, goal", [
        (GOOD_PLAYER, "good_player(X)"), (CHAIN, "p(X)"), (SUITABLE_JOURNAL, "suitable_journal(X)"),
        (PREFERENCES, "healthy(X)"), ("f(g(X,a),X) :- h(X, k(X)).\nh(b, k(b)).\nh(2, Y).", "f(A, B)"),
        ("p(a).\np(a,b).\np :- p(X), p(X,Y).", "p"),
    ])
    def test_round_trip(self, source, goal):
        image = image_for(source, goal)
        assert assemble(disassemble(image)) == image

    @settings(max_examples=100, deadline=None)
    @given(st.integers(0, 2**32 - 1))
    def test_round_trip_random(self, seed):
        prog = random_program(random.Random(seed))
        image = compile(prog)
        assert assemble(disassemble(image)) == image
        goal = next(open_goals(prog))
        image = compile_query(parse_goal(goal), image)
        assert assemble(disassemble(image)) == image

    def test_malformed(self):
        with pytest.raises(MachineFault):
            assemble("00:p:trust_me [1.0,1.0]\n02:  proceed\n")
        with pytest.raises(MachineFault):
            assemble("00:p:bogus\n")
        with pytest.raises(MachineFault):
            Instr("trust_me", ())
        with pytest.raises(MachineFault):
            CodeImage((Instr("try_me_else", (9, TOP)),), {}, None).validate()


class TestRun:
    def test_good_player(self, good_player):
        image = compile_query(parse_goal("good_player(X)"), compile(good_player))
        assert texts(run(image)) == ["X=a with [0.2,0.4]"]
        assert texts(run(image, Interval(0.5, 0.5))) == []
        assert texts(run(image, Interval(0.2, 0.4))) == ["X=a with [0.2,0.4]"]

    def test_chain_redo(self, chain):
        stream = run(compile_query(parse_goal("p(X)"), compile(chain)))
        assert str(stream.next_answer()) == "X=a with [0.8,0.9]"
        assert str(stream.next_answer()) == "X=b with [0.7,0.8]"
        assert stream.next_answer() is None

    def test_no_query_block(self, chain):
        with pytest.raises(MachineFault):
            run(compile(chain))

    def test_unknown_predicate_fails(self):
        assert texts(run(image_for("p(a).", "q(X)"))) == []

    def test_proximity(self, preferences):
        assert texts(run(image_for(PREFERENCES, "plays(peter,hoops)"))) == ["yes with [1.0,1.0]"]
        assert texts(run(image_for(PREFERENCES, "passion(mary,X)"))) == ["X=mountaineering with [0.25,0.8]"]

    def test_functor_proximity(self):
        src = "f~g=[0.4,0.9].\np(f(a)).\np(g(b))[0.5,0.5]."
        assert texts(run(image_for(src, "p(g(X))"))) == ["X=a with [0.4,0.9]", "X=b with [0.5,0.5]"]

    def test_guards(self, suitable_journal):
        assert texts(run(image_for(SUITABLE_JOURNAL, "suitable_journal(X)"))) == []
        src = "h(X) :- b(X)[0.4,0.5], c(X).\nb(a)[0.6,0.7].\nc(a)[0.3,0.9]."
        assert texts(run(image_for(src, "h(X)"))) == ["X=a with [0.3,0.7]"]

    def test_compound_answers(self):
        src = "f(g(X,a),X) :- h(X, k(X)).\nh(b, k(b)).\nh(2, Y)."
        assert texts(run(image_for(src, "f(A, B)"))) == [
            "A=g(b,a), B=b with [1.0,1.0]", "A=g(2,a), B=2 with [1.0,1.0]"]

    def test_free_variables(self):
        assert texts(run(image_for("p(X, f(Y)).", "p(A, B)"))) == ["A=_G1, B=f(_G2) with [1.0,1.0]"]

    def test_occurs_check(self):
        image = image_for("same(X, X).\nsame(a, f(a)).", "same(Y, f(Y))")
        assert texts(run(image, occurs_check=True)) == ["Y=a with [1.0,1.0]"]
        prog = parse_program("same(X, X).\nsame(a, f(a)).")
        assert texts(solve(prog, "same(Y, f(Y))", occurs_check=True)) == ["Y=a with [1.0,1.0]"]

    def test_depth_limit(self):
        stream = run(image_for("nat(z).\nnat(s(X)) :- nat(X).", "nat(X)"), depth_limit=3)
        assert texts(stream) == ["X=z with [1.0,1.0]", "X=s(z) with [1.0,1.0]", "X=s(s(z)) with [1.0,1.0]"]
        assert stream.incomplete


class TestMachineInvariants:
    def test_degree_trace_source_order(self, good_player):
        m = Machine(compile_query(parse_goal("good_player(X)"), compile(good_player)), trace=True)
        m.answers().__next__()
        entries = [(addr, d) for kind, addr, d in m.events if kind == "enter"]
        assert entries[0] == (20, TOP)
        assert [d for _, d in entries[1:]] == [TOP, Interval(0.8, 0.9), Interval(0.8, 0.9), Interval(0.2, 0.4)]

    def test_degree_trace_reordered_body(self):
        src = GOOD_PLAYER.replace("tall(X), fast(X), coordinate(X)", "coordinate(X), fast(X), tall(X)")
        m = Machine(image_for(src, "good_player(X)"), trace=True)
        assert texts(m.answers()) == ["X=a with [0.2,0.4]"]
        entries = [d for kind, addr, d in m.events if kind == "enter"][1:]
        assert entries == [TOP, Interval(0.2, 0.4), Interval(0.2, 0.4), Interval(0.2, 0.4)]

    @settings(max_examples=150, deadline=None)
    @given(st.integers(0, 2**32 - 1))
    def test_purity_and_restores(self, seed):
        prog = random_program(random.Random(seed))
        image = compile(prog)
        for goal in open_goals(prog):
            m = Machine(compile_query(parse_goal(goal), image), trace=True)
            list(m.answers())
            assert m.sizes() == m.baseline
            pushed = {}
            last = None
            for kind, ident, d in m.events:
                if kind == "push":
                    pushed[ident] = d
                elif kind == "restore":
                    assert d == pushed[ident]
                    last = None
                    continue
                if last is not None:
                    assert d <= last
                last = d

    @settings(max_examples=150, deadline=None)
    @given(st.integers(0, 2**32 - 1), st.integers(0, 20), st.integers(0, 20))
    def test_lambda_monotone(self, seed, lo, hi):
        lo, hi = sorted((lo, hi))
        prog = random_program(random.Random(seed))
        image = compile(prog)
        for goal in open_goals(prog):
            qi = compile_query(parse_goal(goal), image)
            low = Counter(texts(run(qi)))
            high = Counter(texts(run(qi, Interval(lo / 20, hi / 20))))
            assert not high - low


@settings(max_examples=200, deadline=None)
@given(st.integers(0, 2**32 - 1))
def test_same_answers_in_same_order_as_resolver(seed):
    prog = random_program(random.Random(seed))
    image = compile(prog)
    for goal in open_goals(prog):
        assert texts(run(compile_query(parse_goal(goal), image))) == texts(solve(prog, goal))


@pytest.mark.parametrize("source, goal", [
    (GOOD_PLAYER, "good_player(X)"), (CHAIN, "q(X), p(X)"), (SUITABLE_JOURNAL, "suitable_journal(X)"),
    (PREFERENCES, "passion(Who, What)"), (PREFERENCES, "plays(P, hoops)"),
    ("f~g=[0.4,0.9].\na~b=[0.3,1.0].\np(f(a), X) :- q(X).\nq(b)[0.6,0.7].\nq(a).", "p(g(b), Y)"),
    ("f(g(X,a),X) :- h(X, k(X)).\nh(b, k(b)).\nh(2, Y).", "f(A, B)"),
    ("h(X) :- b(X)[0.4,0.5], c(X).\nb(a)[0.6,0.7].\nb(c).\nc(a)[0.3,0.9].\nc(c)[0.1,0.1].", "h(X)"),
])
def test_engines_agree_on_corpus(source, goal):
    prog = parse_program(source)
    assert texts(run(compile_query(parse_goal(goal), compile(prog)))) == texts(solve(prog, goal))
