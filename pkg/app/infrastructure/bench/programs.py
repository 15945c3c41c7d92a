"""Benchmark programs of the suite.

Every program loops a hundred times so that one goal execution lands in the millisecond range. Clauses of a family
are never variants of each other, the knowledge base would drop the duplicates.
"""

from app.core.errors import PrologError
from app.domain.schemas.bench import BenchmarkSpec
from app.domain.schemas.types import BenchmarkName

LOOPS = 100


def _numbers(count: int = LOOPS) -> str:
    return ", ".join(str(number) for number in range(1, count + 1))


def _nested(count: int = LOOPS) -> str:
    text = "leaf"
    for number in range(count, 0, -1):
        text = f"s({number}, {text})"
    return text


def _facts(functor: str, count: int = LOOPS) -> str:
    return "\n".join(f"{functor}({number}, v{number})." for number in range(1, count + 1))


BORESEA = f"""
boresea :- lips({LOOPS}).
lips(0) :- !.
lips(N) :- p1, N1 is N - 1, lips(N1).
p1 :- p2.
p2 :- p3.
p3 :- p4.
p4 :- p5.
p5 :- p6.
p6 :- p7.
p7 :- p8.
p8 :- p9.
p9 :- p10.
p10.
"""

CHOICE_POINT = f"""
choice_point :- cp({LOOPS}).
cp(0) :- !.
cp(N) :- alternative(N), N1 is N - 1, cp(N1).
alternative(N) :- N > 0.
alternative(N) :- N < 0.
alternative(0).
"""

CHOICE_POINT_0ARG = f"""
choice_point_0arg :- cp0({LOOPS}).
cp0(0) :- !.
cp0(N) :- alternative0, N1 is N - 1, cp0(N1).
alternative0.
alternative0 :- fail.
alternative0 :- alternative1.
alternative1.
"""

BACKTRACK1 = f"""
backtrack1 :- item(X), descend({LOOPS // 10}), X >= 10, !.
item(1).
item(2).
item(3).
item(4).
item(5).
item(6).
item(7).
item(8).
item(9).
item(10).
descend(0) :- !.
descend(N) :- N1 is N - 1, descend(N1).
"""

BACKTRACK2 = f"""
backtrack2 :- shallow({LOOPS}).
shallow(0) :- !.
shallow(N) :- pick(X), X =:= 3, N1 is N - 1, shallow(N1).
pick(1).
pick(2).
pick(3).
"""

CUT_100_TIMES = f"""
cut_100_times :- cut_loop({LOOPS}).
cut_loop(N) :- N > 0, !, N1 is N - 1, cut_loop(N1).
cut_loop(0).
"""

DEREFERENCE = f"""
dereference :- link({LOOPS}, First, Last), Last = done, First == done.
link(0, V, V) :- !.
link(N, V, Last) :- N1 is N - 1, V = W, link(N1, W, Last).
"""

ENVIRONMENT = f"""
environment :- env({LOOPS}).
env(0) :- !.
env(N) :- e1(N, A), e2(A, B), e3(B, C), C == N, N1 is N - 1, env(N1).
e1(X, Y) :- Y = X.
e2(X, Y) :- Y = X.
e3(X, Y) :- Y = X.
"""

ENVIRONMENT_0ARG = f"""
environment_0arg :- env0({LOOPS}).
env0(0) :- !.
env0(N) :- e0, e0, e0, N1 is N - 1, env0(N1).
e0 :- f0, g0.
f0.
g0.
"""

INDEX_CLAUSE = f"""
index_clause :- index_loop({LOOPS}).
index_loop(0) :- !.
index_loop(N) :- idx(N, _), N1 is N - 1, index_loop(N1).
{_facts("idx")}
"""

CREATE_LIST = f"""
create_list :- make_list({LOOPS}, L), L = [{LOOPS}|_].
make_list(0, []) :- !.
make_list(N, [N|T]) :- N1 is N - 1, make_list(N1, T).
"""

CREATE_STRUCT = f"""
create_struct :- make_struct({LOOPS}, S), S = s({LOOPS}, _).
make_struct(0, leaf) :- !.
make_struct(N, s(N, S)) :- N1 is N - 1, make_struct(N1, S).
"""

MATCH_LIST = f"""
match_list :- list100(L), list100(L), walk(L).
list100([{_numbers()}]).
walk([]).
walk([_|T]) :- walk(T).
"""

MATCH_STRUCT = f"""
match_struct :- struct100(S), struct100(S), depth(S, D), D =:= {LOOPS}.
struct100({_nested()}).
depth(leaf, 0).
depth(s(_, S), D) :- depth(S, D0), D is D0 + 1.
"""

UNIFICATION = f"""
unification :- unify_loop({LOOPS}).
unify_loop(0) :- !.
unify_loop(N) :- f(A, B, g(C, [D|E])) = f(N, A, g(B, [C|T])), T = [], E == [], D == N, N1 is N - 1, unify_loop(N1).
"""

QUERY_FACTS = f"""
{_facts("record")}
"""

SUITE: tuple[BenchmarkSpec, ...] = (
    BenchmarkSpec(
        name=BenchmarkName.BORESEA,
        description="Deterministic call chains, the peak performance of the system",
        program=BORESEA,
        goal="boresea",
    ),
    BenchmarkSpec(
        name=BenchmarkName.CHOICE_POINT,
        description="Creation of choicepoints by multi clause predicates",
        program=CHOICE_POINT,
        goal="choice_point",
    ),
    BenchmarkSpec(
        name=BenchmarkName.CHOICE_POINT_0ARG,
        description="Creation of choicepoints by multi clause predicates without arguments",
        program=CHOICE_POINT_0ARG,
        goal="choice_point_0arg",
    ),
    BenchmarkSpec(
        name=BenchmarkName.BACKTRACK1,
        description="Deep backtracking to an old choicepoint",
        program=BACKTRACK1,
        goal="backtrack1",
    ),
    BenchmarkSpec(
        name=BenchmarkName.BACKTRACK2,
        description="Shallow backtracking among the clauses of the current call",
        program=BACKTRACK2,
        goal="backtrack2",
    ),
    BenchmarkSpec(
        name=BenchmarkName.CUT_100_TIMES,
        description="Lots of cuts at execution time",
        program=CUT_100_TIMES,
        goal="cut_100_times",
    ),
    BenchmarkSpec(
        name=BenchmarkName.DEREFERENCE,
        description="Long chains of variable bindings",
        program=DEREFERENCE,
        goal="dereference",
    ),
    BenchmarkSpec(
        name=BenchmarkName.ENVIRONMENT,
        description="Clause bodies sharing variables between calls",
        program=ENVIRONMENT,
        goal="environment",
    ),
    BenchmarkSpec(
        name=BenchmarkName.ENVIRONMENT_0ARG,
        description="Clause bodies calling predicates without arguments",
        program=ENVIRONMENT_0ARG,
        goal="environment_0arg",
    ),
    BenchmarkSpec(
        name=BenchmarkName.INDEX_CLAUSE,
        description="Selection among a hundred clauses by the first argument",
        program=INDEX_CLAUSE,
        goal="index_clause",
    ),
    BenchmarkSpec(
        name=BenchmarkName.CREATE_LIST,
        description="Construction of a hundred element list",
        program=CREATE_LIST,
        goal="create_list",
    ),
    BenchmarkSpec(
        name=BenchmarkName.CREATE_STRUCT,
        description="Construction of a hundred level structure",
        program=CREATE_STRUCT,
        goal="create_struct",
    ),
    BenchmarkSpec(
        name=BenchmarkName.MATCH_LIST,
        description="Matching of a hundred element list",
        program=MATCH_LIST,
        goal="match_list",
    ),
    BenchmarkSpec(
        name=BenchmarkName.MATCH_STRUCT,
        description="Matching of a hundred level structure",
        program=MATCH_STRUCT,
        goal="match_struct",
    ),
    BenchmarkSpec(
        name=BenchmarkName.UNIFICATION,
        description="General unification of terms with shared variables",
        program=UNIFICATION,
        goal="unification",
    ),
    BenchmarkSpec(
        name=BenchmarkName.BENCH_QUERY,
        description="First solution of a query through the query interface",
        program=QUERY_FACTS,
        goal="record(X, Y)",
    ),
    BenchmarkSpec(
        name=BenchmarkName.BENCH_QUERY_ALL,
        description="Every solution of a query through the query interface",
        program=QUERY_FACTS,
        goal="record(X, Y)",
        all_solutions=True,
    ),
)

BENCHMARKS: dict[str, BenchmarkSpec] = {spec.name.value: spec for spec in SUITE}


def select(names: list[str] | None = None) -> list[BenchmarkSpec]:
    """Benchmarks by name in the given order, the whole suite when no name is given.

    Raises:
        PrologError: on an unknown benchmark name
    """
    if not names:
        return list(SUITE)
    unknown = [name for name in names if name not in BENCHMARKS]
    if unknown:
        raise PrologError(f"Unknown benchmark {', '.join(unknown)}, options: {', '.join(BENCHMARKS)}")
    return [BENCHMARKS[name] for name in names]
