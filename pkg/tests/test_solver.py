"""Solver tests: certified verdicts, witnesses, normalization, determinism."""

import numpy as np
import pytest

from gicode.construct import code_from_matroid_rep, gic_from_matroid
from gicode.gf import FieldMatrix
from gicode.gic import GICProblem, Receiver, is_perfect, mu, verify_code
from gicode.instances import load
from gicode.matroid import Matroid, SearchBudgetExceeded
from gicode.solver import (
    BUDGET_EXCEEDED,
    FOUND,
    NONE_EXISTS,
    SearchConfig,
    SolveOutcome,
    count_solutions,
    detect_normalization,
    solve_perfect_scalar_binary,
)


@pytest.fixture(scope="module")
def eg4_problem():
    return load("eg4")["problem"]


@pytest.fixture(scope="module")
def u24_problem():
    return load("u24")["problem"]


@pytest.fixture(scope="module")
def u23_problem():
    return load("u23")["problem"]


def test_eg4_certified_nonexistence(eg4_problem):
    out = solve_perfect_scalar_binary(eg4_problem)
    assert out.verdict == NONE_EXISTS
    assert out.candidates_tested == 2**15  # free block is 3x5
    assert out.witness is None


def test_u24_certified_nonexistence(u24_problem):
    out = solve_perfect_scalar_binary(u24_problem)
    assert out.verdict == NONE_EXISTS
    assert out.candidates_tested == 2**8  # free block is 2x4


def test_u23_witness_found(u23_problem):
    out = solve_perfect_scalar_binary(u23_problem)
    assert out.verdict == FOUND
    assert verify_code(u23_problem, out.witness).all_ok
    assert is_perfect(u23_problem, out.witness)
    assert out.candidates_tested <= 2**6


def test_normalization_detected_on_constructed_problems(u23_problem, eg4_problem):
    assert detect_normalization(u23_problem, mu(u23_problem)) == ([2, 3, 4], [0, 1])
    assert detect_normalization(eg4_problem, mu(eg4_problem)) == ([3, 4, 5, 6, 7], [0, 1, 2])
    # eg1 has no plain-demand family covering a block: full search.
    assert detect_normalization(load("eg1")["problem"], 1) is None


def test_count_solutions_examples(eg4_problem, u23_problem):
    assert count_solutions(eg4_problem) == 0
    assert count_solutions(u23_problem) >= 1

    single = GICProblem(
        2, 1, 1, [Receiver(FieldMatrix.zeros(2, 1, 0), FieldMatrix.from_columns(2, [[1]]))]
    )
    assert count_solutions(single) == 1
    out = solve_perfect_scalar_binary(single)
    assert out.witness.to_json_dict() == {"L": [[1]]}


def test_report_all_collects_every_witness(u23_problem):
    out = solve_perfect_scalar_binary(u23_problem, SearchConfig(report="all"))
    assert out.verdict == FOUND
    assert len(out.witnesses) == count_solutions(u23_problem)
    for code in out.witnesses:
        assert is_perfect(u23_problem, code)
    assert out.witnesses[0] == solve_perfect_scalar_binary(u23_problem).witness


def test_soundness_on_random_constructed_problems():
    rng = np.random.default_rng(67)
    done = 0
    while done < 6:
        mat = FieldMatrix(2, rng.integers(0, 2, size=(2, 4)))
        if mat.rank() != 2:
            continue
        problem, _ = gic_from_matroid(Matroid.from_matrix(mat))
        out = solve_perfect_scalar_binary(problem)
        if out.verdict == FOUND:
            assert verify_code(problem, out.witness).all_ok
            assert is_perfect(problem, out.witness)
        done += 1


def test_completeness_when_construction_provides_witness():
    rng = np.random.default_rng(71)
    done = 0
    while done < 6:
        mat = FieldMatrix(2, rng.integers(0, 2, size=(2, 4)))
        if mat.rank() != 2:
            continue
        problem, _ = gic_from_matroid(Matroid.from_matrix(mat))
        code = code_from_matroid_rep(mat, problem)
        assert is_perfect(problem, code)
        assert solve_perfect_scalar_binary(problem).verdict == FOUND
        done += 1


def test_determinism_across_jobs(eg4_problem, u23_problem):
    for problem in (u23_problem, eg4_problem):
        base = solve_perfect_scalar_binary(problem, jobs=1)
        for jobs in (2, 3, 7):
            again = solve_perfect_scalar_binary(problem, jobs=jobs)
            assert again == base
    assert count_solutions(u23_problem) == count_solutions(u23_problem)


def test_normalized_and_full_search_agree_on_existence():
    # Tiny constructed problems where the full space is still enumerable.
    cases = [
        gic_from_matroid(Matroid.uniform(1, 1))[0],  # t=2, l=1
        gic_from_matroid(Matroid.uniform(1, 2))[0],  # t=3, l=2
        gic_from_matroid(Matroid.uniform(2, 2))[0],  # t=4, l=2
    ]
    for problem in cases:
        normalized = solve_perfect_scalar_binary(problem)
        full = solve_perfect_scalar_binary(problem, SearchConfig(normalize_y_block=False))
        assert (normalized.verdict == FOUND) == (full.verdict == FOUND)
        for out in (normalized, full):
            if out.verdict == FOUND:
                assert is_perfect(problem, out.witness)


def test_full_search_on_unnormalizable_problem():
    # eg1 with l = mu = 1: no single transmission works; the full
    # 2^5 space is exhausted.
    p = load("eg1")["problem"]
    out = solve_perfect_scalar_binary(p)
    assert out.verdict == NONE_EXISTS
    assert out.candidates_tested == 2**5


def test_budget_exceeded_verdict(eg4_problem):
    out = solve_perfect_scalar_binary(eg4_problem, SearchConfig(budget=100))
    assert out.verdict == BUDGET_EXCEEDED
    assert out.candidates_tested == 100
    with pytest.raises(SearchBudgetExceeded):
        count_solutions(eg4_problem, SearchConfig(budget=100))


def test_budget_does_not_block_early_witness(u23_problem):
    out = solve_perfect_scalar_binary(u23_problem, SearchConfig(budget=40))
    assert out.verdict == FOUND


def test_solver_preconditions():
    p3 = GICProblem(
        3, 1, 1, [Receiver(FieldMatrix.zeros(3, 1, 0), FieldMatrix.from_columns(3, [[1]]))]
    )
    with pytest.raises(ValueError):
        solve_perfect_scalar_binary(p3)
    vector, _ = gic_from_matroid(Matroid.uniform(1, 1), n=2)
    with pytest.raises(ValueError):
        solve_perfect_scalar_binary(vector)
    with pytest.raises(ValueError):
        SearchConfig(budget=0)
    with pytest.raises(ValueError):
        SearchConfig(report="everything")


def test_outcome_json():
    out = SolveOutcome(NONE_EXISTS, candidates_tested=7)
    assert out.to_json_dict() == {"verdict": "none_exists", "candidates_tested": 7}


def test_solver_handles_multi_column_demands():
    # One receiver demanding two functions at once; length mu = 1 cannot
    # serve both, length found by a second same-knowledge receiver group.
    q, m = 2, 3
    k = FieldMatrix.from_columns(q, [[0, 0, 1]])
    d2 = FieldMatrix.from_columns(q, [[1, 0, 0], [0, 1, 0]])
    p = GICProblem(q, m, 1, [Receiver(k, d2), Receiver(k, FieldMatrix.from_columns(q, [[1, 1, 0]]))])
    out = solve_perfect_scalar_binary(p)
    # mu = 2 (shared knowledge space), and two transmissions do suffice
    assert mu(p) == 2
    assert out.verdict == FOUND
    assert verify_code(p, out.witness).all_ok


def test_solver_length_exceeding_messages():
    # Three receivers share the empty knowledge space, so mu = 3 forces a
    # code wider than the message count; any full-rank 2x3 candidate
    # satisfies all three demands, exercising the wide-code path.
    q, m = 2, 2
    k = FieldMatrix.zeros(q, m, 0)
    demands = [[1, 0], [0, 1], [1, 1]]
    receivers = [Receiver(k, FieldMatrix.from_columns(q, [d])) for d in demands]
    p = GICProblem(q, m, 1, receivers)
    assert mu(p) == 3
    out = solve_perfect_scalar_binary(p)
    assert out.verdict == FOUND
    assert verify_code(p, out.witness).all_ok
