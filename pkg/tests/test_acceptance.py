"""Acceptance suite: one test per criterion, each printing its result line."""
import pytest

from placeq import acceptance

SEED = 0


# filled as the criteria run; conftest prints it in the terminal summary
RESULTS = {}


@pytest.fixture(scope="module")
def results():
    return RESULTS


def _run(results, fn, *args):
    r = fn(*args)
    results[r.number] = r
    print(r.line)
    assert r.elapsed <= r.limit, f"took {r.elapsed:.1f}s, limit {r.limit}s"
    assert r.passed, "\n".join([r.line] + list(r.failures[:5]))
    return r


def test_01_axioms(results):
    _run(results, acceptance.criterion_axioms, SEED)


def test_02_qe_finite_places(results):
    _run(results, acceptance.criterion_qe_finite, SEED)


def test_03_qe_real_place(results):
    _run(results, acceptance.criterion_qe_real, SEED)


def test_04_residue_capacity(results):
    _run(results, acceptance.criterion_residues, SEED)


def test_05_weak_approximation(results):
    _run(results, acceptance.criterion_approximation, SEED)


def test_06_decoupling(results):
    _run(results, acceptance.criterion_decoupling, SEED)


def test_07_translation(results):
    _run(results, acceptance.criterion_translation, SEED)


def test_08_gadgets(results):
    _run(results, acceptance.criterion_gadgets, SEED)


def test_09_sentences(results):
    _run(results, acceptance.criterion_sentences, SEED)


def test_10_determinism(results):
    first = [results[n] for n in sorted(results)]
    if len(first) < 9:
        pytest.skip("needs the other criteria in the same session")
    _run(results, acceptance.criterion_determinism, SEED, first)
