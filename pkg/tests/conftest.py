import json
from pathlib import Path

import pytest

from feynhopf.algebra import LinComb, Monomial, Tensor
from feynhopf.doubling import pair_from_json
from feynhopf.harness import gen_corpus
from feynhopf.specified import from_json
from feynhopf.theory import load_theory

FIXTURES = Path(__file__).parent / "fixtures"


@pytest.fixture(scope="session")
def phi3():
    return load_theory("phi3")


@pytest.fixture(scope="session")
def qed():
    return load_theory("qed")


@pytest.fixture(scope="session")
def phi3_corpus1(phi3):
    return gen_corpus(phi3, 1)


@pytest.fixture(scope="session")
def qed_corpus1(qed):
    return gen_corpus(qed, 1)


def load_examples(name):
    return json.loads((FIXTURES / f"{name}_examples.json").read_text())


def graph(doc, theory):
    return from_json(doc, theory)


def mono(doc, theory):
    return Monomial(from_json(d, theory) for d in doc["monomial"])


def expected_monomials(entries, theory):
    return LinComb.from_pairs((mono(e["monomial"], theory), e["coeff"]) for e in entries)


def expected_graphs(entries, theory):
    return LinComb.from_pairs((from_json(e["graph"], theory), e["coeff"]) for e in entries)


def expected_tensors(entries, theory):
    return LinComb.from_pairs(
        (Tensor((mono(e["left"], theory), mono(e["right"], theory))), e["coeff"]) for e in entries
    )


def expected_pairs(entries, theory):
    return LinComb.from_pairs((pair_from_json(e["pair"], theory), e["coeff"]) for e in entries)
