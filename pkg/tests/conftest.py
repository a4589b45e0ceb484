import pytest

from relcomm import BinRel, REFLEXIVE_ADMISSIBLE, RelFamily, enumerate_relations
from relcomm.search import catalog


@pytest.fixture(scope="session")
def algebras():
    return dict(catalog())


@pytest.fixture(scope="session")
def ra_lists(algebras):
    """Exhaustive reflexive-admissible relation lists per catalog algebra."""
    fam = RelFamily(kind=REFLEXIVE_ADMISSIBLE, mode="exhaustive")
    return {
        name: list(enumerate_relations(alg, fam))
        for name, alg in algebras.items()
    }


@pytest.fixture(scope="session")
def corpus(algebras, ra_lists):
    """Every (algebra name, R, S) pair over the exhaustive families; the
    shared quantifier corpus for the containment and lemma suites."""
    triples = []
    for name, alg in algebras.items():
        rels = ra_lists[name]
        for r in rels:
            for s in rels:
                triples.append((name, r, s))
    return triples


def rel(n, *pairs):
    return BinRel.from_pairs(n, pairs)


def refl(n, *pairs):
    return BinRel(n, BinRel.delta(n).bits | BinRel.from_pairs(n, pairs).bits)
