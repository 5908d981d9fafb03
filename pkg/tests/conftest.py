import itertools

import pytest

from flagsphere.census import Census, full_census
from flagsphere.homology import SphereCertifier
from flagsphere.suites import Subject, constructed_corpus


@pytest.fixture(scope="session")
def census_obj():
    return Census()


@pytest.fixture(scope="session")
def census9(census_obj):
    return full_census(9, census=census_obj)


@pytest.fixture(scope="session")
def corpus():
    return constructed_corpus(14)


@pytest.fixture(scope="session")
def certifier():
    return SphereCertifier()


@pytest.fixture(scope="session")
def subjects(census9, corpus, certifier):
    out = [Subject(e.complex(), f"census:{e.key}", certifier=certifier) for e in census9]
    out += [Subject(c, name, certifier=certifier) for name, c in corpus]
    return out


def brute_faces(c):
    """Every face of c by explicit subset enumeration of each facet."""
    out = set()
    for F in c.facets:
        for k in range(len(F) + 1):
            out.update(itertools.combinations(F, k))
    return out


def brute_cliques(n, edges):
    es = {frozenset(e) for e in edges}
    out = []
    for k in range(n + 1):
        for S in itertools.combinations(range(n), k):
            if all(frozenset(p) in es for p in itertools.combinations(S, 2)):
                out.append(S)
    return out
