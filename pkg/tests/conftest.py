from __future__ import annotations

import pytest

from subgrad import DirectedGraph, parse_edge_list

import expected

# One line per acceptance criterion, echoed at the end of the run.
acceptance_report: list[str] = []


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if acceptance_report:
        terminalreporter.section("acceptance criteria")
        for line in acceptance_report:
            terminalreporter.write_line(line)


@pytest.fixture(scope="session")
def demo_source() -> DirectedGraph:
    return parse_edge_list(expected.DEMO_SOURCE_TEXT)


@pytest.fixture(scope="session")
def single_edge_query() -> DirectedGraph:
    return parse_edge_list(expected.QUERY_TEXTS["single-edge"])


@pytest.fixture(scope="session")
def path_query() -> DirectedGraph:
    return parse_edge_list(expected.QUERY_TEXTS["path"])


@pytest.fixture(scope="session")
def cycle3_query() -> DirectedGraph:
    return parse_edge_list(expected.QUERY_TEXTS["cycle3"])


@pytest.fixture(scope="session")
def cycle4_query() -> DirectedGraph:
    return parse_edge_list(expected.QUERY_TEXTS["cycle4"])


@pytest.fixture(scope="session")
def demo_queries(
    single_edge_query, path_query, cycle3_query, cycle4_query
) -> dict[str, DirectedGraph]:
    return {
        "single-edge": single_edge_query,
        "path": path_query,
        "cycle3": cycle3_query,
        "cycle4": cycle4_query,
    }
