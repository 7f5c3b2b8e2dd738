import pytest

from atomsym import corpus


@pytest.fixture(scope="session")
def corpus_atoms():
    return {n: corpus.load(n) for n in corpus.ATOM_NAMES}


@pytest.fixture(scope="session")
def corpus_meshes():
    return {n: corpus.load(n) for n in corpus.MESH_NAMES}


_ACCEPTANCE_KEY = pytest.StashKey[dict]()


@pytest.fixture
def criterion(request):
    """Record the outcome of one acceptance criterion for the summary."""
    results = request.config.stash.setdefault(_ACCEPTANCE_KEY, {})
    number, title = request.node.get_closest_marker("criterion").args
    results[number] = (title, "FAIL", "")

    def note(detail: str) -> None:
        results[number] = (title, "PASS", detail)

    return note


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title): acceptance criterion")


def pytest_terminal_summary(terminalreporter, config):
    results = config.stash.get(_ACCEPTANCE_KEY, {})
    if not results:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(results):
        title, status, detail = results[number]
        line = f"criterion {number} {status}: {title}"
        terminalreporter.write_line(line + (f" ({detail})" if detail else ""))
