import pytest


from lexrel.pipeline import Resources, data_path

WORKED_ENTRY = "gibelzorrotz|noun|1|Udarearen antzeko sagar mota.\n"
WORKED_RULES = """\
SET IZE-ZERO-NOTGELGEN = (IZE ZERO NOTGELGEN) ;
SET MOTA = ("mota") ;
MAP (&ERLT-MOTA) TARGET MOTA IF (-1 IZE-ZERO-NOTGELGEN) (1 PUNT/PKOMA/KOMA/DEF_BUKA) ;
MAP (&ERLZ-MOTA10) TARGET IZE-ZERO-NOTGELGEN IF (1 MOTA) (2 PUNT/PKOMA/KOMA/DEF_BUKA) ;
"""


@pytest.fixture(scope="session")
def resources():
    return Resources.load()


@pytest.fixture(scope="session")
def lexicon(resources):
    return resources.lexicon


@pytest.fixture(scope="session")
def suffixes(resources):
    return resources.suffixes


@pytest.fixture(scope="session")
def data_dir():
    return data_path("")


_criteria = []


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is None:
        return
    if rep.when == "call" or (rep.when == "setup" and rep.outcome != "passed"):
        _criteria.append((marker.args[0], marker.args[1], item.name, rep.outcome))


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for cid, title, name, outcome in _criteria:
        verdict = "PASS" if outcome == "passed" else "FAIL"
        terminalreporter.write_line(f"[{verdict}] criterion {cid}: {title} ({name})")
