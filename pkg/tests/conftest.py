from contextlib import contextmanager

import pytest

_RESULTS = pytest.StashKey[list]()


class _Record:
    detail = ""


@pytest.fixture
def acceptance(request):
    """Context manager recording one PASS/FAIL line per acceptance criterion."""
    log = request.config.stash.setdefault(_RESULTS, [])

    @contextmanager
    def criterion(number: int, title: str):
        rec = _Record()
        try:
            yield rec
        except BaseException as exc:
            line = f"criterion {number} FAIL  {title}: {rec.detail or type(exc).__name__} {exc}".rstrip()
            log.append((number, line))
            print(line)
            raise
        line = f"criterion {number} PASS  {title}" + (f": {rec.detail}" if rec.detail else "")
        log.append((number, line))
        print(line)

    return criterion


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    results = config.stash.get(_RESULTS, [])
    if not results:
        return
    terminalreporter.section("acceptance criteria")
    for _, line in sorted(results):
        terminalreporter.write_line(line.splitlines()[0])
