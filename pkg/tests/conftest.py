import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).parent))

# criterion number -> (title, [outcome of each check], total seconds, budget seconds)
ACCEPTANCE: dict[int, list] = {}


def acceptance_lines() -> list[str]:
    out = []
    for n in sorted(ACCEPTANCE):
        title, oks, secs, budget = ACCEPTANCE[n]
        verdict = "PASS" if all(oks) else "FAIL"
        out.append(f"{verdict} criterion {n:2d}: {title} ({secs:.2f}s, budget {budget:g}s)")
    return out


def pytest_terminal_summary(terminalreporter):
    lines = acceptance_lines()
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
