"""One test per acceptance criterion, each run at its stated tolerance.

Every criterion prints a single pass/fail line; the lines are also collected
into the "acceptance criteria" section of the pytest terminal summary.
"""

import pytest

from torus_harmonics.acceptance import CRITERIA, format_line, parse_suite, run_criterion


@pytest.mark.parametrize("number", sorted(CRITERIA), ids=lambda n: f"{n:02d}-{CRITERIA[n][0]}")
def test_criterion(number, acceptance_lines):
    result = run_criterion(number)
    line = format_line(result)
    acceptance_lines.append(line)
    print(line)
    assert result.passed, line


def test_suite_parsing():
    assert parse_suite("all") == sorted(CRITERIA)
    assert parse_suite("1,3,5-7") == [1, 3, 5, 6, 7]
