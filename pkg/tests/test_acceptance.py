"""Every acceptance criterion at its stated tolerance; one verdict line each."""

import pytest

from f1forge.acceptance import CRITERIA


@pytest.mark.parametrize("name", list(CRITERIA))
def test_criterion(name, capsys):
    c = CRITERIA[name](seed=0)
    with capsys.disabled():
        print()
        print(c.line())
        for d in c.details:
            print(f"    {d}")
    assert c.passed, "\n".join(c.details)
