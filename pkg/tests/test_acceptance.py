"""Acceptance gate: every criterion at full coverage, one line each.

Run directly with ``pytest -v tests/test_acceptance.py`` or via
``treedeck verify-all --level full`` (``--level extended`` adds the
exhaustive k=11 search, marked slow here).
"""

import pytest

from treedeck.acceptance import CRITERIA

_BY_ID = {c.ident: c for c in CRITERIA}


def _run(ident: str, level: str = "full") -> None:
    crit = _BY_ID[ident]
    crit.run(level)
    print(f"criterion {ident} ({crit.name}): PASS")


@pytest.mark.parametrize("ident", [c.ident for c in CRITERIA if not c.extended_only])
def test_criterion(ident):
    _run(ident)


@pytest.mark.slow
def test_criterion_12b_extended():
    _run("12b", level="extended")
