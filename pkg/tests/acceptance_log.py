"""Shared pass/fail record for the acceptance criteria; printed by conftest at the end of the run."""
from __future__ import annotations

RESULTS: dict[int, tuple[bool, str]] = {}


def record(num: int, ok: bool, detail: str = "") -> None:
    RESULTS[num] = (ok, detail)
    print(f"criterion {num:>2}: {'PASS' if ok else 'FAIL'}  {detail}")
