"""Collects one pass/fail line per acceptance criterion for the terminal summary."""

from contextlib import contextmanager

RESULTS: dict[int, str] = {}


@contextmanager
def criterion(n: int, title: str):
    """Record PASS or FAIL for criterion ``n``; ``info['detail']`` is appended."""
    info = {"detail": ""}
    try:
        yield info
    except BaseException:
        RESULTS[n] = f"criterion {n}: FAIL  {title}  {info['detail']}".rstrip()
        print(RESULTS[n])
        raise
    RESULTS[n] = f"criterion {n}: PASS  {title}  {info['detail']}".rstrip()
    print(RESULTS[n])
