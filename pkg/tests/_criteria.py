"""Collects one result line per acceptance criterion for the terminal summary."""
LINES: dict[int, str] = {}


def record(n: int, ok: bool, seconds: float, limit: float, detail: str) -> bool:
    ok = ok and seconds < limit
    LINES[n] = f"criterion {n:2d}: {'PASS' if ok else 'FAIL'}  ({seconds:.2f}s / {limit:g}s)  {detail}"
    print(LINES[n])
    return ok
