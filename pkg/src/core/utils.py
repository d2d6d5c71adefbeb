#!/usr/bin/env python3
"""
Core Utilities - Input digests, bound formatting and command timing
"""

import hashlib
import time
from pathlib import Path
from typing import Optional, Tuple, Union


# ============================================================================
# INPUT DIGESTS
# ============================================================================

def file_digest(file_path: Union[str, Path], chunk_size: int = 1 << 16) -> str:
    """sha256 of a file's bytes as "sha256:<hex>"; reports key inputs by it"""
    digest = hashlib.sha256()
    with open(file_path, "rb") as f:
        for chunk in iter(lambda: f.read(chunk_size), b""):
            digest.update(chunk)
    return f"sha256:{digest.hexdigest()}"


# ============================================================================
# FORMATTING
# ============================================================================

def format_bounds(bounds: Tuple[int, int]) -> str:
    """(deg λ, deg ∂) as printed in reports and solver file headers"""
    return f"deg-l<={bounds[0]}, deg-d<={bounds[1]}"


def format_duration(seconds: float) -> str:
    if seconds < 1:
        return f"{seconds * 1000:.0f}ms"
    if seconds < 120:
        return f"{seconds:.2f}s"
    minutes, rest = divmod(seconds, 60)
    return f"{int(minutes)}m{rest:02.0f}s"


# ============================================================================
# TIMING
# ============================================================================

class Timer:
    """
    Wall-clock timer for one command

    Always logged; copied into the report only with --timing, since the
    elapsed time would otherwise break byte-identical output.
    """

    def __init__(self, label: str):
        self.label = label
        self._start: Optional[float] = None
        self.elapsed: Optional[float] = None

    def __enter__(self) -> 'Timer':
        self._start = time.perf_counter()
        return self

    def __exit__(self, *exc) -> None:
        self.elapsed = time.perf_counter() - self._start

    def __str__(self) -> str:
        if self.elapsed is None:
            return f"{self.label}: running"
        return f"{self.label}: {format_duration(self.elapsed)}"
