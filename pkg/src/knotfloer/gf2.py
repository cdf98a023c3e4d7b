"""Linear algebra over GF(2) with vectors packed into Python ints."""

from __future__ import annotations

from typing import Iterable


def _reduce(v: int, basis: dict[int, int]) -> int:
    while v:
        top = v.bit_length() - 1
        pivot = basis.get(top)
        if pivot is None:
            return v
        v ^= pivot
    return 0


def echelon(vectors: Iterable[int]) -> dict[int, int]:
    """Echelon basis of the span, keyed by leading bit."""
    basis: dict[int, int] = {}
    for v in vectors:
        v = _reduce(v, basis)
        if v:
            basis[v.bit_length() - 1] = v
    return basis


def rank(vectors: Iterable[int]) -> int:
    return len(echelon(vectors))


def in_span(v: int, basis: dict[int, int]) -> bool:
    return _reduce(v, basis) == 0


def kernel(images: list[int]) -> list[int]:
    """Basis of {c : sum_i c_i * images[i] = 0}, as bitmasks over the indices."""
    basis: dict[int, tuple[int, int]] = {}
    null = []
    for i, img in enumerate(images):
        v, combo = img, 1 << i
        while v:
            top = v.bit_length() - 1
            if top not in basis:
                break
            pv, pc = basis[top]
            v ^= pv
            combo ^= pc
        if v:
            basis[v.bit_length() - 1] = (v, combo)
        else:
            null.append(combo)
    return null
