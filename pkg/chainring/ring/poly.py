"""Vectorised helpers for polynomials with coefficients in Z_m.

Polynomials are numpy integer arrays whose last axis holds coefficients,
lowest degree first. A modulus polynomial is monic and given low-to-high,
so it has one more coefficient than the residues it reduces to.
"""
from typing import Sequence

import numpy as np


def to_base(values, base: int, length: int) -> np.ndarray:
    values = np.asarray(values, dtype=np.int64)
    powers = base ** np.arange(length, dtype=np.int64)
    return (values[..., None] // powers) % base


def from_base(digits, base: int) -> np.ndarray:
    digits = np.asarray(digits, dtype=np.int64)
    powers = base ** np.arange(digits.shape[-1], dtype=np.int64)
    return (digits * powers).sum(axis=-1)


def poly_mulmod(a: np.ndarray, b: np.ndarray, modulus: Sequence[int], m: int) -> np.ndarray:
    """Multiply residues a, b modulo (m, modulus)."""
    r = len(modulus) - 1
    a, b = np.broadcast_arrays(np.asarray(a, dtype=np.int64), np.asarray(b, dtype=np.int64))
    prod = np.zeros(a.shape[:-1] + (2 * r - 1,), dtype=np.int64)
    for i in range(r):
        for j in range(r):
            prod[..., i + j] = (prod[..., i + j] + a[..., i] * b[..., j]) % m
    # x^r = -(f_0 + ... + f_{r-1} x^{r-1})
    for d in range(2 * r - 2, r - 1, -1):
        lead = prod[..., d]
        for i in range(r):
            prod[..., d - r + i] = (prod[..., d - r + i] - lead * modulus[i]) % m
    return prod[..., :r] % m


def poly_str(coeffs: Sequence[int], var: str = 'x') -> str:
    terms = []
    for power, c in enumerate(coeffs):
        if c == 0:
            continue
        if power == 0:
            terms.append(f'{c}')
        else:
            monomial = var if power == 1 else f'{var}^{power}'
            terms.append(monomial if c == 1 else f'{c}{monomial}')
    return '+'.join(terms) if terms else '0'
