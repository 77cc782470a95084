"""Nimber arithmetic: xor, upper and lower nim-sums, chain evaluation.

The upper nim-sum of m and n is the largest value of m xor n' over
0 <= n' <= n, the lower nim-sum the smallest.  Both have closed forms on
the binary expansions: writing a for the highest bit position where m and
n are both 1 and b for the highest position where m is 0 and n is 1
(either -1 when absent),

    upper(m, n) = (m xor n) with bits 0..a forced to 1
    lower(m, n) = (m xor n) with bits 0..b cleared

The scan variants are the literal definitions and exist as independent
oracles for the closed forms.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum


def _check(m: int, n: int) -> None:
    if m < 0 or n < 0:
        raise ValueError("nimbers are non-negative integers")


def xor(m: int, n: int) -> int:
    """Nim-sum: bitwise exclusive or."""
    _check(m, n)
    return m ^ n


def upper_slow(m: int, n: int) -> int:
    """max of m xor n' over 0 <= n' <= n, by exhaustive scan."""
    _check(m, n)
    return max(m ^ k for k in range(n + 1))


def lower_slow(m: int, n: int) -> int:
    """min of m xor n' over 0 <= n' <= n, by exhaustive scan."""
    _check(m, n)
    return min(m ^ k for k in range(n + 1))


def upper(m: int, n: int) -> int:
    """Upper nim-sum, closed form.  Equals upper_slow everywhere."""
    _check(m, n)
    both = m & n
    if both == 0:
        return m ^ n
    mask = (1 << both.bit_length()) - 1
    return (m ^ n) | mask


def lower(m: int, n: int) -> int:
    """Lower nim-sum, closed form.  Equals lower_slow everywhere."""
    _check(m, n)
    gained = ~m & n
    if gained == 0:
        return m ^ n
    mask = (1 << gained.bit_length()) - 1
    return (m ^ n) & ~mask


class ChainOp(Enum):
    UPPER = "upper"
    LOWER = "lower"


@dataclass(frozen=True)
class ChainStep:
    op: ChainOp
    operand: int


def chain_eval(start: int, steps) -> int:
    """Fold upper/lower steps over start, strictly left to right."""
    acc = start
    for step in steps:
        fn = upper if step.op is ChainOp.UPPER else lower
        acc = fn(acc, step.operand)
    return acc


def xor_all(values) -> int:
    acc = 0
    for v in values:
        _check(v, 0)
        acc ^= v
    return acc
