"""
The extended affine Weyl group of GL_r in window notation.

An element is a bijection ``w`` of the integers with ``w(i + r) = w(i) + r``,
stored as the tuple ``(w(1), ..., w(r))``.  Composition is ``(u*w)(i) =
u(w(i))``.  The generators are

* ``s_i`` (1 <= i <= r-1): swap window entries i and i+1;
* ``s_0``: the affine reflection, window ``(0, 2, ..., r-1, r+1)``;
* ``t``: the rotation ``i -> i-1``, window ``(0, 1, ..., r-1)``.

With this choice ``t s_i t^-1 = s_{i-1}`` (indices mod r).  Every element is
``t^k`` times an element of the Coxeter group generated by ``s_0..s_{r-1}``;
``k`` is minus the Omega-degree ``sum(w(i) - i) / r``.
"""

from __future__ import annotations

import os
from collections import deque
from dataclasses import dataclass
from typing import Union

from .errors import IndexOutOfRange, RankMismatch, ResourceLimit

__all__ = [
    "Window", "ReducedDecomposition",
    "identity", "generator", "omega_element", "compose", "inverse",
    "omega_degree", "length", "right_descent", "right_descents", "right_mul_s",
    "reduced_decomposition", "reassemble", "bfs_ball", "validate",
    "max_len_cap", "check_guard",
]

# (w(1), ..., w(r))
Window = tuple[int, ...]

MAX_RANK = 6
DEFAULT_MAX_LEN = 8
HARD_MAX_LEN = 10


def max_len_cap() -> int:
    """The length guard; ``HECKE_MAX_LEN`` overrides it, never beyond 10."""
    raw = os.environ.get("HECKE_MAX_LEN")
    if not raw:
        return DEFAULT_MAX_LEN
    try:
        cap = int(raw)
    except ValueError:
        return DEFAULT_MAX_LEN
    return max(0, min(cap, HARD_MAX_LEN))


def check_guard(rank: int, max_len: int) -> None:
    if rank < 1 or rank > MAX_RANK:
        raise ResourceLimit(f"rank {rank} outside the supported range 1..{MAX_RANK}")
    cap = max_len_cap()
    if max_len < 0 or max_len > cap:
        raise ResourceLimit(f"max length {max_len} outside 0..{cap}")


def validate(window: Window) -> Window:
    """Return ``window`` as a tuple, raising ValueError unless it is a valid element."""
    w = tuple(int(x) for x in window)
    r = len(w)
    if r < 1:
        raise ValueError("empty window")
    if len({x % r for x in w}) != r:
        raise ValueError(f"window {w} has repeated residues mod {r}")
    shift = sum(w) - r * (r + 1) // 2
    assert shift % r == 0, "Omega-degree must be integral"
    return w


def identity(rank: int) -> Window:
    return tuple(range(1, rank + 1))


def omega_element(rank: int, k: int) -> Window:
    """The window of ``t^k``."""
    return tuple(i - k for i in range(1, rank + 1))


def generator(rank: int, which: Union[int, str]) -> Window:
    """``which`` is an index i for ``s_i`` (0 <= i < rank), or ``"T"`` / ``"Tinv"``."""
    if which == "T":
        return omega_element(rank, 1)
    if which == "Tinv":
        return omega_element(rank, -1)
    if not isinstance(which, int) or rank < 2 or not 0 <= which < rank:
        raise IndexOutOfRange(f"no generator s_{which} at rank {rank}")
    return right_mul_s(identity(rank), which)


def _apply(w: Window, j: int) -> int:
    r = len(w)
    q, m = divmod(j - 1, r)
    return w[m] + q * r


def compose(u: Window, w: Window) -> Window:
    if len(u) != len(w):
        raise RankMismatch(f"cannot compose rank {len(u)} with rank {len(w)}")
    return tuple(_apply(u, x) for x in w)


def inverse(w: Window) -> Window:
    r = len(w)
    out = [0] * r
    for i, x in enumerate(w, start=1):
        q, m = divmod(x - 1, r)
        out[m] = i - q * r
    return tuple(out)


def omega_degree(w: Window) -> int:
    r = len(w)
    return (sum(w) - r * (r + 1) // 2) // r


def length(w: Window) -> int:
    """Coxeter length: sum over i < j of |floor((w(j) - w(i)) / r)|."""
    r = len(w)
    total = 0
    for i in range(r):
        wi = w[i]
        for j in range(i + 1, r):
            total += abs((w[j] - wi) // r)
    return total


def _check_index(w: Window, i: int) -> None:
    r = len(w)
    if r < 2 or not 0 <= i < r:
        raise IndexOutOfRange(f"no simple reflection s_{i} at rank {r}")


def right_descent(w: Window, i: int) -> bool:
    _check_index(w, i)
    if i == 0:
        return w[-1] - len(w) > w[0]
    return w[i - 1] > w[i]


def right_descents(w: Window) -> list[int]:
    r = len(w)
    if r < 2:
        return []
    out = [0] if w[-1] - r > w[0] else []
    out.extend(i for i in range(1, r) if w[i - 1] > w[i])
    return out


def right_mul_s(w: Window, i: int) -> Window:
    """``w * s_i``."""
    _check_index(w, i)
    r = len(w)
    lst = list(w)
    if i == 0:
        lst[0], lst[-1] = w[-1] - r, w[0] + r
    else:
        lst[i - 1], lst[i] = w[i], w[i - 1]
    return tuple(lst)


@dataclass(frozen=True)
class ReducedDecomposition:
    """``w = t^omega_power * s_word[0] * s_word[1] * ...`` with ``len(word) == length(w)``."""
    omega_power: int
    word: tuple[int, ...]


def reduced_decomposition(w: Window, prefer: str = "min") -> ReducedDecomposition:
    """
    Strip right descents greedily from the Omega-degree-zero part of ``w``.

    ``prefer="min"`` takes the smallest descent index at each step (the
    canonical word); ``"max"`` the largest, which gives a second reduced word
    whenever one exists.
    """
    r = len(w)
    k = -omega_degree(w)
    u = compose(omega_element(r, -k), w)
    found = []
    while True:
        ds = right_descents(u)
        if not ds:
            break
        i = ds[0] if prefer == "min" else ds[-1]
        found.append(i)
        u = right_mul_s(u, i)
    assert u == identity(r), "length-zero element of degree zero must be the identity"
    return ReducedDecomposition(k, tuple(reversed(found)))


def reassemble(dec: ReducedDecomposition, rank: int) -> Window:
    w = omega_element(rank, dec.omega_power)
    for i in dec.word:
        w = right_mul_s(w, i)
    return w


def bfs_ball(rank: int, max_len: int) -> dict[Window, int]:
    """
    Word lengths by breadth-first search.

    For each Omega-degree ``d`` with ``|d| <= max_len``, search outward from
    ``t^-d`` under right multiplication by ``s_0, ..., s_{r-1}`` and record
    every element reached within ``max_len`` steps.  This does not use
    :func:`length`; it is the oracle that the closed formula is checked against.
    """
    check_guard(rank, max_len)
    out: dict[Window, int] = {}
    gens = range(rank) if rank >= 2 else range(0)
    for d in range(-max_len, max_len + 1):
        start = omega_element(rank, -d)
        out[start] = 0
        queue = deque([start])
        while queue:
            w = queue.popleft()
            dist = out[w]
            if dist == max_len:
                continue
            for i in gens:
                x = right_mul_s(w, i)
                if x not in out:
                    out[x] = dist + 1
                    queue.append(x)
    return out
