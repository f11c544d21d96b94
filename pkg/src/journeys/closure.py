"""Static reachability relation produced by every closure algorithm.

Rows are stored as packed predecessor bitsets: bit ``u`` of row ``v`` is set
iff ``u`` reaches ``v``.  That is the engines' native layout, so turning
their state into a :class:`Closure` is a copy, not a rebuild.
"""
from __future__ import annotations

import io
import os
from typing import IO, Iterator, Literal, Union

import numpy as np

from .model import ParseError

Flavor = Literal["strict", "non-strict"]
FLAVORS = ("strict", "non-strict")


def n_words(n: int) -> int:
    return (n + 63) // 64


def pack_rows(matrix: np.ndarray) -> np.ndarray:
    """Pack a boolean ``(n, n)`` matrix row-wise into ``(n, words)`` uint64."""
    n = matrix.shape[0]
    w = n_words(n)
    padded = np.zeros((n, w * 64), dtype=bool)
    padded[:, :n] = matrix
    return np.packbits(padded, axis=1, bitorder="little").view(np.uint64).reshape(n, w)


def unpack_rows(bits: np.ndarray, n: int) -> np.ndarray:
    if n == 0:
        return np.zeros((0, 0), dtype=bool)
    raw = np.ascontiguousarray(bits).view(np.uint8)
    return np.unpackbits(raw, axis=1, bitorder="little")[:, :n].astype(bool)


class Closure:
    """Transitive closure of journeys, strict or non-strict.

    ``reach(u, v)`` is true iff ``u == v`` or a journey leads from ``u`` to
    ``v``.  ``stop_step`` is the first step after which every ordered pair
    was reachable, or ``None``.  Equality compares ``n`` and the relation
    only.
    """

    __slots__ = ("n", "flavor", "stop_step", "steps_processed", "_pred")

    def __init__(self, n: int, pred_bits: np.ndarray, flavor: Flavor = "strict",
                 stop_step: int | None = None, steps_processed: int | None = None):
        if flavor not in FLAVORS:
            raise ValueError(f"flavor must be one of {FLAVORS}")
        pred_bits = np.array(pred_bits, dtype=np.uint64, copy=True).reshape(n, n_words(n))
        pred_bits.flags.writeable = False
        self.n = n
        self.flavor = flavor
        self.stop_step = stop_step
        self.steps_processed = steps_processed
        self._pred = pred_bits

    @classmethod
    def from_matrix(cls, reach: np.ndarray, flavor: Flavor = "strict",
                    stop_step: int | None = None, steps_processed: int | None = None) -> "Closure":
        """Build from a boolean ``reach[u, v]`` matrix; the diagonal is forced on."""
        reach = np.array(reach, dtype=bool, copy=True)
        np.fill_diagonal(reach, True)
        return cls(reach.shape[0], pack_rows(reach.T), flavor, stop_step, steps_processed)

    @classmethod
    def from_pairs(cls, n: int, pairs, flavor: Flavor = "strict",
                   stop_step: int | None = None) -> "Closure":
        reach = np.zeros((n, n), dtype=bool)
        for u, v in pairs:
            reach[u, v] = True
        return cls.from_matrix(reach, flavor, stop_step)

    @property
    def pred_bits(self) -> np.ndarray:
        return self._pred

    def matrix(self) -> np.ndarray:
        """Boolean ``(n, n)`` array, ``[u, v]`` true iff ``u`` reaches ``v``."""
        return unpack_rows(self._pred, self.n).T.copy()

    def query(self, u: int, v: int) -> bool:
        if not (0 <= u < self.n and 0 <= v < self.n):
            raise IndexError(f"vertex pair ({u}, {v}) out of range for n={self.n}")
        return bool((int(self._pred[v, u >> 6]) >> (u & 63)) & 1)

    def is_connected(self) -> bool:
        if self.n <= 1:
            return True
        return bool((np.bitwise_count(self._pred).sum(axis=1) == self.n).all())

    def pairs(self) -> Iterator[tuple[int, int]]:
        """Non-reflexive reachable pairs in lexicographic order."""
        us, vs = np.nonzero(self.matrix())
        for u, v in zip(us.tolist(), vs.tolist()):
            if u != v:
                yield u, v

    def arc_set(self) -> set[tuple[int, int]]:
        return set(self.pairs())

    def issubset(self, other: "Closure") -> bool:
        return self.n == other.n and not (self._pred & ~other._pred).any()

    def __eq__(self, other):
        if not isinstance(other, Closure):
            return NotImplemented
        return self.n == other.n and np.array_equal(self._pred, other._pred)

    def __repr__(self):
        return (f"Closure(n={self.n}, flavor={self.flavor!r}, stop_step={self.stop_step}, "
                f"arcs={sum(1 for _ in self.pairs())})")


def is_connected(c: Closure) -> bool:
    return c.is_connected()


def query(c: Closure, u: int, v: int) -> bool:
    return c.query(u, v)


# -- serialization ---------------------------------------------------------

def write_closure(fh: IO[str], c: Closure) -> None:
    stop = "none" if c.stop_step is None else str(c.stop_step)
    fh.write(f"# flavor={c.flavor} stop_step={stop}\n")
    fh.write(f"n={c.n}\n")
    for u, v in c.pairs():
        fh.write(f"{u} {v}\n")


def serialize_closure(c: Closure) -> str:
    buf = io.StringIO()
    write_closure(buf, c)
    return buf.getvalue()


def _header_fields(line: str) -> dict[str, str]:
    out = {}
    for tok in line.lstrip("#").split():
        key, sep, val = tok.partition("=")
        if sep:
            out[key] = val
    return out


def read_closure(source: Union[str, os.PathLike, IO[str]]) -> Closure:
    """Parse the closure text format.  A ``str`` holding the text itself is
    accepted when it contains a newline."""
    if isinstance(source, str) and "\n" in source:
        fh, owns = io.StringIO(source), False
    elif isinstance(source, (str, os.PathLike)):
        fh, owns = open(source, encoding="utf-8"), True
    else:
        fh, owns = source, False
    try:
        return _read_closure(fh)
    finally:
        if owns:
            fh.close()


def _read_closure(fh) -> Closure:
    meta: dict[str, str] = {}
    n = None
    pairs = []
    for lineno, raw in enumerate(fh, start=1):
        line = raw.strip()
        if not line:
            continue
        if line.startswith("#"):
            meta.update(_header_fields(line))
            continue
        if n is None:
            if not line.startswith("n="):
                raise ParseError(f"expected header 'n=<N>', got {line!r}", lineno)
            try:
                n = int(line[2:])
            except ValueError:
                raise ParseError(f"bad vertex count {line[2:]!r}", lineno) from None
            continue
        toks = line.split()
        if len(toks) != 2:
            raise ParseError(f"expected pair '<u> <v>', got {line!r}", lineno)
        try:
            u, v = int(toks[0]), int(toks[1])
        except ValueError:
            raise ParseError(f"non-integer pair {line!r}", lineno) from None
        if not (0 <= u < n and 0 <= v < n):
            raise ParseError(f"pair ({u}, {v}) out of range for n={n}", lineno)
        pairs.append((u, v))
    if n is None:
        raise ParseError("missing header 'n=<N>'")
    flavor = meta.get("flavor", "strict")
    if flavor not in FLAVORS:
        raise ParseError(f"unknown flavor {flavor!r}")
    stop = meta.get("stop_step", "none")
    stop_step = None if stop == "none" else int(stop)
    return Closure.from_pairs(n, pairs, flavor, stop_step)
