"""Dense matrices of Ore polynomials sharing one ring."""

from __future__ import annotations

from typing import Iterable, Sequence

from .ore import OrePoly, RingMismatchError
from .scalar import NEG_INF, RingSpec


class OreMatrix:
    __slots__ = ("rows", "ring", "nrows", "ncols")

    def __init__(self, rows: Iterable[Sequence[OrePoly]], ring: RingSpec, ncols: int | None = None):
        self.rows = [list(r) for r in rows]
        self.ring = ring
        self.nrows = len(self.rows)
        self.ncols = len(self.rows[0]) if self.rows else (ncols or 0)
        for r in self.rows:
            if len(r) != self.ncols:
                raise ValueError("ragged matrix rows")
            for e in r:
                if e.ring != ring:
                    raise RingMismatchError("matrix entries over different rings")

    @classmethod
    def identity(cls, ring: RingSpec, n: int) -> "OreMatrix":
        one, zero = OrePoly.one(ring), OrePoly.zero(ring)
        return cls([[one if i == j else zero for j in range(n)] for i in range(n)], ring, n)

    @classmethod
    def zeros(cls, ring: RingSpec, m: int, n: int) -> "OreMatrix":
        zero = OrePoly.zero(ring)
        return cls([[zero] * n for _ in range(m)], ring, n)

    @property
    def shape(self):
        return self.nrows, self.ncols

    def __getitem__(self, idx):
        i, j = idx
        return self.rows[i][j]

    def copy_rows(self) -> list:
        return [list(r) for r in self.rows]

    def __matmul__(self, other: "OreMatrix") -> "OreMatrix":
        if self.ncols != other.nrows:
            raise ValueError("dimension mismatch")
        zero = OrePoly.zero(self.ring)
        out = []
        for i in range(self.nrows):
            row = []
            for j in range(other.ncols):
                acc = zero
                for k in range(self.ncols):
                    a = self.rows[i][k]
                    b = other.rows[k][j]
                    if a and b:
                        acc = acc + a * b
                row.append(acc)
            out.append(row)
        return OreMatrix(out, self.ring, other.ncols)

    __mul__ = __matmul__

    def __eq__(self, other):
        if not isinstance(other, OreMatrix):
            return NotImplemented
        return self.shape == other.shape and self.rows == other.rows and self.ring == other.ring

    def columns(self, cols: Sequence[int]) -> "OreMatrix":
        return OreMatrix([[r[j] for j in cols] for r in self.rows], self.ring, len(cols))

    def deg(self):
        """Maximum D-degree over all entries."""
        return max((e.degree for r in self.rows for e in r), default=NEG_INF)

    def deg_z(self):
        return max((e.deg_z() for r in self.rows for e in r), default=NEG_INF)

    def is_zero(self) -> bool:
        return all(e.is_zero() for r in self.rows for e in r)

    def __str__(self):
        return "\n".join("; ".join(str(e) for e in r) for r in self.rows)

    def __repr__(self):
        return f"OreMatrix({self.nrows}x{self.ncols})"
