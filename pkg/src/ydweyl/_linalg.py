"""Sparse exact linear algebra over a :class:`~ydweyl.scalars.SplittingField`.

Vectors are dicts mapping a coordinate index to a raw field tuple; zero
entries are never stored.
"""

from __future__ import annotations

from .scalars import SplittingField


def axpy(F: SplittingField, y: dict, a: tuple, x: dict) -> None:
    """In place: y += a * x."""
    for k, v in x.items():
        t = F.mul(a, v)
        if k in y:
            s = F.add(y[k], t)
            if F.is_zero(s):
                del y[k]
            else:
                y[k] = s
        elif not F.is_zero(t):
            y[k] = t


def add_entry(F: SplittingField, y: dict, k: int, v: tuple) -> None:
    """In place: y[k] += v."""
    if k in y:
        s = F.add(y[k], v)
        if F.is_zero(s):
            del y[k]
        else:
            y[k] = s
    elif not F.is_zero(v):
        y[k] = v


def scale(F: SplittingField, a: tuple, x: dict) -> dict:
    return {k: F.mul(a, v) for k, v in x.items()}


class Echelon:
    """Incrementally maintained reduced row echelon form.

    Each stored row has a pivot column with entry one, and every other stored
    row vanishes in that column.  Consequently a vector v in the span equals
    the sum over pivots c of v[c] times the row of c.
    """

    def __init__(self, F: SplittingField) -> None:
        self.F = F
        self.rows: dict[int, dict] = {}

    def reduce(self, v: dict) -> dict:
        F = self.F
        r = dict(v)
        for c in [c for c in r if c in self.rows]:
            if c in r:
                axpy(F, r, F.neg(r[c]), self.rows[c])
        return r

    def add(self, v: dict) -> bool:
        """Insert v; return True if it was independent of the stored rows."""
        F = self.F
        r = self.reduce(v)
        if not r:
            return False
        c = min(r)
        inv = F.inv(r[c])
        r = {k: F.mul(inv, x) for k, x in r.items()}
        for row in self.rows.values():
            if c in row:
                axpy(F, row, F.neg(row[c]), r)
        self.rows[c] = r
        return True

    @property
    def rank(self) -> int:
        return len(self.rows)

    def pivots(self) -> list[int]:
        return sorted(self.rows)


def rank(F: SplittingField, vectors) -> int:
    ech = Echelon(F)
    for v in vectors:
        ech.add(v)
    return ech.rank
