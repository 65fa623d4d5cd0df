"""Permutation groups on {0..k-1} with stabilizer-chain membership.

Degrees here are tiny (k <= 8), so a plain deterministic Schreier-Sims
suffices.  Closure of the chain is deferred: adding generators only
rebuilds orbits, which keeps the hot path (feeding many redundant
generators) cheap.  The product of orbit sizes always counts distinct
elements, so it is a sound lower bound on the order; when it reaches the
full k! the chain is certifiably complete without any Schreier closure.
"""

from __future__ import annotations

from math import factorial
from typing import Iterable, Iterator

from .errors import ValidationError

Perm = tuple[int, ...]


def identity_perm(k: int) -> Perm:
    return tuple(range(k))


def compose(p: Perm, q: Perm) -> Perm:
    """(p o q)(i) = p(q(i))."""
    return tuple(map(p.__getitem__, q))


def inverse(p: Perm) -> Perm:
    inv = [0] * len(p)
    for i, x in enumerate(p):
        inv[x] = i
    return tuple(inv)


def check_perm(p: Iterable[int], k: int) -> Perm:
    t = tuple(p)
    if sorted(t) != list(range(k)):
        raise ValidationError(f"not a permutation of 0..{k - 1}: {t}")
    return t


def transposition(k: int, i: int, j: int) -> Perm:
    out = list(range(k))
    out[i], out[j] = out[j], out[i]
    return tuple(out)


def cycle_notation(p: Perm) -> str:
    seen: set[int] = set()
    parts = []
    for i in range(len(p)):
        if i in seen or p[i] == i:
            continue
        cyc = [i]
        j = p[i]
        while j != i:
            seen.add(j)
            cyc.append(j)
            j = p[j]
        parts.append("(" + " ".join(map(str, cyc)) + ")")
    return "".join(parts) if parts else "()"


class PermGroup:
    """Subgroup of S_k given by generators.

    Membership and order queries go through a stabilizer chain with base
    points chosen on demand (first moved point of each new residue).
    Transversals store each coset representative with its inverse so
    sifting never recomputes inverses.
    """

    def __init__(self, degree: int, generators: Iterable[Perm] = ()):
        if degree < 1:
            raise ValidationError("degree must be >= 1")
        self.degree = degree
        self.generators: list[Perm] = []
        self._base: list[int] = []
        self._level_gens: list[list[Perm]] = []
        # per level: point -> (u, u_inv) with u(base) = point
        self._trans: list[dict[int, tuple[Perm, Perm]]] = []
        self._id = identity_perm(degree)
        self._full = factorial(degree)
        self._closed = True
        for p in generators:
            self.add(p)

    # -- chain internals ----------------------------------------------------

    def _gens_at(self, i: int) -> list[Perm]:
        out: list[Perm] = []
        for lvl in range(i, len(self._level_gens)):
            out.extend(self._level_gens[lvl])
        return out

    def _rebuild_orbit(self, i: int) -> None:
        b = self._base[i]
        gens = self._gens_at(i)
        trans: dict[int, tuple[Perm, Perm]] = {b: (self._id, self._id)}
        frontier = [b]
        while frontier:
            nxt = []
            for pt in frontier:
                upt = trans[pt][0]
                for gen in gens:
                    q = gen[pt]
                    if q not in trans:
                        u = compose(gen, upt)
                        trans[q] = (u, inverse(u))
                        nxt.append(q)
            frontier = nxt
        self._trans[i] = trans

    def _sift_from(self, start: int, p: Perm) -> tuple[Perm, int]:
        base = self._base
        trans = self._trans
        for i in range(start, len(base)):
            t = p[base[i]]
            if t == base[i]:
                continue
            entry = trans[i].get(t)
            if entry is None:
                return p, i
            p = compose(entry[1], p)
        return p, len(base)

    def _insert_residue(self, residue: Perm, lvl: int) -> None:
        if lvl == len(self._base):
            b = next(i for i in range(self.degree) if residue[i] != i)
            self._base.append(b)
            self._level_gens.append([])
            self._trans.append({})
        self._level_gens[lvl].append(residue)
        for i in range(lvl + 1):
            self._rebuild_orbit(i)
        self._closed = False

    def _find_open_schreier(self) -> tuple[Perm, int] | None:
        for i in range(len(self._base)):
            gens = self._gens_at(i)
            trans = self._trans[i]
            for pt in sorted(trans):
                upt = trans[pt][0]
                for gen in gens:
                    schreier = compose(trans[gen[pt]][1], compose(gen, upt))
                    if schreier == self._id:
                        continue
                    r, lvl = self._sift_from(i + 1, schreier)
                    if r != self._id:
                        return r, lvl
        return None

    def _ensure_closed(self) -> None:
        if self._closed:
            return
        # a chain whose orbit product reaches k! is the whole symmetric
        # group; nothing to close
        if self.order_lower_bound() == self._full:
            self._closed = True
            return
        while not self._closed:
            hit = self._find_open_schreier()
            if hit is None:
                self._closed = True
            else:
                self._insert_residue(*hit)
                if self.order_lower_bound() == self._full:
                    self._closed = True

    def _add_perm(self, perm: Perm) -> bool:
        """Add a generator known to be a valid permutation."""
        residue, lvl = self._sift_from(0, perm)
        if residue == self._id:
            return False
        self.generators.append(perm)
        self._insert_residue(residue, lvl)
        return True

    # -- public surface -----------------------------------------------------

    def add(self, p: Iterable[int]) -> bool:
        """Add a generator; returns True when it extended the chain."""
        return self._add_perm(check_perm(p, self.degree))

    def order_lower_bound(self) -> int:
        """Product of orbit sizes; a certified lower bound on the order."""
        out = 1
        for trans in self._trans:
            out *= len(trans)
        return out

    def order(self) -> int:
        self._ensure_closed()
        return self.order_lower_bound()

    def __contains__(self, p: Iterable[int]) -> bool:
        perm = check_perm(p, self.degree)
        self._ensure_closed()
        residue, _ = self._sift_from(0, perm)
        return residue == self._id

    def is_symmetric(self) -> bool:
        return self.order() == self._full

    def elements(self, cap: int = 50_000) -> Iterator[Perm]:
        """Enumerate all elements by closure; guarded by a cap."""
        if self.order() > cap:
            raise ValidationError(f"group order {self.order()} exceeds cap {cap}")
        gens = self.generators or [self._id]
        seen = {self._id}
        queue = [self._id]
        yield self._id
        while queue:
            p = queue.pop()
            for g in gens:
                q = compose(g, p)
                if q not in seen:
                    seen.add(q)
                    queue.append(q)
                    yield q

    def __repr__(self):
        return (f"PermGroup(degree={self.degree}, order={self.order()}, "
                f"generators={[cycle_notation(g) for g in self.generators]})")
