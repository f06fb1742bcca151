"""Exact coefficient rings: the rationals and towers of at most two simple
extensions ``Q[u]/(f(u))``, ``Q[u][v]/(g(u, v))``.

Rationals are plain :class:`fractions.Fraction` values.  Extension elements are
:class:`ExtElement` instances kept in reduced normal form (the exponent of each
generator stays below the degree of its defining polynomial).  The quotient
rings need not be fields; identity checks remain valid there.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Union

MAX_TOWER_HEIGHT = 2

Exps = tuple[int, ...]


class RingError(ValueError):
    """Raised for ill-formed towers and non-invertible coefficients."""


def as_fraction(value) -> Fraction:
    if isinstance(value, bool):
        raise TypeError("bool is not a coefficient")
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value.strip())
    raise TypeError(f"cannot convert {type(value).__name__} to an exact rational")


def _iroot(n: int, k: int) -> int:
    # floor of the k-th root of n >= 0
    if n < 2:
        return n
    x = 1 << ((n.bit_length() + k - 1) // k)
    while True:
        y = ((k - 1) * x + n // x ** (k - 1)) // k
        if y >= x:
            return x
        x = y


def rational_root(q, k: int) -> Fraction | None:
    """Exact rational k-th root of ``q`` if one exists (real branch), else None."""
    q = as_fraction(q)
    if k < 1:
        raise ValueError("root index must be positive")
    if q == 0:
        return Fraction(0)
    sign = 1
    if q < 0:
        if k % 2 == 0:
            return None
        sign = -1
        q = -q
    a, b = _iroot(q.numerator, k), _iroot(q.denominator, k)
    if a ** k == q.numerator and b ** k == q.denominator:
        return sign * Fraction(a, b)
    return None


class CoefRing:
    """Q or a tower ``Q[g0]/(m0)[g1]/(m1)`` with monic defining polynomials.

    ``relations[i]`` holds the defining polynomial of level ``i`` as a map from
    exponent tuples of length ``i + 1`` to rationals.  It must be monic in
    ``gens[i]`` with lower-level coefficients.
    """

    __slots__ = ("gens", "relations", "degrees", "_tails", "_key", "_basis", "_hash")

    def __init__(self, gens: Iterable[str] = (), relations: Iterable[dict] = ()):
        self.gens = tuple(gens)
        rels = [dict(r) for r in relations]
        if len(rels) != len(self.gens):
            raise RingError("one defining polynomial per generator is required")
        if len(self.gens) > MAX_TOWER_HEIGHT:
            raise RingError(f"tower height is capped at {MAX_TOWER_HEIGHT}")
        if len(set(self.gens)) != len(self.gens):
            raise RingError("generator names must be distinct")
        degrees: list[int] = []
        tails: list[dict] = []
        h = len(self.gens)
        self.relations = []
        for i, rel in enumerate(rels):
            rel = {tuple(e): as_fraction(c) for e, c in rel.items() if as_fraction(c) != 0}
            for e in rel:
                if len(e) != i + 1:
                    raise RingError(f"defining polynomial of {self.gens[i]} uses later generators")
            d = max((e[i] for e in rel), default=0)
            if d < 1:
                raise RingError(f"defining polynomial of {self.gens[i]} has degree 0")
            lead = [(e, c) for e, c in rel.items() if e[i] == d]
            if lead != [((0,) * i + (d,), Fraction(1))]:
                raise RingError(f"defining polynomial of {self.gens[i]} is not monic")
            for e in rel:
                if e[i] < d and any(e[j] >= degrees[j] for j in range(i)):
                    raise RingError(f"coefficients of {self.gens[i]}'s modulus are not reduced")
            degrees.append(d)
            tail = {}
            for e, c in rel.items():
                if e[i] < d:
                    tail[e + (0,) * (h - i - 1)] = -c
            tails.append(tail)
            self.relations.append(rel)
        self.relations = tuple(self.relations)
        self.degrees = tuple(degrees)
        self._tails = tuple(tails)
        self._key = (self.gens, tuple(tuple(sorted(r.items())) for r in self.relations))
        self._hash = hash(self._key)
        self._basis = None

    # -- identity -------------------------------------------------------------
    def __eq__(self, other):
        return isinstance(other, CoefRing) and self._key == other._key

    def __hash__(self):
        return self._hash

    def __repr__(self):
        if not self.gens:
            return "QQ"
        return f"CoefRing({list(self.gens)}, degrees={list(self.degrees)})"

    @property
    def height(self) -> int:
        return len(self.gens)

    def is_prefix_of(self, other: "CoefRing") -> bool:
        h = self.height
        return other.gens[:h] == self.gens and other.relations[:h] == self.relations

    def extend(self, name: str, relation: dict) -> "CoefRing":
        """The ring one level higher; ``relation`` uses exponent tuples of length height+1."""
        return CoefRing(self.gens + (name,), self.relations + (relation,))

    # -- elements -------------------------------------------------------------
    @property
    def zero(self):
        return Fraction(0) if not self.gens else ExtElement(self, {})

    @property
    def one(self):
        return self.coerce(1)

    def gen(self, name: str) -> "ExtElement":
        i = self.gens.index(name)
        e = [0] * self.height
        e[i] = 1
        return ExtElement(self, self.reduce({tuple(e): Fraction(1)}))

    def coerce(self, value):
        if isinstance(value, ExtElement):
            if value.ring == self:
                return value
            if value.ring.is_prefix_of(self):
                pad = (0,) * (self.height - value.ring.height)
                return ExtElement(self, {e + pad: c for e, c in value.terms.items()})
            raise RingError(f"cannot coerce element of {value.ring!r} into {self!r}")
        q = as_fraction(value)
        if not self.gens:
            return q
        return ExtElement(self, {(0,) * self.height: q} if q else {})

    def reduce(self, terms: dict) -> dict:
        out: dict = {}
        stack = list(terms.items())
        h = self.height
        while stack:
            e, c = stack.pop()
            if not c:
                continue
            for i in reversed(range(h)):
                if e[i] >= self.degrees[i]:
                    base = e[:i] + (e[i] - self.degrees[i],) + e[i + 1:]
                    for te, tc in self._tails[i].items():
                        stack.append((tuple(a + b for a, b in zip(base, te)), c * tc))
                    break
            else:
                out[e] = out.get(e, 0) + c
        return {e: c for e, c in out.items() if c}

    def basis(self) -> list:
        if self._basis is None:
            exps = [()]
            for d in self.degrees:
                exps = [e + (k,) for e in exps for k in range(d)]
            self._basis = exps
        return self._basis

    def inv(self, value):
        if not self.gens:
            q = as_fraction(value)
            if q == 0:
                raise RingError("division by zero")
            return 1 / q
        a = self.coerce(value)
        basis = self.basis()
        index = {e: i for i, e in enumerate(basis)}
        n = len(basis)
        # column j = a * basis[j]
        rows = [[Fraction(0)] * (n + 1) for _ in range(n)]
        for j, b in enumerate(basis):
            prod = a * ExtElement(self, {b: Fraction(1)})
            for e, c in prod.terms.items():
                rows[index[e]][j] = c
        rows[index[(0,) * self.height]][n] = Fraction(1)
        sol = solve_linear_augmented(rows, n)
        if sol is None:
            raise RingError(f"{a} is not a unit of {self!r}")
        return ExtElement(self, {basis[j]: c for j, c in enumerate(sol) if c})

    def is_unit(self, value) -> bool:
        try:
            self.inv(value)
        except RingError:
            return False
        return True

    def is_zero(self, value) -> bool:
        return not value

    def to_spec(self) -> list:
        from .textio import format_ring_relation

        return [[g, format_ring_relation(self, i)] for i, g in enumerate(self.gens)]

    @classmethod
    def from_spec(cls, spec) -> "CoefRing":
        """Build from ``[[name, "defining polynomial text"], ...]``."""
        from .textio import parse_ring_relation

        ring = QQ
        for name, text in spec or ():
            rel = parse_ring_relation(ring, name, text)
            ring = ring.extend(name, rel)
        return ring


def solve_linear_augmented(rows: list, ncols: int) -> list | None:
    """Gauss-Jordan on an augmented matrix of Fractions; None if inconsistent or singular."""
    m = [list(r) for r in rows]
    nrows = len(m)
    piv_cols = []
    r = 0
    for col in range(ncols):
        pivot = next((i for i in range(r, nrows) if m[i][col] != 0), None)
        if pivot is None:
            continue
        m[r], m[pivot] = m[pivot], m[r]
        pv = m[r][col]
        m[r] = [v / pv for v in m[r]]
        for i in range(nrows):
            if i != r and m[i][col] != 0:
                f = m[i][col]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        piv_cols.append(col)
        r += 1
    for i in range(r, nrows):
        if m[i][ncols] != 0:
            return None
    if len(piv_cols) < ncols:
        return None
    sol = [Fraction(0)] * ncols
    for i, col in enumerate(piv_cols):
        sol[col] = m[i][ncols]
    return sol


QQ = CoefRing()


class ExtElement:
    """Element of an extension tower, in reduced normal form."""

    __slots__ = ("ring", "terms")

    def __init__(self, ring: CoefRing, terms: dict):
        self.ring = ring
        self.terms = {e: c for e, c in terms.items() if c}

    def _lift(self, other):
        if isinstance(other, ExtElement):
            if other.ring == self.ring:
                return other
            if other.ring.is_prefix_of(self.ring):
                return self.ring.coerce(other)
            return NotImplemented
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return self.ring.coerce(other)
        return NotImplemented

    def __add__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        out = dict(self.terms)
        for e, c in o.terms.items():
            out[e] = out.get(e, 0) + c
        return ExtElement(self.ring, out)

    __radd__ = __add__

    def __neg__(self):
        return ExtElement(self.ring, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return self + (-o)

    def __rsub__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return o + (-self)

    def __mul__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        out: dict = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in o.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out.get(e, 0) + c1 * c2
        return ExtElement(self.ring, self.ring.reduce(out))

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return self * self.ring.inv(o)

    def __rtruediv__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return o * self.ring.inv(self)

    def __pow__(self, k: int):
        if k < 0:
            return self.ring.inv(self) ** (-k)
        result = self.ring.coerce(1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return False
        return self.terms == o.terms

    def __hash__(self):
        if set(self.terms) <= {(0,) * self.ring.height}:
            return hash(self.terms.get((0,) * self.ring.height, Fraction(0)))
        return hash(frozenset(self.terms.items()))

    def rational_value(self) -> Fraction | None:
        if set(self.terms) <= {(0,) * self.ring.height}:
            return self.terms.get((0,) * self.ring.height, Fraction(0))
        return None

    def __repr__(self):
        from .textio import format_coef

        return f"ExtElement({format_coef(self)})"


Coef = Union[Fraction, ExtElement]
