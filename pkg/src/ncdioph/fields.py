"""Exact computable-field arithmetic: rationals, prime fields, Gaussian rationals.

Every element type here is immutable, canonical (two elements are bit-equal
iff they are mathematically equal) and supports ``+ - * / **`` with exact
results.  Field *descriptors* (:data:`QQ`, :func:`GF`, :data:`QI`) carry the
metadata the rest of the package needs: characteristic, deterministic
enumeration for bounded searches, parsing/printing of scalar literals.
"""

from __future__ import annotations

import itertools
from math import gcd

from .errors import NCDiophError, StructureMismatchError

try:  # exact rationals; gmpy2 is an order of magnitude faster than Fraction
    from gmpy2 import mpq as rat
except ImportError:  # pragma: no cover - exercised only without gmpy2
    from fractions import Fraction as rat

RAT_ZERO = rat(0)
RAT_ONE = rat(1)


def _is_prime(p):
    if p < 2:
        return False
    d = 2
    while d * d <= p:
        if p % d == 0:
            return False
        d += 1
    return True


class Fp:
    """Element of the prime field with ``p`` elements, stored as residue in [0, p)."""

    __slots__ = ("r", "p")

    def __init__(self, r, p):
        self.r = r % p
        self.p = p

    def _coerce(self, other):
        if isinstance(other, Fp):
            if other.p != self.p:
                raise StructureMismatchError(f"F{self.p} vs F{other.p}")
            return other
        if isinstance(other, int):
            return Fp(other, self.p)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is None else Fp(self.r + o.r, self.p)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is None else Fp(self.r - o.r, self.p)

    def __rsub__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is None else Fp(o.r - self.r, self.p)

    def __mul__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is None else Fp(self.r * o.r, self.p)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __pow__(self, n):
        if n < 0:
            return self.inverse() ** (-n)
        return Fp(pow(self.r, n, self.p), self.p)

    def __neg__(self):
        return Fp(-self.r, self.p)

    def inverse(self):
        if self.r == 0:
            raise ZeroDivisionError(f"inverse of 0 in F{self.p}")
        return Fp(pow(self.r, self.p - 2, self.p), self.p)

    def __eq__(self, other):
        if isinstance(other, int):
            other = Fp(other, self.p)
        return isinstance(other, Fp) and self.p == other.p and self.r == other.r

    def __hash__(self):
        return hash((self.r, self.p))

    def __bool__(self):
        return self.r != 0

    def __repr__(self):
        return f"Fp({self.r}, {self.p})"

    def __str__(self):
        return str(self.r)


class GaussianRational:
    """Element a + b*i of Q(i), with exact rational real and imaginary parts."""

    __slots__ = ("re", "im")

    def __init__(self, re, im=0):
        self.re = rat(re)
        self.im = rat(im)

    def _coerce(self, other):
        if isinstance(other, GaussianRational):
            return other
        if isinstance(other, int) or type(other) is type(RAT_ZERO):
            return GaussianRational(other)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return GaussianRational(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return GaussianRational(self.re - o.re, self.im - o.im)

    def __rsub__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is None else o - self

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return GaussianRational(self.re * o.re - self.im * o.im,
                                self.re * o.im + self.im * o.re)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __pow__(self, n):
        if n < 0:
            return self.inverse() ** (-n)
        out = GaussianRational(1)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def __neg__(self):
        return GaussianRational(-self.re, -self.im)

    def inverse(self):
        n = self.re * self.re + self.im * self.im
        if not n:
            raise ZeroDivisionError("inverse of 0 in Q(i)")
        return GaussianRational(self.re / n, -self.im / n)

    def conjugate(self):
        return GaussianRational(self.re, -self.im)

    def __eq__(self, other):
        o = self._coerce(other)
        return o is not None and self.re == o.re and self.im == o.im

    def __hash__(self):
        return hash((self.re, self.im))

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def __repr__(self):
        return f"GaussianRational({self.re!r}, {self.im!r})"

    def __str__(self):
        return gaussian_str(self)


def gaussian_str(z):
    """Grammar-compatible rendering: ``0``, ``3/2``, ``i``, ``-2i``, ``1+2i``, ``1-2i``."""
    re, im = z.re, z.im
    if not im:
        return str(re)
    if im == 1:
        imtxt = "i"
    elif im == -1:
        imtxt = "-i"
    elif im.denominator == 1:
        imtxt = f"{im}i"
    else:
        imtxt = f"{im.numerator}i/{im.denominator}"
    if not re:
        return imtxt
    sep = "+" if not imtxt.startswith("-") else ""
    return f"{re}{sep}{imtxt}"


def _rat_height(q):
    return max(abs(int(q.numerator)), int(q.denominator))


def _enumerate_rationals(bound):
    # 0 first, then by height, |numerator|, numerator, denominator
    out = [RAT_ZERO]
    items = []
    for den in range(1, bound + 1):
        for num in range(-bound, bound + 1):
            if num == 0 or gcd(abs(num), den) != 1:
                continue
            if max(abs(num), den) > bound:
                continue
            items.append(rat(num, den))
    items.sort(key=lambda q: (_rat_height(q), abs(int(q.numerator)),
                              int(q.numerator), int(q.denominator)))
    return out + items


class RationalField:
    name = "Q"
    char = 0
    is_finite = False

    zero = RAT_ZERO
    one = RAT_ONE

    def from_int(self, n):
        return rat(n)

    def inv(self, a):
        if not a:
            raise ZeroDivisionError("inverse of 0 in Q")
        return RAT_ONE / a

    def contains(self, x):
        return type(x) is type(RAT_ZERO)

    def enumerate(self, bound):
        return _enumerate_rationals(bound)

    def scalar_str(self, a):
        return str(a)

    def sort_key(self, a):
        return (_rat_height(a), int(a.numerator), int(a.denominator))

    def __eq__(self, other):
        return isinstance(other, RationalField)

    def __hash__(self):
        return hash("Q")

    def __repr__(self):
        return "QQ"


class PrimeField:
    char_positive = True
    is_finite = True

    def __init__(self, p):
        if not _is_prime(p):
            raise NCDiophError(f"{p} is not prime")
        self.p = p
        self.name = f"F{p}"
        self.char = p
        self.zero = Fp(0, p)
        self.one = Fp(1, p)

    def from_int(self, n):
        return Fp(n, self.p)

    def inv(self, a):
        return a.inverse()

    def contains(self, x):
        return isinstance(x, Fp) and x.p == self.p

    def elements(self):
        return [Fp(r, self.p) for r in range(self.p)]

    def enumerate(self, bound):
        return [Fp(r, self.p) for r in range(min(bound + 1, self.p))]

    def scalar_str(self, a):
        return str(a.r)

    def sort_key(self, a):
        return (a.r,)

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("F", self.p))

    def __repr__(self):
        return f"GF({self.p})"


class GaussianRationalField:
    name = "Qi"
    char = 0
    is_finite = False

    zero = GaussianRational(0)
    one = GaussianRational(1)
    i = GaussianRational(0, 1)

    def from_int(self, n):
        return GaussianRational(n)

    def inv(self, a):
        return a.inverse()

    def contains(self, x):
        return isinstance(x, GaussianRational)

    def enumerate(self, bound):
        rats = _enumerate_rationals(bound)
        out = [GaussianRational(re, im) for re, im in itertools.product(rats, rats)]
        out.sort(key=self.sort_key)
        return out

    def scalar_str(self, a):
        return gaussian_str(a)

    def sort_key(self, a):
        h = max(_rat_height(a.re) if a.re else 0, _rat_height(a.im) if a.im else 0)
        return (h, int(a.re.numerator), int(a.re.denominator),
                int(a.im.numerator), int(a.im.denominator))

    def __eq__(self, other):
        return isinstance(other, GaussianRationalField)

    def __hash__(self):
        return hash("Qi")

    def __repr__(self):
        return "QI"


QQ = RationalField()
QI = GaussianRationalField()

_GF_CACHE = {}


def GF(p):
    if p not in _GF_CACHE:
        _GF_CACHE[p] = PrimeField(p)
    return _GF_CACHE[p]


def field_by_name(name):
    if name == "Q":
        return QQ
    if name == "Qi":
        return QI
    if name.startswith("F") and name[1:].isdigit():
        return GF(int(name[1:]))
    raise NCDiophError(f"unknown field {name!r}")


def field_arith(field, op, a, b=None):
    """Apply ``op in {'+','-','*','inv'}`` to field elements, checking membership."""
    for x in (a, b) if b is not None else (a,):
        if not field.contains(x):
            raise StructureMismatchError(f"{x!r} is not an element of {field.name}")
    if op == "inv":
        return field.inv(a)
    if b is None:
        raise NCDiophError(f"binary op {op!r} needs two operands")
    if op == "+":
        return a + b
    if op == "-":
        return a - b
    if op == "*":
        return a * b
    raise NCDiophError(f"unknown field op {op!r}")


def solve_field_system(system, bound=None, find_all=False):
    """Search for solutions of a finite polynomial system over its field.

    Over a prime field the search is exhaustive, so the answer is complete
    (``SAT`` or ``UNSAT_COMPLETE``).  Over Q or Q(i) candidates are drawn from
    the deterministic height enumeration up to ``bound``; exhausting them
    yields ``UNKNOWN`` (no witness of height <= bound, nothing beyond that).

    Witnesses come back in a :class:`~ncdioph.reports.SolveReport`; with
    ``find_all`` every satisfying assignment in the search space is returned,
    otherwise the first one in canonical candidate order.
    """
    from . import eqsys
    from .reports import SAT, UNKNOWN, UNSAT_COMPLETE, SolveReport, SolveStats

    structure = system.structure
    if not isinstance(structure, eqsys.FieldStructure):
        raise StructureMismatchError("solve_field_system expects a system over a field")
    field = structure.field
    variables = list(system.variables)

    if field.is_finite:
        candidates = field.elements()
        exhaustive = True
    else:
        if bound is None:
            raise NCDiophError("a height bound is required over an infinite field")
        candidates = field.enumerate(bound)
        exhaustive = False

    stats = SolveStats()
    witnesses = []
    for values in itertools.product(candidates, repeat=len(variables)):
        stats.oracle_calls += 1
        assignment = dict(zip(variables, values))
        if eqsys.check_solution(system, assignment):
            witnesses.append(assignment)
            if not find_all:
                break
    if witnesses:
        return SolveReport(SAT, witnesses, stats)
    status = UNSAT_COMPLETE if exhaustive else UNKNOWN
    note = None if exhaustive else f"no witness of height <= {bound}"
    return SolveReport(status, [], stats, note=note)
