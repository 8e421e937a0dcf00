"""Group oracles (free abelian, free, right-angled Artin) and group-algebra
arithmetic, with the centralizer machinery that turns a suitable centralizer
into a Laurent polynomial ring.

Group elements are plain tuples in canonical form, so they can serve as
dictionary keys in group-algebra elements:

* free abelian of rank r: integer exponent vectors of length r;
* free group: reduced words as tuples of signed 1-based generator indices
  (``2`` is the second generator, ``-2`` its inverse);
* RAAG: words as in the free group, fully cancelled and then put into the
  lexicographic trace normal form induced by the commutation edges.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .errors import NCDiophError, NotInDomainError, StructureMismatchError
from .fields import rat
from .polyring import Poly, PolynomialRing, _display_negative


def _letter_rank(letter):
    # a < a^-1 < b < b^-1 < ...
    return (abs(letter) - 1) * 2 + (0 if letter > 0 else 1)


def _word_runs(word):
    runs = []
    for letter in word:
        gen, sign = abs(letter), (1 if letter > 0 else -1)
        if runs and runs[-1][0] == gen and (runs[-1][1] > 0) == (sign > 0):
            runs[-1][1] += sign
        else:
            runs.append([gen, sign])
    return runs


class FreeAbelianGroup:
    kind = "freeabelian"

    def __init__(self, rank, names=None):
        if rank < 1:
            raise NCDiophError("rank must be >= 1")
        self.rank = rank
        self.gen_names = tuple(names) if names else tuple(
            chr(ord("a") + k) for k in range(rank))
        if len(self.gen_names) != rank:
            raise NCDiophError("need one name per generator")
        self.identity = (0,) * rank

    def gen(self, name):
        k = self.gen_names.index(name)
        e = [0] * self.rank
        e[k] = 1
        return tuple(e)

    def canonical(self, g):
        return tuple(g)

    def multiply(self, g, h):
        return tuple(a + b for a, b in zip(g, h))

    def invert(self, g):
        return tuple(-a for a in g)

    def power(self, g, k):
        return tuple(a * k for a in g)

    def length(self, g):
        return sum(abs(a) for a in g)

    def commutes(self, g, h):
        return True

    def enumerate(self, max_len):
        out = [e for e in itertools.product(range(-max_len, max_len + 1),
                                            repeat=self.rank)
               if sum(abs(a) for a in e) <= max_len]
        out.sort(key=self.sort_key)
        return out

    def sort_key(self, g):
        return (self.length(g), g)

    def to_str(self, g):
        parts = [n if e == 1 else f"{n}^{e}"
                 for n, e in zip(self.gen_names, g) if e]
        return "*".join(parts) if parts else "1"

    def __eq__(self, other):
        return (isinstance(other, FreeAbelianGroup) and self.rank == other.rank
                and self.gen_names == other.gen_names)

    def __hash__(self):
        return hash(("ab", self.rank, self.gen_names))

    def __repr__(self):
        return f"freeabelian({self.rank})"


class FreeGroup:
    kind = "freegroup"

    def __init__(self, rank, names=None):
        if rank < 1:
            raise NCDiophError("rank must be >= 1")
        self.rank = rank
        self.gen_names = tuple(names) if names else tuple(
            chr(ord("a") + k) for k in range(rank))
        if len(self.gen_names) != rank:
            raise NCDiophError("need one name per generator")
        self.identity = ()

    def gen(self, name):
        return (self.gen_names.index(name) + 1,)

    def canonical(self, word):
        out = []
        for letter in word:
            if out and out[-1] == -letter:
                out.pop()
            else:
                out.append(letter)
        return tuple(out)

    def multiply(self, g, h):
        return self.canonical(g + h)

    def invert(self, g):
        return tuple(-letter for letter in reversed(g))

    def power(self, g, k):
        if k < 0:
            return self.power(self.invert(g), -k)
        out = self.identity
        for _ in range(k):
            out = self.multiply(out, g)
        return out

    def length(self, g):
        return len(g)

    def commutes(self, g, h):
        return self.multiply(g, h) == self.multiply(h, g)

    def enumerate(self, max_len):
        """All reduced words of length <= max_len, shortlex by letter rank."""
        letters = [k for k in range(1, self.rank + 1)] + \
                  [-k for k in range(1, self.rank + 1)]
        letters.sort(key=_letter_rank)
        out = [()]
        frontier = [()]
        for _ in range(max_len):
            new = []
            for w in frontier:
                for letter in letters:
                    if w and w[-1] == -letter:
                        continue
                    new.append(w + (letter,))
            out.extend(new)
            frontier = new
        out.sort(key=self.sort_key)
        return out

    def sort_key(self, g):
        return (len(g), tuple(_letter_rank(x) for x in g))

    def root(self, g):
        """Primitive root r with g = r^k (k >= 1); generates the centralizer of g != 1."""
        if not g:
            raise NCDiophError("the identity has no root")
        conj = []
        core = list(g)
        while len(core) >= 2 and core[0] == -core[-1]:
            conj.append(core[0])
            core = core[1:-1]
        n = len(core)
        for period in range(1, n + 1):
            if n % period:
                continue
            if all(core[i] == core[i % period] for i in range(n)):
                base = tuple(conj) + tuple(core[:period]) + \
                    self.invert(tuple(conj))
                return self.canonical(base)
        raise AssertionError("unreachable: every word has a period")

    def to_str(self, g):
        if not g:
            return "1"
        return "*".join(
            (self.gen_names[gen - 1] if e == 1 else f"{self.gen_names[gen - 1]}^{e}")
            for gen, e in _word_runs(g))

    def __eq__(self, other):
        return (isinstance(other, FreeGroup) and self.rank == other.rank
                and self.gen_names == other.gen_names)

    def __hash__(self):
        return hash(("free", self.rank, self.gen_names))

    def __repr__(self):
        return f"freegroup({self.rank})"


class Raag:
    """Right-angled Artin group on named generators with commutation edges.

    ``edges`` is an iterable of generator-name pairs.  The normal form is the
    lexicographically least word (letter order a < a^-1 < b < ...) among the
    commutation-equivalent geodesics, computed by full cancellation followed
    by the greedy trace normal form.  Equality of elements is therefore
    decidable by tuple comparison.
    """

    kind = "raag"

    def __init__(self, names, edges):
        self.gen_names = tuple(names)
        if len(set(self.gen_names)) != len(self.gen_names):
            raise NCDiophError("duplicate generator names")
        self.rank = len(self.gen_names)
        idx = {n: k + 1 for k, n in enumerate(self.gen_names)}
        self.edges = frozenset(
            frozenset((idx[a], idx[b])) for a, b in edges)
        for e in self.edges:
            if len(e) != 2:
                raise NCDiophError("self-loops are not allowed")
        self.identity = ()

    def _gens_commute(self, p, q):
        return p != q and frozenset((p, q)) in self.edges

    def _letters_commute(self, x, y):
        return self._gens_commute(abs(x), abs(y))

    def gen(self, name):
        return (self.gen_names.index(name) + 1,)

    def _cancel(self, word):
        w = list(word)
        changed = True
        while changed:
            changed = False
            n = len(w)
            for i in range(n):
                for j in range(i + 1, n):
                    if w[j] == -w[i] and all(
                            self._letters_commute(w[k], w[i])
                            for k in range(i + 1, j)):
                        del w[j]
                        del w[i]
                        changed = True
                        break
                    if abs(w[j]) == abs(w[i]):
                        break  # same generator blocks further moves of w[i]
                    if not self._letters_commute(w[i], w[j]):
                        break
                if changed:
                    break
        return w

    def canonical(self, word):
        w = self._cancel(word)
        out = []
        while w:
            # letters movable to the front: everything before them commutes
            best = None
            for i, x in enumerate(w):
                if all(self._letters_commute(w[k], x) for k in range(i)):
                    if best is None or _letter_rank(x) < _letter_rank(w[best]):
                        best = i
            out.append(w.pop(best))
        return tuple(out)

    def multiply(self, g, h):
        return self.canonical(tuple(g) + tuple(h))

    def invert(self, g):
        return self.canonical(tuple(-x for x in reversed(g)))

    def power(self, g, k):
        if k < 0:
            return self.power(self.invert(g), -k)
        out = self.identity
        for _ in range(k):
            out = self.multiply(out, g)
        return out

    def length(self, g):
        return len(g)

    def commutes(self, g, h):
        return self.multiply(g, h) == self.multiply(h, g)

    def enumerate(self, max_len):
        letters = [k for k in range(1, self.rank + 1)] + \
                  [-k for k in range(1, self.rank + 1)]
        seen = set()
        frontier = {()}
        seen.add(())
        for _ in range(max_len):
            new = set()
            for w in frontier:
                for letter in letters:
                    g = self.canonical(w + (letter,))
                    if len(g) <= max_len and g not in seen:
                        seen.add(g)
                        new.add(g)
            frontier = new
        out = sorted(seen, key=self.sort_key)
        return out

    def sort_key(self, g):
        return (len(g), tuple(_letter_rank(x) for x in g))

    def to_str(self, g):
        if not g:
            return "1"
        return "*".join(
            (self.gen_names[gen - 1] if e == 1 else f"{self.gen_names[gen - 1]}^{e}")
            for gen, e in _word_runs(g))

    def __eq__(self, other):
        return (isinstance(other, Raag) and self.gen_names == other.gen_names
                and self.edges == other.edges)

    def __hash__(self):
        return hash(("raag", self.gen_names, self.edges))

    def __repr__(self):
        idx = {k + 1: n for k, n in enumerate(self.gen_names)}
        edges = sorted(tuple(sorted(e)) for e in self.edges)
        etxt = ",".join(f"{a}-{b}" for a, b in edges)
        return f"raag({self.rank}; {etxt})"


class GroupAlgebra:
    def __init__(self, coeffs, group):
        self.coeffs = coeffs
        self.group = group
        self.zero = GroupAlgElement(self, {})
        self.one = GroupAlgElement(self, {group.identity: coeffs.one})

    def from_group(self, g):
        return GroupAlgElement(self, {self.group.canonical(g): self.coeffs.one})

    def from_scalar(self, c):
        return GroupAlgElement(self, {self.group.identity: c} if c else {})

    def from_int(self, n):
        return self.from_scalar(self.coeffs.from_int(n))

    def monomial(self, g, coeff=None):
        coeff = self.coeffs.one if coeff is None else coeff
        return GroupAlgElement(self, {self.group.canonical(g): coeff} if coeff else {})

    def element(self, terms):
        return GroupAlgElement(self, {g: c for g, c in terms.items() if c})

    def __eq__(self, other):
        return (isinstance(other, GroupAlgebra) and self.coeffs == other.coeffs
                and self.group == other.group)

    def __hash__(self):
        return hash((self.coeffs, self.group))

    def __repr__(self):
        cname = getattr(self.coeffs, "name", repr(self.coeffs))
        return f"groupalg({cname}; {self.group!r})"


class GroupAlgElement:
    __slots__ = ("algebra", "terms")

    def __init__(self, algebra, terms):
        self.algebra = algebra
        self.terms = terms

    def _coerce(self, other):
        if isinstance(other, GroupAlgElement):
            if other.algebra != self.algebra:
                raise StructureMismatchError("elements of different group algebras")
            return other
        if isinstance(other, int):
            return self.algebra.from_int(other)
        coeffs = self.algebra.coeffs
        if hasattr(coeffs, "contains") and coeffs.contains(other):
            return self.algebra.from_scalar(other)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        terms = dict(self.terms)
        for g, c in o.terms.items():
            s = terms.get(g)
            if s is None:
                terms[g] = c
            else:
                s = s + c
                if s:
                    terms[g] = s
                else:
                    del terms[g]
        return GroupAlgElement(self.algebra, terms)

    __radd__ = __add__

    def __neg__(self):
        return GroupAlgElement(self.algebra, {g: -c for g, c in self.terms.items()})

    def __sub__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is None else self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is None else o + (-self)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        group = self.algebra.group
        out = {}
        for g1, c1 in self.terms.items():
            for g2, c2 in o.terms.items():
                g = group.multiply(g1, g2)
                c = c1 * c2
                s = out.get(g)
                if s is None:
                    if c:
                        out[g] = c
                else:
                    s = s + c
                    if s:
                        out[g] = s
                    else:
                        del out[g]
        return GroupAlgElement(self.algebra, out)

    __rmul__ = __mul__

    def __pow__(self, n):
        if n < 0:
            raise NCDiophError("negative power of a group-algebra element")
        out = self.algebra.one
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def __eq__(self, other):
        if isinstance(other, GroupAlgElement):
            return self.algebra == other.algebra and self.terms == other.terms
        o = self._coerce(other)
        return o is not None and self.terms == o.terms

    def __hash__(self):
        return hash((self.algebra, frozenset(self.terms.items())))

    def __bool__(self):
        return bool(self.terms)

    def support(self):
        return set(self.terms)

    def sorted_terms(self):
        key = self.algebra.group.sort_key
        return sorted(self.terms.items(), key=lambda gc: key(gc[0]))

    def __str__(self):
        if not self.terms:
            return "0"
        coeffs = self.algebra.coeffs
        group = self.algebra.group
        field_like = hasattr(coeffs, "is_finite")
        chunks = []
        for g, c in self.sorted_terms():
            neg = field_like and _display_negative(coeffs, c)
            mag = -c if neg else c
            ctxt = coeffs.scalar_str(mag) if hasattr(coeffs, "scalar_str") else str(mag)
            if any(s in ctxt[1:] for s in "+-"):
                ctxt = f"({ctxt})"
            if g == group.identity:
                body = ctxt
            elif mag == coeffs.one:
                body = group.to_str(g)
            else:
                body = ctxt + "*" + group.to_str(g)
            chunks.append(("-" if neg else "+", body))
        sign, body = chunks[0]
        out = ("-" if sign == "-" else "") + body
        for sign, body in chunks[1:]:
            out += sign + body
        return out

    def __repr__(self):
        return f"<{self.algebra!r}: {self}>"


def ga_arith(op, f, g):
    if not isinstance(f, GroupAlgElement) or not isinstance(g, GroupAlgElement):
        raise StructureMismatchError("ga_arith expects two group-algebra elements")
    if f.algebra != g.algebra:
        raise StructureMismatchError("elements of different group algebras")
    if op == "+":
        return f + g
    if op == "-":
        return f - g
    if op == "*":
        return f * g
    raise NCDiophError(f"unknown op {op!r}")


def commutes_in_algebra(u, g):
    """True iff u*g - g*u = 0 in the group algebra (g a group element)."""
    ghat = u.algebra.from_group(g)
    return u * ghat == ghat * u


def laurent_type_hypotheses(group, g):
    """Check the shipped instances against the centralizer hypotheses.

    Returns (status, basis) where status is "verified" or "unverified" and
    basis, when known, is a free-abelian basis of the centralizer of g.
    """
    g = group.canonical(g)
    if isinstance(group, FreeGroup):
        if g == group.identity:
            return "unverified", None  # centralizer is the whole free group
        return "verified", [group.root(g)]
    if isinstance(group, FreeAbelianGroup):
        return "verified", [group.gen(n) for n in group.gen_names]
    if isinstance(group, Raag):
        present = {abs(x) for x in g}
        if present == set(range(1, group.rank + 1)):
            return "verified", None  # free abelian by the centralizer theorem
        return "unverified", None
    return "unverified", None


@dataclass
class CentralizerReport:
    ball_size: int
    commuting: list
    cycle_support: list
    algebra_matches_group: bool
    hypotheses: str


def centralizer_support_check(algebra, g, m):
    """Exhaustively verify, on supports drawn from the length-<= m ball, that
    an element of the group algebra commutes with g iff its support lies in
    the group centralizer of g.

    ``u*g = g*u`` forces conjugation by g to permute the support of u; a
    nontrivial permutation cycle inside the ball would produce a commuting u
    supported on non-commuting group elements.  The check therefore computes
    all conjugation cycles contained in the ball and compares them with the
    elementwise-commuting part of the ball.
    """
    group = algebra.group
    g = group.canonical(g)
    status, _basis = laurent_type_hypotheses(group, g)
    ball = group.enumerate(m)
    ball_set = set(ball)
    ginv = group.invert(g)

    def sigma(h):
        return group.multiply(group.multiply(ginv, h), g)

    commuting = [h for h in ball if group.commutes(g, h)]
    cycle_support = []
    for h in ball:
        seen = {h}
        cur = h
        for _ in range(len(ball)):
            cur = sigma(cur)
            if cur == h:
                cycle_support.append(h)
                break
            if cur not in ball_set or cur in seen:
                break
            seen.add(cur)
    matches = set(cycle_support) == set(commuting)
    return CentralizerReport(
        ball_size=len(ball),
        commuting=sorted(commuting, key=group.sort_key),
        cycle_support=sorted(cycle_support, key=group.sort_key),
        algebra_matches_group=matches,
        hypotheses=status,
    )


def _solve_integer_combination(basis, target):
    """Solve sum_i e_i * basis_i = target over the integers (exponent vectors)."""
    rows = len(basis)
    cols = len(target)
    # rational Gaussian elimination on the transposed system
    mat = [[rat(basis[r][c]) for r in range(rows)] + [rat(target[c])]
           for c in range(cols)]
    pivots = []
    rank = 0
    for col in range(rows):
        piv = next((r for r in range(rank, cols) if mat[r][col]), None)
        if piv is None:
            continue
        mat[rank], mat[piv] = mat[piv], mat[rank]
        inv = 1 / mat[rank][col]
        mat[rank] = [x * inv for x in mat[rank]]
        for r in range(cols):
            if r != rank and mat[r][col]:
                factor = mat[r][col]
                mat[r] = [x - factor * y for x, y in zip(mat[r], mat[rank])]
        pivots.append(col)
        rank += 1
    for r in range(rank, cols):
        if mat[r][rows]:
            return None
    sol = [0] * rows
    for r, col in enumerate(pivots):
        v = mat[r][rows]
        if v.denominator != 1:
            return None
        sol[col] = int(v.numerator)
    return tuple(sol)


def express_in_basis(group, basis, h):
    """Exponent vector e with prod basis_i^{e_i} = h, or NotInDomainError."""
    h = group.canonical(h)
    basis = [group.canonical(b) for b in basis]
    for b1, b2 in itertools.combinations(basis, 2):
        if not group.commutes(b1, b2):
            raise NCDiophError("basis elements must commute pairwise")
    if isinstance(group, FreeAbelianGroup):
        e = _solve_integer_combination(basis, h)
        if e is not None:
            return e
        raise NotInDomainError(f"{group.to_str(h)} is outside the span of the basis")
    if isinstance(group, FreeGroup) and len(basis) == 1:
        r = basis[0]
        if h == group.identity:
            return (0,)
        if len(h) % len(r) == 0:
            k = len(h) // len(r)
            if group.power(r, k) == h:
                return (k,)
            if group.power(r, -k) == h:
                return (-k,)
        raise NotInDomainError(
            f"{group.to_str(h)} is not a power of {group.to_str(r)}")
    # generic bounded search; adequate at desk scale
    bounds = [max(1, group.length(h)) // max(1, group.length(b)) + 1 for b in basis]
    for exps in itertools.product(*[range(-b, b + 1) for b in bounds]):
        acc = group.identity
        for b, e in zip(basis, exps):
            acc = group.multiply(acc, group.power(b, e))
        if acc == h:
            return exps
    raise NotInDomainError(f"{group.to_str(h)} is outside the generated abelian group")


def default_laurent_ring(coeffs, basis):
    names = ("s",) if len(basis) == 1 else tuple(f"s{k+1}" for k in range(len(basis)))
    return PolynomialRing(coeffs, names, laurent=True)


def laurent_iso(u, basis, ring=None):
    """Ring isomorphism from the span of a free-abelian centralizer basis onto
    Laurent polynomials: the j-th basis element maps to the j-th variable.
    """
    algebra = u.algebra
    if ring is None:
        ring = default_laurent_ring(algebra.coeffs, basis)
    if ring.nvars != len(basis) or not ring.laurent:
        raise NCDiophError("ring must be a Laurent ring with one variable per basis element")
    terms = {}
    for g, c in u.terms.items():
        e = express_in_basis(algebra.group, basis, g)
        terms[tuple(e)] = c
    return Poly(ring, terms)


def laurent_iso_inverse(poly, algebra, basis):
    group = algebra.group
    basis = [group.canonical(b) for b in basis]
    terms = {}
    for e, c in poly.terms.items():
        acc = group.identity
        for b, k in zip(basis, e):
            acc = group.multiply(acc, group.power(b, k))
        prev = terms.get(acc)
        terms[acc] = c if prev is None else prev + c
    return algebra.element(terms)
