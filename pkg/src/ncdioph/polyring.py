"""Commutative multivariate and Laurent polynomial arithmetic, plus the
Chebyshev / Pell-curve apparatus used by the integer-encoding reductions.

Polynomials are stored sparsely as ``{exponent_vector: coefficient}`` with no
zero coefficients, so structural equality is mathematical equality.  The
canonical iteration order is graded lexicographic (grading = sum of
exponents, which may be negative in a Laurent ring).

The Pell curve in question is ``X^2 - (t^2 - 1) Y^2 = 1``.  Over a ring of
characteristic zero its polynomial solutions are exactly the signed Chebyshev
pairs ``(+-T_n, +-U_{n-1})``; over a Laurent ring containing ``i`` there is a
two-parameter family obtained from products ``(t + e*u)^m ((1 - d*i*u)/t)^n``
where ``u^2 = t^2 - 1``.  Both are produced and checked here.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import NCDiophError, NotInDomainError, StructureMismatchError
from .fields import QI, GaussianRationalField


class PolynomialRing:
    """Descriptor for K[t1..tn] (``laurent=False``) or K[t1..tn, inverses]."""

    def __init__(self, field, names, laurent=False):
        names = tuple(names)
        if not names:
            raise NCDiophError("a polynomial ring needs at least one variable")
        if len(set(names)) != len(names):
            raise NCDiophError("duplicate ring variable names")
        self.field = field
        self.names = names
        self.laurent = laurent
        self.nvars = len(names)
        self.zero = Poly(self, {})
        self.one = Poly(self, {(0,) * self.nvars: field.one})

    def gen(self, i=0):
        exps = [0] * self.nvars
        exps[i] = 1
        return Poly(self, {tuple(exps): self.field.one})

    def monomial(self, exps, coeff=None):
        exps = tuple(exps)
        if len(exps) != self.nvars:
            raise NCDiophError("exponent vector has wrong length")
        if not self.laurent and any(e < 0 for e in exps):
            raise NCDiophError("negative exponent outside a Laurent ring")
        coeff = self.field.one if coeff is None else coeff
        return Poly(self, {exps: coeff} if coeff else {})

    def from_scalar(self, c):
        return Poly(self, {(0,) * self.nvars: c} if c else {})

    def from_int(self, n):
        return self.from_scalar(self.field.from_int(n))

    def poly(self, terms):
        return Poly(self, {e: c for e, c in terms.items() if c})

    def __eq__(self, other):
        return (isinstance(other, PolynomialRing) and self.field == other.field
                and self.names == other.names and self.laurent == other.laurent)

    def __hash__(self):
        return hash((self.field, self.names, self.laurent))

    def __repr__(self):
        kind = "laurent" if self.laurent else "poly"
        return f"{kind}({self.field.name}; {','.join(self.names)})"


def _display_negative(field, c):
    if isinstance(field, GaussianRationalField):
        return c.re < 0 or (not c.re and c.im < 0)
    if field.is_finite:
        return False
    return c < 0


class Poly:
    __slots__ = ("ring", "terms")

    def __init__(self, ring, terms):
        self.ring = ring
        self.terms = terms

    def _coerce(self, other):
        if isinstance(other, Poly):
            if other.ring != self.ring:
                raise StructureMismatchError(f"{other.ring!r} vs {self.ring!r}")
            return other
        if isinstance(other, int):
            return self.ring.from_int(other)
        if self.ring.field.contains(other):
            return self.ring.from_scalar(other)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        terms = dict(self.terms)
        for e, c in o.terms.items():
            s = terms.get(e)
            if s is None:
                terms[e] = c
            else:
                s = s + c
                if s:
                    terms[e] = s
                else:
                    del terms[e]
        return Poly(self.ring, terms)

    __radd__ = __add__

    def __neg__(self):
        return Poly(self.ring, {e: -c for e, c in self.terms.items()})

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
        if self.ring.nvars == 1:
            return self._mul_univar(o)
        out = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in o.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                c = c1 * c2
                s = out.get(e)
                if s is None:
                    out[e] = c
                else:
                    s = s + c
                    if s:
                        out[e] = s
                    else:
                        del out[e]
        return Poly(self.ring, out)

    __rmul__ = __mul__

    def _mul_univar(self, o):
        # dense convolution; the hot path for the Chebyshev/Pell checks
        if not self.terms or not o.terms:
            return self.ring.zero
        amin = min(e for (e,) in self.terms)
        amax = max(e for (e,) in self.terms)
        bmin = min(e for (e,) in o.terms)
        bmax = max(e for (e,) in o.terms)
        A = [None] * (amax - amin + 1)
        for (e,), c in self.terms.items():
            A[e - amin] = c
        B = [None] * (bmax - bmin + 1)
        for (e,), c in o.terms.items():
            B[e - bmin] = c
        acc = [None] * (len(A) + len(B) - 1)
        for i, ca in enumerate(A):
            if ca is None:
                continue
            for j, cb in enumerate(B):
                if cb is None:
                    continue
                k = i + j
                prev = acc[k]
                acc[k] = ca * cb if prev is None else prev + ca * cb
        base = amin + bmin
        return Poly(self.ring, {(base + k,): c for k, c in enumerate(acc)
                                if c is not None and c})

    def __pow__(self, n):
        if n < 0:
            raise NCDiophError("negative polynomial power")
        out = self.ring.one
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.ring == other.ring and self.terms == other.terms
        o = self._coerce(other)
        return o is not None and self.terms == o.terms

    def __hash__(self):
        return hash((self.ring, frozenset(self.terms.items())))

    def __bool__(self):
        return bool(self.terms)

    def is_constant(self):
        return all(all(x == 0 for x in e) for e in self.terms)

    def constant_value(self):
        if not self.terms:
            return self.ring.field.zero
        [(e, c)] = self.terms.items()
        if any(x != 0 for x in e):
            raise NCDiophError("not a constant polynomial")
        return c

    def degree(self):
        """Maximal total degree; 0 for the zero polynomial by convention."""
        if not self.terms:
            return 0
        return max(sum(e) for e in self.terms)

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda ec: (sum(ec[0]), ec[0]), reverse=True)

    def evaluate(self, values):
        """Exact value at a point given as ``{name: field element}``."""
        field = self.ring.field
        point = [values[name] for name in self.ring.names]
        total = field.zero
        for e, c in self.terms.items():
            v = c
            for x, k in zip(point, e):
                if k:
                    v = v * x ** k
            total = total + v
        return total

    def value_at_one(self):
        one = self.ring.field.one
        return self.evaluate({name: one for name in self.ring.names})

    def __str__(self):
        if not self.terms:
            return "0"
        field = self.ring.field
        chunks = []
        for e, c in self.sorted_terms():
            neg = _display_negative(field, c)
            mag = -c if neg else c
            varparts = []
            for name, k in zip(self.ring.names, e):
                if k == 0:
                    continue
                varparts.append(name if k == 1 else f"{name}^{k}")
            if not varparts:
                body = field.scalar_str(mag)
                if any(s in body[1:] for s in "+-"):
                    body = f"({body})"
            elif mag == field.one:
                body = "*".join(varparts)
            else:
                ctxt = field.scalar_str(mag)
                if any(s in ctxt[1:] for s in "+-"):
                    ctxt = f"({ctxt})"
                body = ctxt + "*" + "*".join(varparts)
            chunks.append(("-" if neg else "+", body))
        sign, body = chunks[0]
        out = ("-" if sign == "-" else "") + body
        for sign, body in chunks[1:]:
            out += sign + body
        return out

    def __repr__(self):
        return f"<{self.ring!r}: {self}>"


def poly_arith(op, f, g):
    """Spec-surface arithmetic dispatch with explicit mismatch errors."""
    if not isinstance(f, Poly) or not isinstance(g, Poly):
        raise StructureMismatchError("poly_arith expects two polynomials")
    if f.ring != g.ring:
        raise StructureMismatchError(f"{f.ring!r} vs {g.ring!r}")
    if op == "+":
        return f + g
    if op == "-":
        return f - g
    if op == "*":
        return f * g
    raise NCDiophError(f"unknown poly op {op!r}")


def _require_univar(f):
    if f.ring.nvars != 1:
        raise NCDiophError("operation requires a one-variable ring")


def chebyshev(ring, kind, n):
    """n-th Chebyshev polynomial of the first (T) or second (U) kind in ``ring``.

    T_0 = 1, T_1 = t; U_0 = 1, U_1 = 2t; F_{n+1} = 2t F_n - F_{n-1} for both.
    Integer coefficients are mapped through the ring's field, so this is
    defined in any characteristic.
    """
    if kind not in ("T", "U"):
        raise NCDiophError("kind must be 'T' or 'U'")
    if n < 0:
        raise NCDiophError("n must be >= 0")
    t = ring.gen(0)
    two_t = t + t
    prev = ring.one
    cur = t if kind == "T" else two_t
    if n == 0:
        return prev
    for _ in range(n - 1):
        prev, cur = cur, two_t * cur - prev
    return cur


def chebyshev_pair(ring, n):
    """The Pell solution (T_n, U_{n-1}), with U_{-1} = 0."""
    x = chebyshev(ring, "T", n)
    y = ring.zero if n == 0 else chebyshev(ring, "U", n - 1)
    return x, y


def pell_check(X, Y):
    """True iff X^2 - (t^2 - 1) Y^2 = 1 exactly."""
    if X.ring != Y.ring:
        raise StructureMismatchError("Pell pair must live in one ring")
    _require_univar(X)
    ring = X.ring
    t = ring.gen(0)
    return X * X - (t * t - ring.one) * (Y * Y) == ring.one


@dataclass
class PellEnumeration:
    pairs: list
    complete: bool
    note: str


def pell_enumerate(ring, n_max):
    """All sign-variant Chebyshev pairs (+-T_n, +-U_{n-1}) for n = 0..n_max.

    In characteristic zero these are exactly the polynomial points of the Pell
    curve; in characteristic p the enumeration is still a set of solutions but
    no completeness is claimed, and the result says so.
    """
    _require_univar(ring.one)
    if n_max < 0:
        raise NCDiophError("n_max must be >= 0")
    pairs = []
    seen = set()
    x, y = ring.one, ring.zero
    t = ring.gen(0)
    two_t = t + t
    px, py = None, None
    for n in range(n_max + 1):
        if n == 1:
            px, py = x, y
            x, y = t, ring.one
        elif n > 1:
            x, px = two_t * x - px, x
            y, py = two_t * y - py, y
        for sx, sy in ((x, y), (x, -y), (-x, y), (-x, -y)):
            key = (frozenset(sx.terms.items()), frozenset(sy.terms.items()))
            if key not in seen:
                seen.add(key)
                pairs.append((sx, sy))
    if ring.field.char == 0:
        return PellEnumeration(pairs, True, "complete: char-0 solution set")
    return PellEnumeration(pairs, False,
                           "inclusion only, completeness is a char-0 statement")


class QuadExt:
    """Element P + u*Q of the quadratic extension with u^2 = t^2 - 1."""

    __slots__ = ("P", "Q")

    def __init__(self, P, Q):
        if P.ring != Q.ring:
            raise StructureMismatchError("components must share a ring")
        _require_univar(P)
        self.P = P
        self.Q = Q

    def __mul__(self, other):
        ring = self.P.ring
        t = ring.gen(0)
        usq = t * t - ring.one
        return QuadExt(self.P * other.P + usq * (self.Q * other.Q),
                       self.P * other.Q + other.P * self.Q)

    def __pow__(self, n):
        ring = self.P.ring
        out = QuadExt(ring.one, ring.zero)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def pair(self):
        return self.P, self.Q


def laurent_pell_family(ring, m, n, eps, delta):
    """Pell solution (X, Y) = components of (t + eps*u)^m * ((1 - delta*i*u)/t)^n.

    ``ring`` must be a one-variable Laurent ring; the second factor requires
    the imaginary unit, so ``n > 0`` demands a field containing i.  With
    ``n = 0`` the result is a signed Chebyshev pair and has coefficients in
    the prime field of the rationals.
    """
    if not ring.laurent:
        raise NCDiophError("laurent_pell_family needs a Laurent ring")
    _require_univar(ring.one)
    if m < 0 or n < 0:
        raise NCDiophError("m, n must be >= 0")
    if eps not in (1, -1) or delta not in (1, -1):
        raise NCDiophError("eps, delta must be +-1")
    field = ring.field
    if n > 0 and not isinstance(field, GaussianRationalField):
        raise NotInDomainError(
            "family with n > 0 requires i in the coefficient field; "
            "without i only the n = 0 (Chebyshev) branch exists")
    t = ring.gen(0)
    base1 = QuadExt(t, ring.from_int(eps))
    acc = base1 ** m
    if n:
        tinv = ring.monomial((-1,))
        base2 = QuadExt(tinv, tinv * ring.from_scalar(-field.i if delta == 1 else field.i))
        acc = acc * (base2 ** n)
    return acc.pair()


def divide_by_t_minus_one(f):
    """Exact quotient f / (t - 1) in a one-variable (Laurent) ring.

    Raises :class:`NotInDomainError` when f(1) != 0, i.e. when the division
    leaves a remainder.
    """
    _require_univar(f)
    ring = f.ring
    if not f:
        return ring.zero
    emin = min(e for (e,) in f.terms)
    emax = max(e for (e,) in f.terms)
    if emin < 0 and not ring.laurent:  # defensive; cannot happen
        raise NCDiophError("negative exponent outside Laurent ring")
    shift = min(emin, 0)
    dense = [ring.field.zero] * (emax - shift + 1)
    for (e,), c in f.terms.items():
        dense[e - shift] = c
    # synthetic division of sum dense[k] t^k by (t - 1)
    quot = [None] * (len(dense) - 1)
    carry = ring.field.zero
    for k in range(len(dense) - 1, 0, -1):
        carry = carry + dense[k]
        quot[k - 1] = carry
    if carry + dense[0] != ring.field.zero:
        raise NotInDomainError("difference does not vanish at t = 1")
    return Poly(ring, {(k + shift,): c for k, c in enumerate(quot) if c})


def value_at_one_equiv(f, g):
    """Decide f(1) = g(1); on success return the witness h with f - g = h*(t-1)."""
    if f.ring != g.ring:
        raise StructureMismatchError("operands must share a ring")
    _require_univar(f)
    d = f - g
    try:
        return True, divide_by_t_minus_one(d)
    except NotInDomainError:
        return False, None


def ideal_membership(f):
    """Membership of f in the ideal generated by the non-leading variables.

    For f in K[t1..tn] (n >= 2) decides f in <t2,..,tn> -- equivalently
    f(t1, 0,..,0) = 0 -- and on success returns witnesses {j: z_j} with
    f = sum_j t_j z_j (j ranging over 1-based indices 2..n), obtained by
    splitting each term at its first variable among t2..tn.
    """
    ring = f.ring
    if ring.nvars < 2:
        raise NCDiophError("ideal membership needs at least two variables")
    if ring.laurent:
        raise NCDiophError("ideal membership is defined in the ordinary ring")
    witnesses = {}
    for e, c in f.terms.items():
        j = next((k for k in range(1, ring.nvars) if e[k] > 0), None)
        if j is None:
            return False, None
        reduced = list(e)
        reduced[j] -= 1
        witnesses.setdefault(j, {})[tuple(reduced)] = c
    return True, {j + 1: Poly(ring, terms) for j, terms in sorted(witnesses.items())}


def project_to_first_variable(f, target_ring):
    """Image of f under t1 -> t1, t_j -> 0 (j >= 2), landing in ``target_ring``."""
    if target_ring.nvars != 1:
        raise NCDiophError("target must be a one-variable ring")
    terms = {}
    for e, c in f.terms.items():
        if all(x == 0 for x in e[1:]):
            terms[(e[0],)] = c
    return Poly(target_ring, terms)


def embed_polynomial(f, big_ring):
    """Inclusion K[t1..tk] -> K[t1..tn] by padding exponent vectors with zeros."""
    if big_ring.names[:f.ring.nvars] != f.ring.names:
        raise StructureMismatchError("source variables must be a prefix of the target's")
    if f.ring.field != big_ring.field:
        raise StructureMismatchError("coefficient fields differ")
    pad = (0,) * (big_ring.nvars - f.ring.nvars)
    return Poly(big_ring, {e + pad: c for e, c in f.terms.items()})
