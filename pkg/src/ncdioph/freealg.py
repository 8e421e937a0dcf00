"""Free associative algebra over a coefficient ring: canonical noncommutative
polynomials, width/degree, retractions and the equation combinators.

Words are tuples of letter indices; an element is ``{word: coefficient}``
with no zero coefficients, i.e. the normal form is unique.  The canonical
word order is (length, lexicographic).  Coefficients may come from any of the
field descriptors or from a :class:`~ncdioph.polyring.PolynomialRing` (the
"indeterminate coefficients" used by the bounded solvers); all that is
required of them is exact ``+ - *`` and truthiness.
"""

from __future__ import annotations

from .errors import NCDiophError, StructureMismatchError
from .polyring import _display_negative


class FreeAlgebra:
    def __init__(self, coeffs, letters):
        letters = tuple(letters)
        if not letters:
            raise NCDiophError("a free algebra needs at least one generator")
        if len(set(letters)) != len(letters):
            raise NCDiophError("duplicate generator names")
        self.coeffs = coeffs
        self.letters = letters
        self.index = {name: k for k, name in enumerate(letters)}
        self.zero = NCPoly(self, {})
        self.one = NCPoly(self, {(): coeffs.one})

    def letter(self, name):
        if name not in self.index:
            raise NCDiophError(f"{name!r} is not a generator")
        return NCPoly(self, {(self.index[name],): self.coeffs.one})

    def word(self, names):
        w = tuple(self.index[n] for n in names)
        return NCPoly(self, {w: self.coeffs.one})

    def monomial(self, word, coeff=None):
        coeff = self.coeffs.one if coeff is None else coeff
        return NCPoly(self, {tuple(word): coeff} if coeff else {})

    def from_scalar(self, c):
        return NCPoly(self, {(): c} if c else {})

    def from_int(self, n):
        return self.from_scalar(self.coeffs.from_int(n))

    def element(self, terms):
        return NCPoly(self, {w: c for w, c in terms.items() if c})

    def word_str(self, word):
        if not word:
            return "1"
        parts = []
        run_letter, run_len = word[0], 1
        for idx in word[1:]:
            if idx == run_letter:
                run_len += 1
            else:
                parts.append((run_letter, run_len))
                run_letter, run_len = idx, 1
        parts.append((run_letter, run_len))
        return "*".join(self.letters[i] if k == 1 else f"{self.letters[i]}^{k}"
                        for i, k in parts)

    def __eq__(self, other):
        return (isinstance(other, FreeAlgebra) and self.coeffs == other.coeffs
                and self.letters == other.letters)

    def __hash__(self):
        return hash((self.coeffs, self.letters))

    def __repr__(self):
        cname = getattr(self.coeffs, "name", repr(self.coeffs))
        return f"freealg({cname}; {','.join(self.letters)})"


def _scalar_text(coeffs, c):
    txt = coeffs.scalar_str(c) if hasattr(coeffs, "scalar_str") else str(c)
    if any(s in txt[1:] for s in "+-"):
        txt = f"({txt})"
    return txt


class NCPoly:
    __slots__ = ("algebra", "terms")

    def __init__(self, algebra, terms):
        self.algebra = algebra
        self.terms = terms

    def _coerce(self, other):
        if isinstance(other, NCPoly):
            if other.algebra != self.algebra:
                raise StructureMismatchError("elements of different free algebras")
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
        for w, c in o.terms.items():
            s = terms.get(w)
            if s is None:
                terms[w] = c
            else:
                s = s + c
                if s:
                    terms[w] = s
                else:
                    del terms[w]
        return NCPoly(self.algebra, terms)

    __radd__ = __add__

    def __neg__(self):
        return NCPoly(self.algebra, {w: -c for w, c in self.terms.items()})

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
        out = {}
        for w1, c1 in self.terms.items():
            for w2, c2 in o.terms.items():
                w = w1 + w2
                c = c1 * c2
                s = out.get(w)
                if s is None:
                    if c:
                        out[w] = c
                else:
                    s = s + c
                    if s:
                        out[w] = s
                    else:
                        del out[w]
        return NCPoly(self.algebra, out)

    __rmul__ = __mul__

    def __pow__(self, n):
        if n < 0:
            raise NCDiophError("negative power in a free algebra")
        out = self.algebra.one
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def __eq__(self, other):
        if isinstance(other, NCPoly):
            return self.algebra == other.algebra and self.terms == other.terms
        o = self._coerce(other)
        return o is not None and self.terms == o.terms

    def __hash__(self):
        return hash((self.algebra, frozenset(self.terms.items())))

    def __bool__(self):
        return bool(self.terms)

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda wc: (len(wc[0]), wc[0]))

    def __str__(self):
        if not self.terms:
            return "0"
        coeffs = self.algebra.coeffs
        field_like = hasattr(coeffs, "is_finite")
        chunks = []
        for w, c in self.sorted_terms():
            neg = field_like and _display_negative(coeffs, c)
            mag = -c if neg else c
            if not w:
                body = _scalar_text(coeffs, mag)
            elif mag == coeffs.one:
                body = self.algebra.word_str(w)
            else:
                body = _scalar_text(coeffs, mag) + "*" + self.algebra.word_str(w)
            chunks.append(("-" if neg else "+", body))
        sign, body = chunks[0]
        out = ("-" if sign == "-" else "") + body
        for sign, body in chunks[1:]:
            out += sign + body
        return out

    def __repr__(self):
        return f"<{self.algebra!r}: {self}>"


def nc_arith(op, f, g):
    if not isinstance(f, NCPoly) or not isinstance(g, NCPoly):
        raise StructureMismatchError("nc_arith expects two free-algebra elements")
    if f.algebra != g.algebra:
        raise StructureMismatchError("elements of different free algebras")
    if op == "+":
        return f + g
    if op == "-":
        return f - g
    if op == "*":
        return f * g
    raise NCDiophError(f"unknown op {op!r}")


def width(f):
    """Number of monomials in the normal form; width(0) = 0."""
    return len(f.terms)


def degree(f):
    """Maximal word length in the normal form; degree(0) = 0 by convention."""
    if not f.terms:
        return 0
    return max(len(w) for w in f.terms)


def is_unit(f):
    """Units of a free associative algebra are the nonzero scalars.

    Returns (True, inverse) or (False, None).
    """
    if len(f.terms) != 1:
        return False, None
    [(w, c)] = f.terms.items()
    if w:
        return False, None
    return True, f.algebra.from_scalar(f.algebra.coeffs.inv(c))


def retract(f, keep):
    """Retraction onto the subalgebra generated by ``keep``: other letters -> 0.

    The result lives in the free algebra over ``keep`` (original letter order).
    """
    keep = [name for name in f.algebra.letters if name in set(keep)]
    sub = FreeAlgebra(f.algebra.coeffs, keep) if keep else None
    if sub is None:
        raise NCDiophError("retract target alphabet is empty")
    keep_idx = {f.algebra.index[n]: k for k, n in enumerate(keep)}
    terms = {}
    for w, c in f.terms.items():
        if all(i in keep_idx for i in w):
            nw = tuple(keep_idx[i] for i in w)
            prev = terms.get(nw)
            terms[nw] = c if prev is None else prev + c
    return sub.element(terms)


def disjoin(f, g):
    """Single equation equivalent to ``f = 0 or g = 0``: the product f*g.

    Valid because the free algebra has no zero divisors.
    """
    return f * g


def conjoin(f, g, letter):
    """Single equation equivalent to ``f = 0 and g = 0``: f^2 + a*g^2.

    ``letter`` must name a free generator: the two summands then have even
    resp. odd top degree, so they cannot cancel unless both vanish.
    """
    algebra = f.algebra
    if letter not in algebra.index:
        raise NCDiophError(f"{letter!r} is not a free generator of {algebra!r}")
    a = algebra.letter(letter)
    return f * f + a * (g * g)
