"""Structure-agnostic equation systems: term trees, parsing, serialization,
evaluation and solution checking.

A term is a tree over ``{+, -, *, neg, ^n, constant, variable}``; an equation
system is a structure descriptor plus a list of terms, each understood as
``term = 0``.  The same IR serves systems over the integers, a field, a
(Laurent) polynomial ring, a free associative algebra and a group algebra,
which is what lets the reductions translate systems between structures.

Text grammar (UTF-8)::

    structure <desc>;
    <equation>; <equation>; ...

with ``desc`` one of ``int``, ``field(Q|Fp|Qi)``, ``poly(<field>; t1,..,tn)``,
``laurent(<field>; t1,..,tn)``, ``freealg(<field>; g1,..,gk)``,
``groupalg(<field>; freegroup(k)|freeabelian(r)|raag(k; i-j,..))``.
Equations use ``+ - * ^`` and parentheses; variables are ``x<digits>`` (plus
the ``_y<digits>`` names the compiler generates); everything else is resolved
against the structure: generator names, integer/rational literals, ``n mod p``
residues, ``i`` and ``<digits>i`` imaginary literals, and ``g^-k`` inverse
powers where the structure has inverses.  Operator-applied-to-constants
subtrees are folded into constants at parse time, which keeps
``parse(serialize(s))`` structurally equal to ``s``.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass

from .errors import NCDiophError, ParseError, StructureMismatchError
from .fields import (GF, QI, QQ, Fp, GaussianRational, GaussianRationalField,
                     field_by_name, rat)
from .freealg import FreeAlgebra, NCPoly
from .groupalg import (FreeAbelianGroup, FreeGroup, GroupAlgebra,
                       GroupAlgElement, Raag)
from .polyring import Poly, PolynomialRing

# ---------------------------------------------------------------------------
# terms


@dataclass(frozen=True)
class Term:
    pass


@dataclass(frozen=True)
class Add(Term):
    left: Term
    right: Term


@dataclass(frozen=True)
class Sub(Term):
    left: Term
    right: Term


@dataclass(frozen=True)
class Mul(Term):
    left: Term
    right: Term


@dataclass(frozen=True)
class Neg(Term):
    arg: Term


@dataclass(frozen=True)
class Pow(Term):
    arg: Term
    n: int


@dataclass(frozen=True, eq=False)
class Const(Term):
    value: object

    def __eq__(self, other):
        return isinstance(other, Const) and self.value == other.value

    def __hash__(self):
        return hash(("const",))


@dataclass(frozen=True)
class Var(Term):
    name: str


def variables_of(term, acc=None):
    """Variable names in first-occurrence (depth-first, left-to-right) order."""
    if acc is None:
        acc = []
    if isinstance(term, Var):
        if term.name not in acc:
            acc.append(term.name)
    elif isinstance(term, (Add, Sub, Mul)):
        variables_of(term.left, acc)
        variables_of(term.right, acc)
    elif isinstance(term, Neg):
        variables_of(term.arg, acc)
    elif isinstance(term, Pow):
        variables_of(term.arg, acc)
    return acc


def evaluate(term, assignment, structure):
    """Exact value of a term under an assignment, in the given structure."""
    if isinstance(term, Const):
        return term.value
    if isinstance(term, Var):
        try:
            return assignment[term.name]
        except KeyError:
            raise NCDiophError(f"no binding for variable {term.name}") from None
    if isinstance(term, Add):
        return evaluate(term.left, assignment, structure) + \
            evaluate(term.right, assignment, structure)
    if isinstance(term, Sub):
        return evaluate(term.left, assignment, structure) - \
            evaluate(term.right, assignment, structure)
    if isinstance(term, Mul):
        return evaluate(term.left, assignment, structure) * \
            evaluate(term.right, assignment, structure)
    if isinstance(term, Neg):
        return -evaluate(term.arg, assignment, structure)
    if isinstance(term, Pow):
        return evaluate(term.arg, assignment, structure) ** term.n
    raise NCDiophError(f"unknown term node {term!r}")


def check_solution(system, assignment):
    """True iff every equation of the system evaluates to zero."""
    zero = system.structure.zero
    for eq in system.equations:
        if evaluate(eq, assignment, system.structure) != zero:
            return False
    return True


# ---------------------------------------------------------------------------
# structures


class IntStructure:
    zero = 0
    one = 1
    text = "int"

    def from_int(self, n):
        return n

    def contains(self, x):
        return isinstance(x, int)

    def atom(self, name):
        return None

    def inv_atom_power(self, name, k):
        raise NCDiophError("the integers have no invertible generators")

    def scalar(self, lit):
        kind = lit[0]
        if kind == "int":
            return lit[1]
        raise NCDiophError(f"literal {lit!r} is not an integer")

    def element_str(self, x):
        return str(x)

    def __eq__(self, other):
        return isinstance(other, IntStructure)

    def __hash__(self):
        return hash("int")

    def __repr__(self):
        return "structure:int"


class GaussianIntStructure:
    """Z[i] = Z + iZ; internal source structure for the Laurent pipelines."""

    zero = GaussianRational(0)
    one = GaussianRational(1)
    text = "gaussian-int"

    def from_int(self, n):
        return GaussianRational(n)

    def contains(self, x):
        return (isinstance(x, GaussianRational)
                and x.re.denominator == 1 and x.im.denominator == 1)

    def atom(self, name):
        return GaussianRational(0, 1) if name == "i" else None

    def inv_atom_power(self, name, k):
        raise NCDiophError("Z[i] has no invertible generators in the grammar")

    def scalar(self, lit):
        kind = lit[0]
        if kind == "int":
            return GaussianRational(lit[1])
        if kind == "imag":
            return GaussianRational(0, lit[1])
        raise NCDiophError(f"literal {lit!r} is not a Gaussian integer")

    def element_str(self, x):
        return str(x)

    def __eq__(self, other):
        return isinstance(other, GaussianIntStructure)

    def __hash__(self):
        return hash("zi")

    def __repr__(self):
        return "structure:gaussian-int"


class FieldStructure:
    def __init__(self, field):
        self.field = field
        self.zero = field.zero
        self.one = field.one
        self.text = f"field({field.name})"

    def from_int(self, n):
        return self.field.from_int(n)

    def contains(self, x):
        return self.field.contains(x)

    def atom(self, name):
        if name == "i" and isinstance(self.field, GaussianRationalField):
            return self.field.i
        return None

    def inv_atom_power(self, name, k):
        raise NCDiophError("fields have no generators to invert in the grammar")

    def scalar(self, lit):
        return _scalar_in_field(self.field, lit)

    def element_str(self, x):
        return self.field.scalar_str(x)

    def __eq__(self, other):
        return isinstance(other, FieldStructure) and self.field == other.field

    def __hash__(self):
        return hash(("field", self.field))

    def __repr__(self):
        return f"structure:{self.text}"


def _scalar_in_field(field, lit):
    kind = lit[0]
    if kind == "int":
        return field.from_int(lit[1])
    if kind == "rat":
        num, den = lit[1], lit[2]
        if field is QQ or isinstance(field, type(QQ)):
            return rat(num, den)
        if isinstance(field, GaussianRationalField):
            return GaussianRational(rat(num, den))
        raise NCDiophError(f"rational literal {num}/{den} in {field.name}")
    if kind == "mod":
        r, p = lit[1], lit[2]
        if getattr(field, "p", None) != p:
            raise NCDiophError(f"residue literal mod {p} in {field.name}")
        return Fp(r, p)
    if kind == "imag":
        if isinstance(field, GaussianRationalField):
            return GaussianRational(0, lit[1])
        raise NCDiophError(f"imaginary literal in {field.name}")
    raise NCDiophError(f"unknown literal {lit!r}")


class PolyStructure:
    def __init__(self, ring):
        self.ring = ring
        self.zero = ring.zero
        self.one = ring.one
        head = "laurent" if ring.laurent else "poly"
        self.text = f"{head}({ring.field.name}; {','.join(ring.names)})"

    def from_int(self, n):
        return self.ring.from_int(n)

    def contains(self, x):
        return isinstance(x, Poly) and x.ring == self.ring

    def atom(self, name):
        if name in self.ring.names:
            return self.ring.gen(self.ring.names.index(name))
        if name == "i" and isinstance(self.ring.field, GaussianRationalField):
            return self.ring.from_scalar(self.ring.field.i)
        return None

    def inv_atom_power(self, name, k):
        if not self.ring.laurent:
            raise NCDiophError(f"negative power of {name} outside a Laurent ring")
        if name not in self.ring.names:
            raise NCDiophError(f"{name!r} is not a ring variable")
        exps = [0] * self.ring.nvars
        exps[self.ring.names.index(name)] = k
        return self.ring.monomial(exps)

    def scalar(self, lit):
        return self.ring.from_scalar(_scalar_in_field(self.ring.field, lit))

    def element_str(self, x):
        return str(x)

    def __eq__(self, other):
        return isinstance(other, PolyStructure) and self.ring == other.ring

    def __hash__(self):
        return hash(("polystruct", self.ring))

    def __repr__(self):
        return f"structure:{self.text}"


class FreeAlgStructure:
    def __init__(self, algebra):
        self.algebra = algebra
        self.zero = algebra.zero
        self.one = algebra.one
        field = algebra.coeffs
        self.text = f"freealg({field.name}; {','.join(algebra.letters)})"

    def from_int(self, n):
        return self.algebra.from_int(n)

    def contains(self, x):
        return isinstance(x, NCPoly) and x.algebra == self.algebra

    def atom(self, name):
        if name in self.algebra.index:
            return self.algebra.letter(name)
        if name == "i" and isinstance(self.algebra.coeffs, GaussianRationalField):
            return self.algebra.from_scalar(self.algebra.coeffs.i)
        return None

    def inv_atom_power(self, name, k):
        raise NCDiophError("free-algebra generators are not invertible")

    def scalar(self, lit):
        return self.algebra.from_scalar(_scalar_in_field(self.algebra.coeffs, lit))

    def element_str(self, x):
        return str(x)

    def __eq__(self, other):
        return isinstance(other, FreeAlgStructure) and self.algebra == other.algebra

    def __hash__(self):
        return hash(("freealgstruct", self.algebra))

    def __repr__(self):
        return f"structure:{self.text}"


def _group_text(group):
    if isinstance(group, FreeGroup):
        return f"freegroup({group.rank})"
    if isinstance(group, FreeAbelianGroup):
        return f"freeabelian({group.rank})"
    if isinstance(group, Raag):
        idx = {k + 1: n for k, n in enumerate(group.gen_names)}
        edges = sorted(tuple(sorted(e)) for e in group.edges)
        return f"raag({group.rank}; {','.join(f'{a}-{b}' for a, b in edges)})"
    raise NCDiophError(f"unknown group {group!r}")


class GroupAlgStructure:
    def __init__(self, algebra):
        self.algebra = algebra
        self.zero = algebra.zero
        self.one = algebra.one
        field = algebra.coeffs
        self.text = f"groupalg({field.name}; {_group_text(algebra.group)})"

    def from_int(self, n):
        return self.algebra.from_int(n)

    def contains(self, x):
        return isinstance(x, GroupAlgElement) and x.algebra == self.algebra

    def atom(self, name):
        group = self.algebra.group
        if name in group.gen_names:
            return self.algebra.from_group(group.gen(name))
        if name == "i" and isinstance(self.algebra.coeffs, GaussianRationalField):
            return self.algebra.from_scalar(self.algebra.coeffs.i)
        return None

    def inv_atom_power(self, name, k):
        group = self.algebra.group
        if name not in group.gen_names:
            raise NCDiophError(f"{name!r} is not a group generator")
        return self.algebra.from_group(group.power(group.gen(name), k))

    def scalar(self, lit):
        return self.algebra.from_scalar(_scalar_in_field(self.algebra.coeffs, lit))

    def element_str(self, x):
        return str(x)

    def __eq__(self, other):
        return isinstance(other, GroupAlgStructure) and self.algebra == other.algebra

    def __hash__(self):
        return hash(("groupalgstruct", self.algebra))

    def __repr__(self):
        return f"structure:{self.text}"


# ---------------------------------------------------------------------------
# systems


class EqSystem:
    def __init__(self, structure, equations, variables=None):
        self.structure = structure
        self.equations = list(equations)
        for eq in self.equations:
            _validate_term(structure, eq)
        if variables is None:
            acc = []
            for eq in self.equations:
                variables_of(eq, acc)
            variables = acc
        self.variables = tuple(variables)

    def __eq__(self, other):
        return (isinstance(other, EqSystem) and self.structure == other.structure
                and self.equations == other.equations)

    def __repr__(self):
        return f"EqSystem({self.structure.text}, {len(self.equations)} equations)"


def _validate_term(structure, term):
    if isinstance(term, Const):
        if not structure.contains(term.value):
            raise StructureMismatchError(
                f"constant {term.value!r} does not belong to {structure.text}")
    elif isinstance(term, (Add, Sub, Mul)):
        _validate_term(structure, term.left)
        _validate_term(structure, term.right)
    elif isinstance(term, (Neg,)):
        _validate_term(structure, term.arg)
    elif isinstance(term, Pow):
        if term.n < 0:
            raise NCDiophError("negative exponent on a term")
        _validate_term(structure, term.arg)
    elif not isinstance(term, Var):
        raise NCDiophError(f"unknown term node {term!r}")


# ---------------------------------------------------------------------------
# lexer / parser

_TOKEN_RE = re.compile(
    r"(?P<WS>\s+)"
    r"|(?P<COMMENT>#[^\n]*)"
    r"|(?P<RATIONAL>\d+/\d+)"
    r"|(?P<IMAG>\d+i\b)"
    r"|(?P<NUMBER>\d+)"
    r"|(?P<IDENT>[A-Za-z_][A-Za-z0-9_]*)"
    r"|(?P<OP>[-+*^();=,])"
)

_VAR_RE = re.compile(r"(x\d+|_y\d+)$")


def _tokenize(text):
    tokens = []
    line, col = 1, 1
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            raise ParseError(f"unexpected character {text[pos]!r}", line, col)
        kind = m.lastgroup
        value = m.group()
        if kind not in ("WS", "COMMENT"):
            tokens.append((kind, value, line, col))
        newlines = value.count("\n")
        if newlines:
            line += newlines
            col = len(value) - value.rfind("\n")
        else:
            col += len(value)
        pos = m.end()
    tokens.append(("EOF", "", line, col))
    return tokens


class _Parser:
    def __init__(self, text):
        self.tokens = _tokenize(text)
        self.pos = 0

    def peek(self):
        return self.tokens[self.pos]

    def next(self):
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def error(self, message):
        kind, value, line, col = self.peek()
        shown = value or kind
        raise ParseError(f"{message}, found {shown!r}", line, col)

    def expect(self, kind, value=None):
        tok = self.peek()
        if tok[0] != kind or (value is not None and tok[1] != value):
            self.error(f"expected {value or kind}")
        return self.next()

    def accept(self, kind, value=None):
        tok = self.peek()
        if tok[0] == kind and (value is None or tok[1] == value):
            return self.next()
        return None

    # -- structure descriptors ------------------------------------------

    def parse_structure(self):
        head = self.expect("IDENT")[1]
        if head == "int":
            return IntStructure()
        if head == "field":
            self.expect("OP", "(")
            name = self.expect("IDENT")[1]
            self.expect("OP", ")")
            return FieldStructure(field_by_name(name))
        if head in ("poly", "laurent"):
            self.expect("OP", "(")
            field = field_by_name(self.expect("IDENT")[1])
            self.expect("OP", ";")
            names = self._name_list()
            self.expect("OP", ")")
            return PolyStructure(PolynomialRing(field, names, laurent=head == "laurent"))
        if head == "freealg":
            self.expect("OP", "(")
            field = field_by_name(self.expect("IDENT")[1])
            self.expect("OP", ";")
            names = self._name_list()
            self.expect("OP", ")")
            return FreeAlgStructure(FreeAlgebra(field, names))
        if head == "groupalg":
            self.expect("OP", "(")
            field = field_by_name(self.expect("IDENT")[1])
            self.expect("OP", ";")
            group = self._parse_group()
            self.expect("OP", ")")
            return GroupAlgStructure(GroupAlgebra(field, group))
        self.error(f"unknown structure {head!r}")

    def _name_list(self):
        names = [self.expect("IDENT")[1]]
        while self.accept("OP", ","):
            names.append(self.expect("IDENT")[1])
        return names

    def _parse_group(self):
        head = self.expect("IDENT")[1]
        self.expect("OP", "(")
        k = int(self.expect("NUMBER")[1])
        if head == "freegroup":
            self.expect("OP", ")")
            return FreeGroup(k)
        if head == "freeabelian":
            self.expect("OP", ")")
            return FreeAbelianGroup(k)
        if head == "raag":
            edges = []
            if self.accept("OP", ";"):
                while True:
                    a = int(self.expect("NUMBER")[1])
                    self.expect("OP", "-")
                    b = int(self.expect("NUMBER")[1])
                    if not (1 <= a <= k and 1 <= b <= k):
                        self.error("edge endpoint out of range")
                    edges.append((chr(ord("a") + a - 1), chr(ord("a") + b - 1)))
                    if not self.accept("OP", ","):
                        break
            self.expect("OP", ")")
            return Raag(tuple(chr(ord("a") + j) for j in range(k)), edges)
        self.error(f"unknown group kind {head!r}")

    # -- expressions -----------------------------------------------------

    def parse_expr(self, structure):
        term = self.parse_term(structure)
        while True:
            if self.accept("OP", "+"):
                term = _fold(structure, Add(term, self.parse_term(structure)))
            elif self.accept("OP", "-"):
                term = _fold(structure, Sub(term, self.parse_term(structure)))
            else:
                return term

    def parse_term(self, structure):
        factor = self.parse_factor(structure)
        while self.accept("OP", "*"):
            factor = _fold(structure, Mul(factor, self.parse_factor(structure)))
        return factor

    def parse_factor(self, structure):
        if self.accept("OP", "-"):
            return _fold(structure, Neg(self.parse_factor(structure)))
        return self.parse_power(structure)

    def parse_power(self, structure):
        atom, atom_name = self.parse_atom(structure)
        if self.accept("OP", "^"):
            negative = bool(self.accept("OP", "-"))
            n = int(self.expect("NUMBER")[1])
            if negative:
                if atom_name is None:
                    self.error("negative exponents require a generator base")
                try:
                    return Const(structure.inv_atom_power(atom_name, -n))
                except NCDiophError as exc:
                    self.error(str(exc))
            return _fold(structure, Pow(atom, n))
        return atom

    def parse_atom(self, structure):
        """Returns (term, generator_name_or_None); the name enables ``g^-k``."""
        if self.accept("OP", "("):
            inner = self.parse_expr(structure)
            self.expect("OP", ")")
            return inner, None
        kind, value, line, col = self.peek()
        if kind == "NUMBER":
            self.next()
            if self.peek()[0] == "IDENT" and self.peek()[1] == "mod":
                self.next()
                p = int(self.expect("NUMBER")[1])
                lit = ("mod", int(value), p)
            else:
                lit = ("int", int(value))
            return self._scalar_const(structure, lit, line, col), None
        if kind == "RATIONAL":
            self.next()
            num, den = value.split("/")
            return self._scalar_const(structure, ("rat", int(num), int(den)),
                                      line, col), None
        if kind == "IMAG":
            self.next()
            return self._scalar_const(structure, ("imag", int(value[:-1])),
                                      line, col), None
        if kind == "IDENT":
            if _VAR_RE.match(value):
                self.next()
                return Var(value), None
            atom = structure.atom(value)
            if atom is None:
                self.error(f"unknown symbol {value!r} in {structure.text}")
            self.next()
            return Const(atom), value
        self.error("expected a term")

    def _scalar_const(self, structure, lit, line, col):
        try:
            return Const(structure.scalar(lit))
        except NCDiophError as exc:
            raise ParseError(str(exc), line, col) from None

    def parse_equation(self, structure):
        lhs = self.parse_expr(structure)
        self.expect("OP", "=")
        rhs = self.parse_expr(structure)
        if isinstance(rhs, Const) and rhs.value == structure.zero:
            return lhs
        if isinstance(lhs, Const) and lhs.value == structure.zero:
            return rhs
        return Sub(lhs, rhs)

    def parse_system(self):
        self.expect("IDENT", "structure")
        structure = self.parse_structure()
        self.expect("OP", ";")
        equations = []
        while self.peek()[0] != "EOF":
            if self.accept("OP", ";"):
                continue
            equations.append(self.parse_equation(structure))
            if self.peek()[0] != "EOF":
                self.expect("OP", ";")
        return EqSystem(structure, equations)


def _all_const(*terms):
    return all(isinstance(t, Const) for t in terms)


def _fold(structure, node):
    """Collapse operator nodes whose children are all constants."""
    if isinstance(node, (Add, Sub, Mul)) and _all_const(node.left, node.right):
        return Const(evaluate(node, {}, structure))
    if isinstance(node, (Neg,)) and _all_const(node.arg):
        return Const(evaluate(node, {}, structure))
    if isinstance(node, Pow) and _all_const(node.arg):
        return Const(evaluate(node, {}, structure))
    return node


def parse_system(text):
    return _Parser(text).parse_system()


def parse_structure(text):
    parser = _Parser(text)
    structure = parser.parse_structure()
    parser.expect("EOF")
    return structure


def parse_expression(structure, text):
    parser = _Parser(text)
    term = parser.parse_expr(structure)
    parser.expect("EOF")
    return term


# ---------------------------------------------------------------------------
# serialization

_ATOMIC_RE = re.compile(r"-?[A-Za-z0-9_/]+(\^-?\d+)?$")


def _const_prec(txt):
    if _ATOMIC_RE.match(txt) and not txt.startswith("-"):
        return 4
    # '-' not after '^' or '+' anywhere means sum-level printing
    for k, ch in enumerate(txt):
        if ch == "+":
            return 1
        if ch == "-" and (k == 0 or txt[k - 1] != "^"):
            return 1
    return 2 if "*" in txt or "^" in txt else 4


def _term_text(structure, term):
    """Returns (text, precedence): 1 sums, 2 products, 3 neg/pow, 4 atoms."""
    if isinstance(term, Var):
        return term.name, 4
    if isinstance(term, Const):
        txt = structure.element_str(term.value)
        return txt, _const_prec(txt)
    if isinstance(term, (Add, Sub)):
        op = "+" if isinstance(term, Add) else "-"
        lt, lp = _term_text(structure, term.left)
        rt, rp = _term_text(structure, term.right)
        if lp < 1:
            lt = f"({lt})"
        if rp <= 1:
            rt = f"({rt})"
        return f"{lt}{op}{rt}", 1
    if isinstance(term, Mul):
        lt, lp = _term_text(structure, term.left)
        rt, rp = _term_text(structure, term.right)
        if lp < 2:
            lt = f"({lt})"
        if rp <= 2:
            rt = f"({rt})"
        return f"{lt}*{rt}", 2
    if isinstance(term, Neg):
        at, ap = _term_text(structure, term.arg)
        if ap < 3:
            at = f"({at})"
        return f"-{at}", 3
    if isinstance(term, Pow):
        at, ap = _term_text(structure, term.arg)
        if ap < 4:
            at = f"({at})"
        return f"{at}^{term.n}", 3
    raise NCDiophError(f"unknown term node {term!r}")


def serialize_term(structure, term):
    return _term_text(structure, term)[0]


def serialize_system(system):
    lines = [f"structure {system.structure.text};"]
    for eq in system.equations:
        lines.append(f"{serialize_term(system.structure, eq)} = 0;")
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# JSON mirror of the AST


def term_to_json(structure, term):
    if isinstance(term, Var):
        return {"op": "var", "name": term.name}
    if isinstance(term, Const):
        return {"op": "const", "value": structure.element_str(term.value)}
    if isinstance(term, Add):
        return {"op": "add", "args": [term_to_json(structure, term.left),
                                      term_to_json(structure, term.right)]}
    if isinstance(term, Sub):
        return {"op": "sub", "args": [term_to_json(structure, term.left),
                                      term_to_json(structure, term.right)]}
    if isinstance(term, Mul):
        return {"op": "mul", "args": [term_to_json(structure, term.left),
                                      term_to_json(structure, term.right)]}
    if isinstance(term, Neg):
        return {"op": "neg", "arg": term_to_json(structure, term.arg)}
    if isinstance(term, Pow):
        return {"op": "pow", "n": term.n, "arg": term_to_json(structure, term.arg)}
    raise NCDiophError(f"unknown term node {term!r}")


def term_from_json(structure, data):
    op = data["op"]
    if op == "var":
        return Var(data["name"])
    if op == "const":
        term = parse_expression(structure, data["value"])
        if not isinstance(term, Const):
            raise NCDiophError(f"constant text {data['value']!r} is not constant")
        return term
    if op in ("add", "sub", "mul"):
        left = term_from_json(structure, data["args"][0])
        right = term_from_json(structure, data["args"][1])
        return {"add": Add, "sub": Sub, "mul": Mul}[op](left, right)
    if op == "neg":
        return Neg(term_from_json(structure, data["arg"]))
    if op == "pow":
        return Pow(term_from_json(structure, data["arg"]), data["n"])
    raise NCDiophError(f"unknown op {op!r}")


def system_to_json(system):
    return {
        "structure": system.structure.text,
        "variables": list(system.variables),
        "equations": [term_to_json(system.structure, eq) for eq in system.equations],
    }


def system_from_json(data):
    structure = parse_structure(data["structure"])
    equations = [term_from_json(structure, eq) for eq in data["equations"]]
    return EqSystem(structure, equations, variables=data.get("variables"))


def system_to_json_text(system):
    return json.dumps(system_to_json(system), indent=2, sort_keys=True) + "\n"
