"""Exact field and sparse multivariate polynomial arithmetic with a Gröbner engine.

Coefficients are exact: `fractions.Fraction` over the rationals, reduced
residues in ``[0, p)`` over a prime field.  Monomials are exponent tuples,
polynomials sparse term maps.  All values are immutable after construction and
every operation is a pure function, so concurrent use on distinct values is
safe.
"""

from __future__ import annotations

import re as _re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, Sequence

from .errors import ParseError, ResourceLimitError, RingMismatchError

Monomial = tuple[int, ...]

# ---------------------------------------------------------------------------
# resource guards


@dataclass
class ResourceLimits:
    """Guards for the Gröbner engine; trip with an error, never a wrong answer."""

    max_basis: int = 10_000
    max_degree: int = 64
    max_terms: int = 100_000


LIMITS = ResourceLimits()


def set_limits(max_basis: int | None = None, max_degree: int | None = None,
               max_terms: int | None = None) -> None:
    """Adjust the process-wide resource guards (CLI startup hook)."""
    if max_basis is not None:
        LIMITS.max_basis = max_basis
    if max_degree is not None:
        LIMITS.max_degree = max_degree
    if max_terms is not None:
        LIMITS.max_terms = max_terms


def _check_degree(deg: int) -> None:
    if deg > LIMITS.max_degree:
        raise ResourceLimitError(
            f"polynomial degree {deg} exceeds guard {LIMITS.max_degree}")


def _check_terms(n: int) -> None:
    if n > LIMITS.max_terms:
        raise ResourceLimitError(
            f"term count {n} exceeds guard {LIMITS.max_terms}")


# ---------------------------------------------------------------------------
# ground fields


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    for q in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % q == 0:
            return n == q
    # deterministic Miller-Rabin, valid far beyond any desk-scale modulus
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


@dataclass(frozen=True)
class FieldDescriptor:
    """The ground field: rationals when ``p`` is None, else the prime field F_p."""

    p: int | None = None

    def __post_init__(self):
        if self.p is not None and not _is_prime(self.p):
            raise ValueError(f"modulus {self.p} is not prime")

    @property
    def is_rational(self) -> bool:
        return self.p is None

    @property
    def char(self) -> int:
        return 0 if self.p is None else self.p

    def __str__(self) -> str:
        return "Q" if self.p is None else f"F{self.p}"

    # -- scalar arithmetic ---------------------------------------------------

    def scalar(self, value) -> "Scalar":
        """Coerce an int or Fraction into a canonical scalar of this field."""
        if self.p is None:
            return value if isinstance(value, Fraction) else Fraction(value)
        if isinstance(value, Fraction):
            den = value.denominator % self.p
            if den == 0:
                raise ParseError(
                    f"coefficient {value} not invertible mod {self.p}")
            return value.numerator * pow(den, -1, self.p) % self.p
        return value % self.p

    def zero(self):
        return Fraction(0) if self.p is None else 0

    def one(self):
        return Fraction(1) if self.p is None else 1

    def add(self, a, b):
        return a + b if self.p is None else (a + b) % self.p

    def sub(self, a, b):
        return a - b if self.p is None else (a - b) % self.p

    def mul(self, a, b):
        return a * b if self.p is None else a * b % self.p

    def neg(self, a):
        return -a if self.p is None else (-a) % self.p

    def inv(self, a):
        if self.p is None:
            if a == 0:
                raise ZeroDivisionError("inverse of 0")
            return 1 / a
        if a % self.p == 0:
            raise ZeroDivisionError("inverse of 0")
        return pow(a, -1, self.p)

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def elements(self) -> Iterator:
        """All field elements; only available over a prime field."""
        if self.p is None:
            raise ValueError("rational field is not enumerable")
        return iter(range(self.p))


Scalar = object  # Fraction over Q, int over F_p

QQ = FieldDescriptor()


def GF(p: int) -> FieldDescriptor:
    return FieldDescriptor(p)


# ---------------------------------------------------------------------------
# monomial orders


def _drl_key(m: Monomial):
    return (sum(m), tuple(-e for e in reversed(m)))


class MonomialOrder:
    """A monomial order given by a sort key; larger key = larger monomial."""

    name = "degrevlex"

    def key(self, m: Monomial):
        return _drl_key(m)

    def __repr__(self):
        return f"<order {self.name}>"

    def __eq__(self, other):
        return isinstance(other, MonomialOrder) and self.name == other.name

    def __hash__(self):
        return hash(self.name)


class LexOrder(MonomialOrder):
    name = "lex"

    def key(self, m: Monomial):
        return m


class BlockOrder(MonomialOrder):
    """Eliminates the first ``n_front`` variables: front block dominates."""

    def __init__(self, n_front: int):
        self.n_front = n_front
        self.name = f"block{n_front}"

    def key(self, m: Monomial):
        k = self.n_front
        return (_drl_key(m[:k]), _drl_key(m[k:]))


DEGREVLEX = MonomialOrder()
LEX = LexOrder()


def monomial_mul(a: Monomial, b: Monomial) -> Monomial:
    return tuple(x + y for x, y in zip(a, b))


def monomial_divides(a: Monomial, b: Monomial) -> bool:
    return all(x <= y for x, y in zip(a, b))


def monomial_div(a: Monomial, b: Monomial) -> Monomial:
    return tuple(x - y for x, y in zip(a, b))


def monomial_lcm(a: Monomial, b: Monomial) -> Monomial:
    return tuple(max(x, y) for x, y in zip(a, b))


def monomials_up_to(arity: int, maxdeg: int) -> Iterator[Monomial]:
    """All exponent tuples of total degree <= maxdeg, by degree then degrevlex."""
    for deg in range(maxdeg + 1):
        batch = sorted(_compositions(arity, deg), key=_drl_key, reverse=True)
        yield from batch


def _compositions(arity: int, deg: int) -> Iterator[Monomial]:
    if arity == 0:
        if deg == 0:
            yield ()
        return
    for first in range(deg, -1, -1):
        for rest in _compositions(arity - 1, deg - first):
            yield (first,) + rest


# ---------------------------------------------------------------------------
# polynomials


class Polynomial:
    """Sparse multivariate polynomial over an exact field.

    Treat instances as immutable; arithmetic returns fresh objects.
    """

    __slots__ = ("arity", "field", "terms")

    def __init__(self, arity: int, field: FieldDescriptor,
                 terms: dict[Monomial, Scalar] | None = None):
        self.arity = arity
        self.field = field
        self.terms = terms if terms is not None else {}

    # -- constructors ---------------------------------------------------------

    @staticmethod
    def zero(arity: int, field: FieldDescriptor) -> "Polynomial":
        return Polynomial(arity, field)

    @staticmethod
    def constant(value, arity: int, field: FieldDescriptor) -> "Polynomial":
        c = field.scalar(value)
        if c == field.zero():
            return Polynomial(arity, field)
        return Polynomial(arity, field, {(0,) * arity: c})

    @staticmethod
    def one(arity: int, field: FieldDescriptor) -> "Polynomial":
        return Polynomial.constant(1, arity, field)

    @staticmethod
    def variable(i: int, arity: int, field: FieldDescriptor) -> "Polynomial":
        exps = [0] * arity
        exps[i] = 1
        return Polynomial(arity, field, {tuple(exps): field.one()})

    @staticmethod
    def monomial(m: Monomial, field: FieldDescriptor, coeff=1) -> "Polynomial":
        c = field.scalar(coeff)
        if c == field.zero():
            return Polynomial(len(m), field)
        return Polynomial(len(m), field, {m: c})

    # -- basic queries ---------------------------------------------------------

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def total_degree(self) -> int:
        """Degree of the zero polynomial is -1 by convention."""
        return max((sum(m) for m in self.terms), default=-1)

    def constant_term(self):
        return self.terms.get((0,) * self.arity, self.field.zero())

    def leading_monomial(self, order: MonomialOrder = DEGREVLEX) -> Monomial:
        if self.is_zero:
            raise ValueError("zero polynomial has no leading monomial")
        return max(self.terms, key=order.key)

    def leading_coeff(self, order: MonomialOrder = DEGREVLEX):
        return self.terms[self.leading_monomial(order)]

    def _same_ring(self, other: "Polynomial") -> None:
        if self.arity != other.arity or self.field != other.field:
            raise RingMismatchError(
                f"ring mismatch: {self.arity} vars over {self.field} vs "
                f"{other.arity} vars over {other.field}")

    # -- arithmetic -------------------------------------------------------------

    def __add__(self, other: "Polynomial") -> "Polynomial":
        self._same_ring(other)
        f = self.field
        terms = dict(self.terms)
        zero = f.zero()
        for m, c in other.terms.items():
            v = f.add(terms.get(m, zero), c)
            if v == zero:
                terms.pop(m, None)
            else:
                terms[m] = v
        return Polynomial(self.arity, f, terms)

    def __neg__(self) -> "Polynomial":
        f = self.field
        return Polynomial(self.arity, f,
                          {m: f.neg(c) for m, c in self.terms.items()})

    def __sub__(self, other: "Polynomial") -> "Polynomial":
        return self + (-other)

    def __mul__(self, other: "Polynomial") -> "Polynomial":
        self._same_ring(other)
        f = self.field
        zero = f.zero()
        terms: dict[Monomial, Scalar] = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = monomial_mul(m1, m2)
                v = f.add(terms.get(m, zero), f.mul(c1, c2))
                if v == zero:
                    terms.pop(m, None)
                else:
                    terms[m] = v
        if terms:
            _check_degree(max(sum(m) for m in terms))
            _check_terms(len(terms))
        return Polynomial(self.arity, f, terms)

    def scale(self, c) -> "Polynomial":
        f = self.field
        c = f.scalar(c)
        if c == f.zero():
            return Polynomial(self.arity, f)
        return Polynomial(self.arity, f,
                          {m: f.mul(v, c) for m, v in self.terms.items()})

    def mul_monomial(self, m: Monomial, coeff=None) -> "Polynomial":
        f = self.field
        c = f.one() if coeff is None else coeff
        return Polynomial(self.arity, f,
                          {monomial_mul(mm, m): f.mul(v, c)
                           for mm, v in self.terms.items()})

    def __pow__(self, n: int) -> "Polynomial":
        if n < 0:
            raise ValueError("negative exponent")
        result = Polynomial.one(self.arity, self.field)
        base = self
        while n:
            if n & 1:
                result = result * base
            base_needed = n > 1
            n >>= 1
            if base_needed and n:
                base = base * base
        return result

    def derivative(self, i: int) -> "Polynomial":
        f = self.field
        zero = f.zero()
        terms: dict[Monomial, Scalar] = {}
        for m, c in self.terms.items():
            e = m[i]
            if e == 0:
                continue
            v = f.mul(c, f.scalar(e))
            if v == zero:
                continue
            mm = list(m)
            mm[i] = e - 1
            terms[tuple(mm)] = v
        return Polynomial(self.arity, f, terms)

    def substitute(self, images: Sequence["Polynomial"]) -> "Polynomial":
        """Evaluate at polynomial images (ring morphism on generators)."""
        if len(images) != self.arity:
            raise RingMismatchError("substitution needs one image per variable")
        if not images:
            # constants into the 0-variable ring of the same field
            return Polynomial(0, self.field, dict(self.terms))
        tgt_arity = images[0].arity
        f = images[0].field
        result = Polynomial.zero(tgt_arity, f)
        powers: list[dict[int, Polynomial]] = [
            {0: Polynomial.one(tgt_arity, f)} for _ in images]
        for m, c in sorted(self.terms.items()):
            part = Polynomial.constant(c, tgt_arity, f)
            for i, e in enumerate(m):
                if e == 0:
                    continue
                cache = powers[i]
                if e not in cache:
                    best = max(k for k in cache if k <= e)
                    acc = cache[best]
                    for k in range(best + 1, e + 1):
                        acc = acc * images[i]
                        cache[k] = acc
                part = part * cache[e]
            result = result + part
        return result

    def evaluate(self, values: Sequence) -> Scalar:
        """Evaluate at field scalars."""
        f = self.field
        vals = [f.scalar(v) for v in values]
        total = f.zero()
        for m, c in self.terms.items():
            acc = c
            for i, e in enumerate(m):
                for _ in range(e):
                    acc = f.mul(acc, vals[i])
            total = f.add(total, acc)
        return total

    def extend_arity(self, new_arity: int, position_map: Sequence[int]) -> "Polynomial":
        """Re-index variables into a larger ring; old var i -> position_map[i]."""
        terms: dict[Monomial, Scalar] = {}
        for m, c in self.terms.items():
            exps = [0] * new_arity
            for i, e in enumerate(m):
                exps[position_map[i]] = e
            terms[tuple(exps)] = c
        return Polynomial(new_arity, self.field, terms)

    def restrict_arity(self, keep: Sequence[int]) -> "Polynomial":
        """Project onto a subring; every term must be supported on `keep`."""
        keepset = set(keep)
        terms: dict[Monomial, Scalar] = {}
        for m, c in self.terms.items():
            if any(e and i not in keepset for i, e in enumerate(m)):
                raise RingMismatchError("term uses a variable outside the subring")
            terms[tuple(m[i] for i in keep)] = c
        return Polynomial(len(keep), self.field, terms)

    # -- canonical form ---------------------------------------------------------

    def monic(self, order: MonomialOrder = DEGREVLEX) -> "Polynomial":
        if self.is_zero:
            return self
        return self.scale(self.field.inv(self.leading_coeff(order)))

    def key(self) -> tuple:
        return tuple(sorted(self.terms.items()))

    def __eq__(self, other) -> bool:
        return (isinstance(other, Polynomial) and self.arity == other.arity
                and self.field == other.field and self.terms == other.terms)

    def __hash__(self):
        return hash((self.arity, self.field, self.key()))

    def __repr__(self):
        return f"Polynomial({self.to_string([f'x{i}' for i in range(self.arity)])})"

    def to_string(self, names: Sequence[str]) -> str:
        """Canonical text form: degrevlex-descending terms, explicit '*' and '^'."""
        if self.is_zero:
            return "0"
        pieces = []
        for m in sorted(self.terms, key=_drl_key, reverse=True):
            c = self.terms[m]
            factors = []
            for i, e in enumerate(m):
                if e == 1:
                    factors.append(names[i])
                elif e > 1:
                    factors.append(f"{names[i]}^{e}")
            neg = False
            if self.field.is_rational and c < 0:
                neg, c = True, -c
            cs = str(c)
            if factors and cs == "1":
                body = "*".join(factors)
            elif factors:
                body = cs + "*" + "*".join(factors)
            else:
                body = cs
            pieces.append((neg, body))
        first_neg, first_body = pieces[0]
        out = ("-" if first_neg else "") + first_body
        for neg, body in pieces[1:]:
            out += (" - " if neg else " + ") + body
        return out


# ---------------------------------------------------------------------------
# parser
#
# expr   := ['-'] term (('+'|'-') term)*
# term   := factor ('*' factor)*
# factor := base ('^' nat)?
# base   := nat | nat'/'nat | name | '(' expr ')'


_TOKEN_SPEC = (("nat", r"\d+"), ("name", r"[A-Za-z_][A-Za-z0-9_]*"),
               ("op", r"[-+*^/()]"), ("ws", r"\s+"))

_TOKEN_RE = _re.compile("|".join(f"(?P<{n}>{p})" for n, p in _TOKEN_SPEC))


def _tokenize(text: str) -> list[tuple[str, str]]:
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if not m:
            raise ParseError(f"unexpected character {text[pos]!r} at {pos}")
        if m.lastgroup != "ws":
            tokens.append((m.lastgroup, m.group()))
        pos = m.end()
    return tokens


class _Parser:
    def __init__(self, tokens: list[tuple[str, str]], names: Sequence[str],
                 field: FieldDescriptor):
        self.tokens = tokens
        self.pos = 0
        self.names = list(names)
        self.index = {n: i for i, n in enumerate(names)}
        self.field = field
        self.arity = len(self.names)

    def peek(self):
        return self.tokens[self.pos] if self.pos < len(self.tokens) else (None, None)

    def take(self):
        tok = self.peek()
        self.pos += 1
        return tok

    def expect(self, value: str):
        kind, text = self.take()
        if text != value:
            raise ParseError(f"expected {value!r}, found {text!r}")

    def parse(self) -> Polynomial:
        p = self.expr()
        if self.pos != len(self.tokens):
            raise ParseError(f"trailing input at token {self.peek()[1]!r}")
        return p

    def expr(self) -> Polynomial:
        negate = False
        if self.peek() == ("op", "-"):
            self.take()
            negate = True
        p = self.term()
        if negate:
            p = -p
        while self.peek()[1] in ("+", "-"):
            op = self.take()[1]
            q = self.term()
            p = p + q if op == "+" else p - q
        return p

    def term(self) -> Polynomial:
        p = self.factor()
        while self.peek() == ("op", "*"):
            self.take()
            p = p * self.factor()
        return p

    def factor(self) -> Polynomial:
        p = self.base()
        if self.peek() == ("op", "^"):
            self.take()
            kind, text = self.take()
            if kind != "nat":
                raise ParseError("exponent must be a non-negative integer")
            p = p ** int(text)
        return p

    def base(self) -> Polynomial:
        kind, text = self.take()
        if kind == "nat":
            if self.peek() == ("op", "/"):
                self.take()
                kind2, text2 = self.take()
                if kind2 != "nat":
                    raise ParseError("denominator of a rational literal must "
                                     "be a non-negative integer")
                if int(text2) == 0:
                    raise ParseError("zero denominator in rational literal")
                value = Fraction(int(text), int(text2))
                return Polynomial.constant(self.field.scalar(value),
                                           self.arity, self.field)
            return Polynomial.constant(int(text), self.arity, self.field)
        if kind == "name":
            if text not in self.index:
                raise ParseError(f"unknown identifier {text!r}")
            return Polynomial.variable(self.index[text], self.arity, self.field)
        if (kind, text) == ("op", "("):
            p = self.expr()
            self.expect(")")
            return p
        if (kind, text) == ("op", "/"):
            raise ParseError("division only allowed inside a rational literal")
        raise ParseError(f"unexpected token {text!r}")


def poly_parse(text: str, names: Sequence[str], field: FieldDescriptor) -> Polynomial:
    """Parse the expression grammar into a canonical Polynomial."""
    return _Parser(_tokenize(text), names, field).parse()


# ---------------------------------------------------------------------------
# Gröbner bases


@dataclass(frozen=True)
class GroebnerBasis:
    """A deterministic reduced Gröbner basis (monic, auto-reduced, sorted)."""

    polys: tuple[Polynomial, ...]
    order: MonomialOrder
    reduced: bool = True

    @property
    def leading_monomials(self) -> tuple[Monomial, ...]:
        return tuple(g.leading_monomial(self.order) for g in self.polys)

    def __iter__(self):
        return iter(self.polys)

    def __len__(self):
        return len(self.polys)

    def contains_one(self) -> bool:
        return any(g.total_degree() == 0 for g in self.polys)


def normal_form(p: Polynomial, basis: Iterable[Polynomial] | GroebnerBasis,
                order: MonomialOrder | None = None) -> Polynomial:
    """Full remainder of multivariate division: no term divisible by any LT."""
    if isinstance(basis, GroebnerBasis):
        order = order or basis.order
        divisors = basis.polys
    else:
        order = order or DEGREVLEX
        divisors = tuple(g for g in basis if not g.is_zero)
    if not divisors:
        return p
    for g in divisors:
        if g.arity != p.arity or g.field != p.field:
            raise RingMismatchError("normal form: basis lives in another ring")
    f = p.field
    lts = [(g.leading_monomial(order), g.leading_coeff(order), g) for g in divisors]
    work = dict(p.terms)
    result: dict[Monomial, Scalar] = {}
    zero = f.zero()
    key = order.key
    while work:
        m = max(work, key=key)
        c = work.pop(m)
        for lm, lc, g in lts:
            if monomial_divides(lm, m):
                q = monomial_div(m, lm)
                factor = f.div(c, lc)
                for gm, gc in g.terms.items():
                    if gm == lm:
                        continue
                    mm = monomial_mul(gm, q)
                    v = f.sub(work.get(mm, zero), f.mul(factor, gc))
                    if v == zero:
                        work.pop(mm, None)
                    else:
                        work[mm] = v
                _check_terms(len(work))
                break
        else:
            result[m] = c
    return Polynomial(p.arity, f, result)


def _s_polynomial(g1: Polynomial, g2: Polynomial, order: MonomialOrder) -> Polynomial:
    lm1, lm2 = g1.leading_monomial(order), g2.leading_monomial(order)
    lcm = monomial_lcm(lm1, lm2)
    f = g1.field
    a = g1.mul_monomial(monomial_div(lcm, lm1), f.inv(g1.leading_coeff(order)))
    b = g2.mul_monomial(monomial_div(lcm, lm2), f.inv(g2.leading_coeff(order)))
    return a - b


def _update_pairs(G: list[Polynomial], lmG: list[Monomial], P: set[tuple[int, int]],
                  h: Polynomial, order: MonomialOrder):
    """Gebauer-Möller pair update on appending h to G."""
    lmh = h.leading_monomial(order)
    t = len(G)
    # drop old pairs whose lcm is strictly divisible by lm(h)
    kept = set()
    for (i, j) in P:
        lcm_ij = monomial_lcm(lmG[i], lmG[j])
        if (not monomial_divides(lmh, lcm_ij)
                or monomial_lcm(lmG[i], lmh) == lcm_ij
                or monomial_lcm(lmG[j], lmh) == lcm_ij):
            kept.add((i, j))
    P = kept
    # group candidate new pairs by lcm, keep minimal representatives
    lcm_groups: dict[Monomial, list[int]] = {}
    for i in range(t):
        lcm_groups.setdefault(monomial_lcm(lmG[i], lmh), []).append(i)
    minimal: list[Monomial] = []
    for L in sorted(lcm_groups, key=order.key):
        if all(not monomial_divides(L2, L) for L2 in minimal):
            minimal.append(L)
    for L in minimal:
        # product (coprime) criterion
        if any(monomial_lcm(lmG[i], lmh) == monomial_mul(lmG[i], lmh)
               for i in lcm_groups[L]):
            continue
        P.add((min(lcm_groups[L]), t))
    G.append(h)
    lmG.append(lmh)
    return P


def groebner(gens: Iterable[Polynomial],
             order: MonomialOrder = DEGREVLEX) -> GroebnerBasis:
    """Reduced Gröbner basis by Buchberger with Gebauer-Möller elimination.

    Output is deterministic: monic, auto-reduced, sorted by leading monomial.
    """
    gens = [g for g in gens if not g.is_zero]
    if not gens:
        return GroebnerBasis((), order)
    arity, field = gens[0].arity, gens[0].field
    for g in gens:
        if g.arity != arity or g.field != field:
            raise RingMismatchError("generators live in different rings")
    G: list[Polynomial] = []
    lmG: list[Monomial] = []
    P: set[tuple[int, int]] = set()
    for g in sorted(gens, key=lambda q: order.key(q.leading_monomial(order))):
        h = normal_form(g, G, order)
        if not h.is_zero:
            P = _update_pairs(G, lmG, P, h.monic(order), order)
    while P:
        i, j = min(P, key=lambda ij: (order.key(monomial_lcm(lmG[ij[0]], lmG[ij[1]])), ij))
        P.remove((i, j))
        s = _s_polynomial(G[i], G[j], order)
        h = normal_form(s, G, order)
        if h.is_zero:
            continue
        _check_degree(h.total_degree())
        if len(G) >= LIMITS.max_basis:
            raise ResourceLimitError(
                f"basis size exceeds guard {LIMITS.max_basis}")
        P = _update_pairs(G, lmG, P, h.monic(order), order)
    # minimalize: drop elements whose LT is divisible by another LT
    minimal: list[Polynomial] = []
    for g in sorted(G, key=lambda q: order.key(q.leading_monomial(order))):
        lm = g.leading_monomial(order)
        if all(not monomial_divides(h.leading_monomial(order), lm)
               for h in minimal):
            minimal.append(g)
    # interreduce tails
    reduced: list[Polynomial] = []
    for k, g in enumerate(minimal):
        others = minimal[:k] + minimal[k + 1:]
        reduced.append(normal_form(g, others, order).monic(order))
    reduced.sort(key=lambda q: order.key(q.leading_monomial(order)))
    return GroebnerBasis(tuple(reduced), order)


def ideal_membership(p: Polynomial, gb: GroebnerBasis) -> bool:
    return normal_form(p, gb).is_zero


def elimination_ideal(gens: Iterable[Polynomial], eliminate: Sequence[int]
                      ) -> list[Polynomial]:
    """Generators of I ∩ F[kept vars], as polynomials of the smaller ring.

    Internally permutes the ring so the eliminated block comes first and runs
    Buchberger under the block order.
    """
    gens = [g for g in gens if not g.is_zero]
    if not gens:
        return []
    arity, field = gens[0].arity, gens[0].field
    elim = sorted(set(eliminate))
    keep = [i for i in range(arity) if i not in set(elim)]
    perm = elim + keep                      # new position j holds old var perm[j]
    old_to_new = {old: new for new, old in enumerate(perm)}
    moved = [g.extend_arity(arity, [old_to_new[i] for i in range(arity)])
             for g in gens]
    gb = groebner(moved, BlockOrder(len(elim)))
    kept_positions = list(range(len(elim), arity))
    out = []
    for g in gb:
        if all(all(m[i] == 0 for i in range(len(elim))) for m in g.terms):
            out.append(g.restrict_arity(kept_positions))
    return out


def standard_monomials(gb: GroebnerBasis, arity: int, maxdeg: int
                       ) -> list[Monomial]:
    """Monomials of degree <= maxdeg outside the leading-term ideal."""
    lts = gb.leading_monomials
    out = []
    for m in monomials_up_to(arity, maxdeg):
        if not any(monomial_divides(lt, m) for lt in lts):
            out.append(m)
        if len(out) > LIMITS.max_terms:
            raise ResourceLimitError("standard monomial count exceeds guard")
    return out
