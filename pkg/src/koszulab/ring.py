"""Sparse multivariate polynomial arithmetic over a prime field.

Everything downstream (Groebner engine, module theory, the degreewise
linear-algebra oracle) bottoms out in exact arithmetic in k[x_1..x_v]
with k = Z/p.  The representation is deliberately small: a polynomial is
a tuple of (exponent-tuple, coefficient) pairs sorted descending in the
ring's monomial order, with no zero coefficients and no repeated
monomials.  All values are immutable.
"""

from __future__ import annotations

import itertools
from typing import Iterable, Sequence

DEFAULT_CHAR = 32003

GREVLEX = "grevlex"
LEX = "lex"


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


# ---------------------------------------------------------------------------
# monomials: dense exponent tuples

def monomial_degree(mon) -> int:
    return sum(mon)


def monomial_mul(a, b):
    return tuple(x + y for x, y in zip(a, b))


def monomial_div(a, b):
    """a / b as an exponent tuple, or None when b does not divide a."""
    out = []
    for x, y in zip(a, b):
        if x < y:
            return None
        out.append(x - y)
    return tuple(out)


def monomial_lcm(a, b):
    return tuple(x if x > y else y for x, y in zip(a, b))


def monomial_coprime(a, b) -> bool:
    return all(x == 0 or y == 0 for x, y in zip(a, b))


class PolyRing:
    """k[x_1, .., x_v] over k = Z/char with a fixed monomial order.

    The order is grevlex (default) or lex, both with x_1 > x_2 > ... > x_v.
    Rings compare by identity; mixing elements of distinct rings is a
    structural error.
    """

    def __init__(self, names: Sequence[str], char: int = DEFAULT_CHAR, order: str = GREVLEX):
        names = tuple(str(s) for s in names)
        if len(set(names)) != len(names):
            raise ValueError("duplicate variable names")
        if not is_prime(char):
            raise ValueError(f"characteristic {char} is not prime")
        if char == 2:
            raise ValueError("characteristic 2 is unsupported (orientation signs degenerate)")
        if order not in (GREVLEX, LEX):
            raise ValueError(f"unknown monomial order {order!r}")
        self.names = names
        self.nvars = len(names)
        self.char = char
        self.order = order
        self._name_index = {s: i for i, s in enumerate(names)}
        self._zero_mon = (0,) * self.nvars
        self._mon_cache: dict[int, tuple] = {}

    def __repr__(self):
        return f"PolyRing({list(self.names)}, char={self.char}, order={self.order})"

    # -- monomial order ---------------------------------------------------

    def monomial_key(self, mon):
        """Sort key; ascending key order equals ascending monomial order."""
        if self.order == GREVLEX:
            return (sum(mon), tuple(-e for e in reversed(mon)))
        return mon

    # -- constructors ------------------------------------------------------

    def poly(self, term_map) -> "Polynomial":
        """Polynomial from {exponent-tuple: coefficient}; normalizes mod p."""
        p = self.char
        terms = []
        for mon, c in term_map.items():
            c %= p
            if c:
                if len(mon) != self.nvars:
                    raise ValueError("exponent tuple has wrong length")
                terms.append((tuple(mon), c))
        terms.sort(key=lambda t: self.monomial_key(t[0]), reverse=True)
        return Polynomial(self, tuple(terms))

    @property
    def zero(self) -> "Polynomial":
        return Polynomial(self, ())

    @property
    def one(self) -> "Polynomial":
        return Polynomial(self, ((self._zero_mon, 1),))

    def constant(self, c: int) -> "Polynomial":
        c %= self.char
        if c == 0:
            return self.zero
        return Polynomial(self, ((self._zero_mon, c),))

    def gen(self, i: int) -> "Polynomial":
        mon = tuple(1 if j == i else 0 for j in range(self.nvars))
        return Polynomial(self, ((mon, 1),))

    def gens(self) -> tuple["Polynomial", ...]:
        return tuple(self.gen(i) for i in range(self.nvars))

    def monomial(self, mon, c: int = 1) -> "Polynomial":
        return self.poly({tuple(mon): c})

    # -- degreewise enumeration (used by the linear-algebra oracle) --------

    def monomials_of_degree(self, d: int) -> tuple:
        """All degree-d monomials, descending in the active order."""
        if d < 0:
            return ()
        cached = self._mon_cache.get(d)
        if cached is None:
            mons = [
                tuple(c2 - c1 - 1 for c1, c2 in zip((-1,) + bars, bars + (d + self.nvars - 1,)))
                for bars in itertools.combinations(range(d + self.nvars - 1), self.nvars - 1)
            ] if self.nvars > 1 else ([(d,)] if self.nvars == 1 else [])
            mons.sort(key=self.monomial_key, reverse=True)
            cached = tuple(mons)
            self._mon_cache[d] = cached
        return cached

    def dim_of_degree(self, d: int) -> int:
        if d < 0:
            return 0
        # C(d + v - 1, v - 1)
        import math

        return math.comb(d + self.nvars - 1, self.nvars - 1)

    # -- text format --------------------------------------------------------

    def parse(self, text: str) -> "Polynomial":
        """Parse the scenario polynomial syntax: sums of `c*x^a*y^b` terms.

        `*` may be omitted between a coefficient and a variable, `^` only
        appears before integer exponents.  Round-trips with str().
        """
        return _parse_polynomial(self, text)


class Polynomial:
    """Immutable sparse polynomial; terms descend in the ring order."""

    __slots__ = ("ring", "terms")

    def __init__(self, ring: PolyRing, terms: tuple):
        self.ring = ring
        self.terms = terms

    # -- predicates ----------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        if not self.terms:
            return -1
        return max(sum(m) for m, _ in self.terms)

    def homogeneous_degree(self):
        """Common degree of all terms, or None if inhomogeneous/zero."""
        if not self.terms:
            return None
        degs = {sum(m) for m, _ in self.terms}
        if len(degs) != 1:
            return None
        return degs.pop()

    def is_homogeneous(self) -> bool:
        return not self.terms or self.homogeneous_degree() is not None

    # -- leading data ---------------------------------------------------------

    def leading_monomial(self):
        if not self.terms:
            raise ValueError("zero polynomial has no leading term")
        return self.terms[0][0]

    def leading_coefficient(self) -> int:
        if not self.terms:
            raise ValueError("zero polynomial has no leading term")
        return self.terms[0][1]

    def leading_term(self) -> "Polynomial":
        if not self.terms:
            raise ValueError("zero polynomial has no leading term")
        return Polynomial(self.ring, (self.terms[0],))

    # -- arithmetic -------------------------------------------------------------

    def _check_ring(self, other: "Polynomial"):
        if self.ring is not other.ring:
            raise ValueError("mixed rings")

    def __add__(self, other):
        if isinstance(other, int):
            other = self.ring.constant(other)
        self._check_ring(other)
        p = self.ring.char
        acc = dict(self.terms)
        for mon, c in other.terms:
            v = (acc.get(mon, 0) + c) % p
            if v:
                acc[mon] = v
            elif mon in acc:
                del acc[mon]
        return self.ring.poly(acc)

    __radd__ = __add__

    def __neg__(self):
        p = self.ring.char
        return Polynomial(self.ring, tuple((m, p - c) for m, c in self.terms))

    def __sub__(self, other):
        if isinstance(other, int):
            other = self.ring.constant(other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, int):
            c = other % self.ring.char
            if c == 0:
                return self.ring.zero
            p = self.ring.char
            return Polynomial(self.ring, tuple((m, (a * c) % p) for m, a in self.terms))
        self._check_ring(other)
        p = self.ring.char
        acc: dict = {}
        for m1, c1 in self.terms:
            for m2, c2 in other.terms:
                mon = monomial_mul(m1, m2)
                v = (acc.get(mon, 0) + c1 * c2) % p
                if v:
                    acc[mon] = v
                elif mon in acc:
                    del acc[mon]
        return self.ring.poly(acc)

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if e < 0:
            raise ValueError("negative exponent")
        out = self.ring.one
        for _ in range(e):
            out = out * self
        return out

    def scale_monomial(self, mon, c: int = 1) -> "Polynomial":
        """self * c*x^mon; preserves term order (the order is multiplicative)."""
        p = self.ring.char
        c %= p
        if c == 0:
            return self.ring.zero
        mon = tuple(mon)
        return Polynomial(
            self.ring,
            tuple((monomial_mul(m, mon), (a * c) % p) for m, a in self.terms),
        )

    # -- evaluation (probabilistic rank oracle) ---------------------------------

    def evaluate(self, point: Sequence[int]) -> int:
        if len(point) != self.ring.nvars:
            raise ValueError("point has wrong length")
        p = self.ring.char
        total = 0
        for mon, c in self.terms:
            v = c
            for x, e in zip(point, mon):
                if e:
                    v = (v * pow(x % p, e, p)) % p
            total = (total + v) % p
        return total

    # -- equality, hashing, text -------------------------------------------------

    def __eq__(self, other):
        if isinstance(other, int):
            return self == self.ring.constant(other)
        return isinstance(other, Polynomial) and self.ring is other.ring and self.terms == other.terms

    def __hash__(self):
        return hash((id(self.ring), self.terms))

    def __bool__(self):
        return bool(self.terms)

    def __str__(self):
        return format_polynomial(self)

    def __repr__(self):
        return f"<{format_polynomial(self)}>"


def monomial_compare(a, b, ring: PolyRing) -> int:
    """-1 / 0 / +1 comparison of exponent tuples in the ring's order."""
    if len(a) != len(b) or len(a) != ring.nvars:
        raise ValueError("mismatched variable counts")
    ka, kb = ring.monomial_key(tuple(a)), ring.monomial_key(tuple(b))
    if ka < kb:
        return -1
    if ka > kb:
        return 1
    return 0


# ---------------------------------------------------------------------------
# text format: printer and parser round-trip

def _format_monomial(ring: PolyRing, mon) -> str:
    parts = []
    for name, e in zip(ring.names, mon):
        if e == 1:
            parts.append(name)
        elif e > 1:
            parts.append(f"{name}^{e}")
    return "*".join(parts)


def format_polynomial(poly: Polynomial) -> str:
    if not poly.terms:
        return "0"
    ring = poly.ring
    half = ring.char // 2
    pieces = []
    for i, (mon, c) in enumerate(poly.terms):
        # symmetric representative, so generic sign patterns print readably
        signed = c - ring.char if c > half else c
        neg = signed < 0
        mag = -signed if neg else signed
        body = _format_monomial(ring, mon)
        if not body:
            body = str(mag)
        elif mag != 1:
            body = f"{mag}*{body}"
        if i == 0:
            pieces.append(("-" if neg else "") + body)
        else:
            pieces.append((" - " if neg else " + ") + body)
    return "".join(pieces)


class PolyParseError(ValueError):
    def __init__(self, message: str, text: str, pos: int):
        line = text.count("\n", 0, pos) + 1
        col = pos - (text.rfind("\n", 0, pos) + 1) + 1
        super().__init__(f"{message} at line {line}, column {col}: {text!r}")
        self.pos = pos
        self.line = line
        self.column = col


def _tokenize(text: str):
    tokens = []
    i, n = 0, len(text)
    while i < n:
        ch = text[i]
        if ch.isspace():
            i += 1
        elif ch in "+-*^()":
            tokens.append((ch, ch, i))
            i += 1
        elif ch.isdigit():
            j = i
            while j < n and text[j].isdigit():
                j += 1
            tokens.append(("int", text[i:j], i))
            i = j
        elif ch.isalpha() or ch == "_":
            j = i
            while j < n and (text[j].isalnum() or text[j] == "_"):
                j += 1
            tokens.append(("name", text[i:j], i))
            i = j
        else:
            raise PolyParseError(f"unexpected character {ch!r}", text, i)
    tokens.append(("end", "", n))
    return tokens


def _parse_polynomial(ring: PolyRing, text: str) -> Polynomial:
    tokens = _tokenize(text)
    pos = 0

    def peek():
        return tokens[pos]

    def advance():
        nonlocal pos
        tok = tokens[pos]
        pos += 1
        return tok

    def parse_factor():
        kind, val, at = peek()
        if kind == "int":
            advance()
            return ring.constant(int(val))
        if kind == "name":
            advance()
            idx = ring._name_index.get(val)
            if idx is None:
                raise PolyParseError(f"unknown variable {val!r}", text, at)
            exp = 1
            if peek()[0] == "^":
                advance()
                k2, v2, at2 = advance()
                if k2 != "int":
                    raise PolyParseError("expected integer exponent", text, at2)
                exp = int(v2)
            return ring.gen(idx) ** exp
        if kind == "(":
            advance()
            value = parse_expr()
            k2, _, at2 = advance()
            if k2 != ")":
                raise PolyParseError("expected ')'", text, at2)
            return value
        raise PolyParseError("expected a term", text, at)

    def parse_term():
        value = parse_factor()
        while True:
            kind, _, _ = peek()
            if kind == "*":
                advance()
                value = value * parse_factor()
            elif kind in ("int", "name", "("):
                # juxtaposition: 3x^2y
                value = value * parse_factor()
            else:
                return value

    def parse_expr():
        kind, _, _ = peek()
        sign = 1
        if kind in "+-":
            advance()
            sign = -1 if kind == "-" else 1
        value = parse_term() * sign
        while True:
            kind, _, _ = peek()
            if kind in "+-":
                advance()
                term = parse_term()
                value = value + (term if kind == "+" else -term)
            else:
                return value

    value = parse_expr()
    kind, _, at = peek()
    if kind != "end":
        raise PolyParseError("trailing input", text, at)
    return value
