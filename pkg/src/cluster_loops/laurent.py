"""Exact multivariate Laurent polynomials with integer coefficients.

Variables are plain strings such as ``"x3"`` or ``"y12"``.  They sort by their
alphabetic prefix and then numerically by any digit suffix, so ``x2 < x10 < y1``.
All values are immutable and kept in canonical form (no zero coefficients, no
zero exponents), which makes ``==`` a structural comparison.
"""
from __future__ import annotations

import re
from collections.abc import Iterable, Mapping
from functools import total_ordering

__all__ = [
    "Monomial",
    "LaurentPolynomial",
    "NotDivisibleError",
    "var_key",
    "exact_divide",
    "divide_by_monomial",
    "specialize",
    "parse",
]

_VAR_RE = re.compile(r"^([A-Za-z_]+)(.*)$")


class NotDivisibleError(ArithmeticError):
    """Raised by :func:`exact_divide` when the quotient is not Laurent."""


def var_key(name: str) -> tuple:
    m = _VAR_RE.match(name)
    if m is None:
        return ("", 0, name)
    prefix, rest = m.groups()
    if rest.isdigit():
        return (prefix, 0, int(rest), "")
    return (prefix, 1, 0, rest)


@total_ordering
class Monomial:
    """A product of variables with signed integer exponents."""

    __slots__ = ("_items", "_hash")

    def __init__(self, exponents: Mapping[str, int] | Iterable[tuple[str, int]] = ()):
        if isinstance(exponents, Mapping):
            exponents = exponents.items()
        acc: dict[str, int] = {}
        for v, e in exponents:
            acc[v] = acc.get(v, 0) + int(e)
        self._items = tuple(sorted(((v, e) for v, e in acc.items() if e), key=lambda t: var_key(t[0])))
        self._hash = hash(self._items)

    @classmethod
    def _raw(cls, items: tuple) -> "Monomial":
        m = cls.__new__(cls)
        m._items = items
        m._hash = hash(items)
        return m

    @classmethod
    def var(cls, name: str, exp: int = 1) -> "Monomial":
        return cls({name: exp})

    @property
    def items(self) -> tuple[tuple[str, int], ...]:
        return self._items

    def as_dict(self) -> dict[str, int]:
        return dict(self._items)

    def degree(self, name: str) -> int:
        for v, e in self._items:
            if v == name:
                return e
        return 0

    def variables(self) -> set[str]:
        return {v for v, _ in self._items}

    def is_one(self) -> bool:
        return not self._items

    def __mul__(self, other: "Monomial") -> "Monomial":
        if not isinstance(other, Monomial):
            return NotImplemented
        if not other._items:
            return self
        if not self._items:
            return other
        acc = dict(self._items)
        for v, e in other._items:
            acc[v] = acc.get(v, 0) + e
        return Monomial(acc)

    def __truediv__(self, other: "Monomial") -> "Monomial":
        if not isinstance(other, Monomial):
            return NotImplemented
        return self * other.inverse()

    def __pow__(self, k: int) -> "Monomial":
        return Monomial._raw(tuple((v, e * k) for v, e in self._items)) if k else Monomial()

    def inverse(self) -> "Monomial":
        return Monomial._raw(tuple((v, -e) for v, e in self._items))

    def __eq__(self, other) -> bool:
        return isinstance(other, Monomial) and self._items == other._items

    def __lt__(self, other: "Monomial") -> bool:
        return self._sort_key() < other._sort_key()

    def _sort_key(self):
        return tuple((var_key(v), e) for v, e in self._items)

    def __hash__(self) -> int:
        return self._hash

    def __repr__(self) -> str:
        return f"Monomial({self})"

    def __str__(self) -> str:
        if not self._items:
            return "1"
        return " * ".join(v if e == 1 else f"{v}^{e}" for v, e in self._items)


ONE = Monomial()


class LaurentPolynomial:
    """Immutable element of ``Z[x_1^{+-1}, ..., y_1^{+-1}, ...]``."""

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[Monomial, int] | Iterable[tuple[Monomial, int]] = ()):
        if isinstance(terms, Mapping):
            terms = terms.items()
        acc: dict[Monomial, int] = {}
        for m, c in terms:
            if c:
                acc[m] = acc.get(m, 0) + int(c)
        self._terms = {m: c for m, c in acc.items() if c}
        self._hash = None

    @classmethod
    def _wrap(cls, terms: dict) -> "LaurentPolynomial":
        p = cls.__new__(cls)
        p._terms = terms
        p._hash = None
        return p

    # constructors -----------------------------------------------------
    @classmethod
    def constant(cls, c: int) -> "LaurentPolynomial":
        return cls._wrap({ONE: int(c)} if c else {})

    @classmethod
    def var(cls, name: str) -> "LaurentPolynomial":
        return cls._wrap({Monomial.var(name): 1})

    @classmethod
    def from_monomial(cls, m: Monomial, coeff: int = 1) -> "LaurentPolynomial":
        return cls._wrap({m: int(coeff)} if coeff else {})

    # inspection -------------------------------------------------------
    @property
    def terms(self) -> dict[Monomial, int]:
        return dict(self._terms)

    def __len__(self) -> int:
        return len(self._terms)

    def __iter__(self):
        return iter(self.sorted_terms())

    def is_zero(self) -> bool:
        return not self._terms

    def is_monomial(self) -> bool:
        return len(self._terms) == 1

    def variables(self) -> set[str]:
        out: set[str] = set()
        for m in self._terms:
            out |= m.variables()
        return out

    def coefficients(self) -> list[int]:
        return [c for _, c in self.sorted_terms()]

    def min_exponents(self) -> Monomial:
        """Largest monomial dividing every term (the monomial content)."""
        if not self._terms:
            return ONE
        names = self.variables()
        return Monomial({v: min(m.degree(v) for m in self._terms) for v in names})

    def sorted_terms(self) -> list[tuple[Monomial, int]]:
        names = sorted(self.variables(), key=var_key)

        def key(item):
            m = item[0]
            return tuple(-m.degree(v) for v in names)

        return sorted(self._terms.items(), key=key)

    # arithmetic -------------------------------------------------------
    def _coerce(self, other) -> "LaurentPolynomial":
        if isinstance(other, LaurentPolynomial):
            return other
        if isinstance(other, Monomial):
            return LaurentPolynomial.from_monomial(other)
        if isinstance(other, int):
            return LaurentPolynomial.constant(other)
        raise TypeError(f"cannot combine LaurentPolynomial with {type(other).__name__}")

    def __add__(self, other) -> "LaurentPolynomial":
        try:
            other = self._coerce(other)
        except TypeError:
            return NotImplemented
        acc = dict(self._terms)
        for m, c in other._terms.items():
            s = acc.get(m, 0) + c
            if s:
                acc[m] = s
            else:
                acc.pop(m, None)
        return LaurentPolynomial._wrap(acc)

    __radd__ = __add__

    def __neg__(self) -> "LaurentPolynomial":
        return LaurentPolynomial._wrap({m: -c for m, c in self._terms.items()})

    def __sub__(self, other) -> "LaurentPolynomial":
        try:
            other = self._coerce(other)
        except TypeError:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> "LaurentPolynomial":
        return self._coerce(other) - self

    def __mul__(self, other) -> "LaurentPolynomial":
        try:
            other = self._coerce(other)
        except TypeError:
            return NotImplemented
        acc: dict[Monomial, int] = {}
        for m1, c1 in self._terms.items():
            for m2, c2 in other._terms.items():
                m = m1 * m2
                acc[m] = acc.get(m, 0) + c1 * c2
        return LaurentPolynomial._wrap({m: c for m, c in acc.items() if c})

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "LaurentPolynomial":
        if k < 0:
            if not self.is_monomial():
                raise NotDivisibleError("negative power of a non-monomial")
            (m, c), = self._terms.items()
            if abs(c) != 1:
                raise NotDivisibleError("negative power of a non-unit")
            return LaurentPolynomial._wrap({m ** k: c ** (-k)})
        out = LaurentPolynomial.constant(1)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __truediv__(self, other) -> "LaurentPolynomial":
        if isinstance(other, Monomial):
            return divide_by_monomial(self, other)
        return exact_divide(self, self._coerce(other))

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            other = LaurentPolynomial.constant(other)
        if not isinstance(other, LaurentPolynomial):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    # evaluation -------------------------------------------------------
    def evaluate(self, values: Mapping[str, int], modulus: int | None = None):
        """Evaluate at integer values; exact ``Fraction`` unless ``modulus`` is given."""
        from fractions import Fraction

        total = 0 if modulus is not None else Fraction(0)
        for m, c in self._terms.items():
            if modulus is None:
                t = Fraction(c)
                for v, e in m.items:
                    t *= Fraction(values[v]) ** e
                total += t
            else:
                t = c % modulus
                for v, e in m.items:
                    t = t * pow(values[v], e, modulus) % modulus
                total = (total + t) % modulus
        return total

    def __repr__(self) -> str:
        return f"LaurentPolynomial({str(self)!r})"

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        out = ""
        for i, (m, c) in enumerate(self.sorted_terms()):
            body = str(abs(c)) if m.is_one() else f"{abs(c)} * {m}"
            if i == 0:
                out = body if c > 0 else "-" + body
            else:
                out += (" + " if c > 0 else " - ") + body
        return out


def divide_by_monomial(p: LaurentPolynomial, m: Monomial) -> LaurentPolynomial:
    inv = m.inverse()
    return LaurentPolynomial._wrap({t * inv: c for t, c in p._terms.items()})


def exact_divide(p: LaurentPolynomial, q: LaurentPolynomial) -> LaurentPolynomial:
    """Return ``r`` with ``q * r == p``; raise :class:`NotDivisibleError` otherwise.

    Both operands are stripped of their monomial content, after which Laurent
    divisibility is ordinary polynomial divisibility, decided by lex long
    division.
    """
    if q.is_zero():
        raise ZeroDivisionError("division by the zero polynomial")
    if p.is_zero():
        return p
    if q.is_monomial():
        (m, c), = q._terms.items()
        out = {}
        for t, a in p._terms.items():
            if a % c:
                raise NotDivisibleError(f"coefficient {a} not divisible by {c}")
            out[t / m] = a // c
        return LaurentPolynomial._wrap(out)

    cp, cq = p.min_exponents(), q.min_exponents()
    names = sorted(p.variables() | q.variables(), key=var_key)
    index = {v: i for i, v in enumerate(names)}

    def dense(poly, content):
        inv = content.inverse()
        out = {}
        for m, c in poly._terms.items():
            vec = [0] * len(names)
            for v, e in (m * inv).items:
                vec[index[v]] = e
            out[tuple(vec)] = c
        return out

    rem = dense(p, cp)
    den = dense(q, cq)
    lead_q = max(den)
    lead_c = den[lead_q]
    quot: dict[tuple, int] = {}
    while rem:
        lead_r = max(rem)
        shift = tuple(a - b for a, b in zip(lead_r, lead_q))
        if min(shift) < 0 or rem[lead_r] % lead_c:
            raise NotDivisibleError(f"({p}) is not divisible by ({q})")
        f = rem[lead_r] // lead_c
        quot[shift] = quot.get(shift, 0) + f
        for vec, c in den.items():
            t = tuple(a + b for a, b in zip(vec, shift))
            s = rem.get(t, 0) - f * c
            if s:
                rem[t] = s
            else:
                rem.pop(t, None)

    shift_mono = cp / cq
    out = {}
    for vec, c in quot.items():
        m = Monomial(zip(names, vec)) * shift_mono
        out[m] = c
    return LaurentPolynomial._wrap(out)


def specialize(p: LaurentPolynomial, assignment: Mapping[str, object]) -> LaurentPolynomial:
    """Substitute variables by ``+1``/``-1``, another variable name, or a monomial."""
    if not assignment:
        return p
    subs: dict[str, tuple[int, Monomial]] = {}
    for v, val in assignment.items():
        if isinstance(val, bool):
            raise TypeError("boolean is not a valid substitution value")
        if isinstance(val, int):
            if val not in (1, -1):
                raise ValueError(f"substitution value for {v} must be a unit, got {val}")
            subs[v] = (val, ONE)
        elif isinstance(val, str):
            subs[v] = (1, Monomial.var(val))
        elif isinstance(val, Monomial):
            subs[v] = (1, val)
        elif isinstance(val, LaurentPolynomial) and val.is_monomial():
            (m, c), = val._terms.items()
            if c not in (1, -1):
                raise ValueError("substituted monomial must have unit coefficient")
            subs[v] = (c, m)
        else:
            raise TypeError(f"unsupported substitution value {val!r}")
    acc: dict[Monomial, int] = {}
    for m, c in p._terms.items():
        keep = []
        coeff = c
        extra = ONE
        for v, e in m.items:
            if v in subs:
                sign, mono = subs[v]
                coeff *= sign ** (e % 2)
                extra = extra * mono ** e
            else:
                keep.append((v, e))
        nm = Monomial(keep) * extra
        acc[nm] = acc.get(nm, 0) + coeff
    return LaurentPolynomial(acc)


_TERM_SPLIT = re.compile(r"\s*([+-])\s*")


def parse(text: str) -> LaurentPolynomial:
    """Parse the textual form produced by ``str``; juxtaposition also multiplies.

    ``parse("x1x2x4^2 + 2 * y3 x5^-1")`` is accepted.
    """
    text = text.strip()
    if text in ("", "0"):
        return LaurentPolynomial()
    # protect negative exponents from the term splitter
    text = re.sub(r"\^\s*-\s*", "^~", text)
    pieces = _TERM_SPLIT.split(text)
    if pieces and pieces[0] == "":
        pieces = pieces[1:]
    else:
        pieces = ["+"] + pieces
    total = LaurentPolynomial()
    for sign, body in zip(pieces[0::2], pieces[1::2]):
        coeff = -1 if sign == "-" else 1
        exps: dict[str, int] = {}
        for tok in re.findall(r"\d+|[A-Za-z_]+\d*(?:\^~?\d+)?", body.replace("*", " ")):
            if tok.isdigit():
                coeff *= int(tok)
                continue
            name, _, e = tok.partition("^")
            e = -int(e[1:]) if e.startswith("~") else int(e or 1)
            exps[name] = exps.get(name, 0) + e
        total = total + LaurentPolynomial.from_monomial(Monomial(exps), coeff)
    return total
