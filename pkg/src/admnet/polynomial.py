"""Exact multivariate polynomials over the rationals.

A polynomial is a map from exponent tuples (one non-negative int per
variable) to nonzero Fraction coefficients.  This representation makes
polynomial identity an exact decision, which the whole realization
machinery depends on: invariance of a component under a variable swap
is tested as structural equality of two canonical polynomials.

Terms are kept in a dict; the canonical graded-lexicographic order is
applied whenever terms are iterated for printing or hashing, so two
equal polynomials are structurally indistinguishable.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Mapping, Sequence

Exponent = tuple[int, ...]


class PolynomialError(ValueError):
    """Raised on malformed polynomial operations (bad index, bad mapping)."""


class ParseError(PolynomialError):
    """Syntax or identifier error while parsing a polynomial expression."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at position {position})")
        self.position = position


def _grlex_key(exp: Exponent) -> tuple:
    return (sum(exp), exp)


class Polynomial:
    """Immutable exact-rational polynomial in a fixed number of variables."""

    __slots__ = ("nvars", "_terms", "_hash")

    def __init__(self, nvars: int, terms: Mapping[Exponent, Fraction] | None = None):
        if nvars < 0:
            raise PolynomialError("nvars must be non-negative")
        clean: dict[Exponent, Fraction] = {}
        for exp, coeff in (terms or {}).items():
            coeff = Fraction(coeff)
            if coeff == 0:
                continue
            exp = tuple(int(e) for e in exp)
            if len(exp) != nvars or any(e < 0 for e in exp):
                raise PolynomialError(f"bad exponent vector {exp} for nvars={nvars}")
            clean[exp] = coeff
        object.__setattr__(self, "nvars", nvars)
        object.__setattr__(self, "_terms", clean)
        object.__setattr__(self, "_hash", None)

    def __setattr__(self, name, value):
        raise AttributeError("Polynomial is immutable")

    # -- constructors -------------------------------------------------

    @staticmethod
    def zero(nvars: int) -> "Polynomial":
        return Polynomial(nvars, {})

    @staticmethod
    def constant(nvars: int, value) -> "Polynomial":
        return Polynomial(nvars, {(0,) * nvars: Fraction(value)})

    @staticmethod
    def variable(nvars: int, index: int) -> "Polynomial":
        if not 0 <= index < nvars:
            raise PolynomialError(f"variable index {index} out of range for nvars={nvars}")
        exp = [0] * nvars
        exp[index] = 1
        return Polynomial(nvars, {tuple(exp): Fraction(1)})

    # -- canonical views ----------------------------------------------

    def terms(self) -> list[tuple[Exponent, Fraction]]:
        """Terms in descending graded-lexicographic order."""
        return sorted(self._terms.items(), key=lambda kv: _grlex_key(kv[0]), reverse=True)

    def coefficient(self, exp: Exponent) -> Fraction:
        return self._terms.get(tuple(exp), Fraction(0))

    def is_zero(self) -> bool:
        return not self._terms

    def total_degree(self) -> int:
        return max((sum(e) for e in self._terms), default=0)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.nvars == other.nvars and self._terms == other._terms

    def __hash__(self) -> int:
        h = object.__getattribute__(self, "_hash")
        if h is None:
            h = hash((self.nvars, tuple(self.terms())))
            object.__setattr__(self, "_hash", h)
        return h

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __repr__(self) -> str:
        return f"Polynomial({self.nvars}, {self.to_string()!r})"

    # -- arithmetic ----------------------------------------------------

    def _check_same(self, other: "Polynomial"):
        if self.nvars != other.nvars:
            raise PolynomialError("nvars mismatch")

    def __add__(self, other: "Polynomial") -> "Polynomial":
        self._check_same(other)
        out = dict(self._terms)
        for exp, c in other._terms.items():
            out[exp] = out.get(exp, Fraction(0)) + c
        return Polynomial(self.nvars, out)

    def __neg__(self) -> "Polynomial":
        return Polynomial(self.nvars, {e: -c for e, c in self._terms.items()})

    def __sub__(self, other: "Polynomial") -> "Polynomial":
        return self + (-other)

    def __mul__(self, other) -> "Polynomial":
        if isinstance(other, (int, Fraction)):
            return Polynomial(self.nvars, {e: c * other for e, c in self._terms.items()})
        self._check_same(other)
        out: dict[Exponent, Fraction] = {}
        for ea, ca in self._terms.items():
            for eb, cb in other._terms.items():
                exp = tuple(x + y for x, y in zip(ea, eb))
                out[exp] = out.get(exp, Fraction(0)) + ca * cb
        return Polynomial(self.nvars, out)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "Polynomial":
        if k < 0:
            raise PolynomialError("negative power")
        result = Polynomial.constant(self.nvars, 1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base if k > 1 else base
            k >>= 1
        return result

    # -- queried operations --------------------------------------------

    def evaluate(self, point: Sequence) -> Fraction:
        """Exact value at a rational point."""
        if len(point) != self.nvars:
            raise PolynomialError(f"point has length {len(point)}, expected {self.nvars}")
        pt = [Fraction(v) for v in point]
        total = Fraction(0)
        for exp, coeff in self._terms.items():
            val = coeff
            for x, e in zip(pt, exp):
                if e:
                    val *= x ** e
            total += val
        return total

    def partial_derivative(self, var: int) -> "Polynomial":
        """Formal partial derivative with respect to variable ``var``."""
        if not 0 <= var < self.nvars:
            raise PolynomialError(f"variable index {var} out of range")
        out: dict[Exponent, Fraction] = {}
        for exp, coeff in self._terms.items():
            e = exp[var]
            if e == 0:
                continue
            new = list(exp)
            new[var] = e - 1
            key = tuple(new)
            out[key] = out.get(key, Fraction(0)) + coeff * e
        return Polynomial(self.nvars, out)

    def depends_on(self, var: int) -> bool:
        """True iff some stored monomial has positive degree in ``var``."""
        if not 0 <= var < self.nvars:
            raise PolynomialError(f"variable index {var} out of range")
        return any(exp[var] > 0 for exp in self._terms)

    def support(self) -> set[int]:
        """Indices of all variables the polynomial genuinely depends on."""
        used: set[int] = set()
        for exp in self._terms:
            used.update(i for i, e in enumerate(exp) if e > 0)
        return used

    def apply_permutation(self, sigma: Sequence[int]) -> "Polynomial":
        """Rename variable i to sigma[i].

        With compose(s, t)[i] = t[s[i]] this is a group action:
        p.apply_permutation(s).apply_permutation(t) == p.apply_permutation(compose(s, t)).
        """
        if sorted(sigma) != list(range(self.nvars)):
            raise PolynomialError("sigma is not a bijection on variable indices")
        out: dict[Exponent, Fraction] = {}
        for exp, coeff in self._terms.items():
            new = [0] * self.nvars
            for i, e in enumerate(exp):
                new[sigma[i]] = e
            out[tuple(new)] = coeff
        return Polynomial(self.nvars, out)

    def invariant_under_swap(self, a: int, b: int) -> bool:
        """True iff the polynomial is unchanged by exchanging variables a and b."""
        if a == b:
            raise PolynomialError("swap indices must differ")
        if not (0 <= a < self.nvars and 0 <= b < self.nvars):
            raise PolynomialError("swap index out of range")
        sigma = list(range(self.nvars))
        sigma[a], sigma[b] = sigma[b], sigma[a]
        return self.apply_permutation(sigma) == self

    def substitute(self, mapping: Mapping[int, "Polynomial"]) -> "Polynomial":
        """Compose: replace variable i by mapping[i].

        Every variable the polynomial depends on must be mapped; the images
        must all share one variable count, which becomes the result's nvars.
        """
        needed = self.support()
        missing = needed - set(mapping)
        if missing:
            raise PolynomialError(f"missing mapping entries for variables {sorted(missing)}")
        if mapping:
            target = next(iter(mapping.values())).nvars
            if any(q.nvars != target for q in mapping.values()):
                raise PolynomialError("mapping images have inconsistent nvars")
        else:
            target = self.nvars
        result = Polynomial.zero(target)
        powers: dict[tuple[int, int], Polynomial] = {}
        for exp, coeff in self._terms.items():
            term = Polynomial.constant(target, coeff)
            for i, e in enumerate(exp):
                if e == 0:
                    continue
                key = (i, e)
                if key not in powers:
                    powers[key] = mapping[i] ** e
                term = term * powers[key]
            result = result + term
        return result

    # -- printing -------------------------------------------------------

    def to_string(self, variables: Sequence[str] | None = None) -> str:
        """Canonical rendering; parse_polynomial round-trips it exactly."""
        if variables is None:
            variables = [f"x{i + 1}" for i in range(self.nvars)]
        if len(variables) != self.nvars:
            raise PolynomialError("variable name list has wrong length")
        if self.is_zero():
            return "0"
        pieces: list[str] = []
        for exp, coeff in self.terms():
            factors = []
            for name, e in zip(variables, exp):
                if e == 1:
                    factors.append(name)
                elif e > 1:
                    factors.append(f"{name}^{e}")
            mag = abs(coeff)
            if not factors:
                body = str(mag)
            elif mag == 1:
                body = "*".join(factors)
            else:
                body = "*".join([str(mag)] + factors)
            if not pieces:
                pieces.append(body if coeff > 0 else f"-{body}")
            else:
                pieces.append(f"{'+' if coeff > 0 else '-'} {body}")
        return " ".join(pieces)


# ---------------------------------------------------------------------------
# Parser
#
# expr   := ('+'|'-')? term (('+'|'-') term)*
# term   := factor ('*' factor)*
# factor := base ('^' uint)?
# base   := rational | ident | '(' expr ')'
# rational := int ('/' uint)? ; ident := letter (letter|digit|'_')*
#
# Whitespace is insignificant; implicit multiplication is rejected.
# ---------------------------------------------------------------------------


class _Tokenizer:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0
        self.tokens: list[tuple[str, str, int]] = []
        self._scan()
        self.index = 0

    def _scan(self):
        text, n = self.text, len(self.text)
        i = 0
        while i < n:
            ch = text[i]
            if ch.isspace():
                i += 1
                continue
            if ch in "+-*/^()":
                self.tokens.append(("op", ch, i))
                i += 1
            elif ch.isdigit():
                j = i
                while j < n and text[j].isdigit():
                    j += 1
                self.tokens.append(("int", text[i:j], i))
                i = j
            elif ch.isalpha():
                j = i
                while j < n and (text[j].isalnum() or text[j] == "_"):
                    j += 1
                self.tokens.append(("ident", text[i:j], i))
                i = j
            else:
                raise ParseError(f"unexpected character {ch!r}", i)
        self.tokens.append(("end", "", n))

    def peek(self) -> tuple[str, str, int]:
        return self.tokens[self.index]

    def next(self) -> tuple[str, str, int]:
        tok = self.tokens[self.index]
        self.index += 1
        return tok


class _Parser:
    def __init__(self, text: str, variables: Sequence[str]):
        self.toks = _Tokenizer(text)
        self.variables = list(variables)
        self.var_index = {name: i for i, name in enumerate(self.variables)}
        self.nvars = len(self.variables)

    def parse(self) -> Polynomial:
        p = self._expr()
        kind, val, pos = self.toks.peek()
        if kind != "end":
            raise ParseError(f"unexpected token {val!r}", pos)
        return p

    def _expr(self) -> Polynomial:
        kind, val, _ = self.toks.peek()
        sign = 1
        if kind == "op" and val in "+-":
            self.toks.next()
            sign = -1 if val == "-" else 1
        p = self._term() * sign
        while True:
            kind, val, _ = self.toks.peek()
            if kind == "op" and val in "+-":
                self.toks.next()
                q = self._term()
                p = p + q if val == "+" else p - q
            else:
                return p

    def _term(self) -> Polynomial:
        p = self._factor()
        while True:
            kind, val, pos = self.toks.peek()
            if kind == "op" and val == "*":
                self.toks.next()
                p = p * self._factor()
            elif kind in ("int", "ident") or (kind == "op" and val == "("):
                raise ParseError("implicit multiplication is not accepted", pos)
            else:
                return p

    def _factor(self) -> Polynomial:
        p = self._base()
        kind, val, _ = self.toks.peek()
        if kind == "op" and val == "^":
            self.toks.next()
            kind, val, pos = self.toks.next()
            if kind != "int":
                raise ParseError("exponent must be a non-negative integer literal", pos)
            p = p ** int(val)
        return p

    def _base(self) -> Polynomial:
        kind, val, pos = self.toks.next()
        if kind == "int":
            num = int(val)
            kind2, val2, _ = self.toks.peek()
            if kind2 == "op" and val2 == "/":
                self.toks.next()
                kind3, val3, pos3 = self.toks.next()
                if kind3 != "int":
                    raise ParseError("denominator must be an integer literal", pos3)
                den = int(val3)
                if den == 0:
                    raise ParseError("zero denominator", pos3)
                return Polynomial.constant(self.nvars, Fraction(num, den))
            return Polynomial.constant(self.nvars, num)
        if kind == "ident":
            if val not in self.var_index:
                raise ParseError(f"unknown identifier {val!r}", pos)
            return Polynomial.variable(self.nvars, self.var_index[val])
        if kind == "op" and val == "(":
            p = self._expr()
            kind2, val2, pos2 = self.toks.next()
            if not (kind2 == "op" and val2 == ")"):
                raise ParseError("expected ')'", pos2)
            return p
        if kind == "op" and val == "-":
            # unary minus inside a term ("3*-x" style) is not in the grammar
            raise ParseError("unexpected '-'", pos)
        raise ParseError(f"unexpected token {val!r}" if val else "unexpected end of input", pos)


def parse_polynomial(text: str, variables: Sequence[str]) -> Polynomial:
    """Parse an expression over the ordered variable name list."""
    if len(set(variables)) != len(variables):
        raise PolynomialError("duplicate variable names")
    return _Parser(text, variables).parse()


def compose_permutations(sigma: Sequence[int], tau: Sequence[int]) -> list[int]:
    """Apply sigma first, then tau: compose(sigma, tau)[i] = tau[sigma[i]]."""
    return [tau[s] for s in sigma]
