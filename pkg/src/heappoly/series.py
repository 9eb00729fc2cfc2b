"""Exact truncated series in t^-1 and sparse polynomials in edge variables.

A ``TruncatedSeries`` of order T stores the coefficients of t^0, t^-1, ..., t^-T
as Fractions.  The index of a coefficient is its codegree.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Dict, Iterable, Mapping, Sequence, Tuple, Union

DEFAULT_ORDER = 12

Scalar = Union[int, Fraction]


def frac_str(q: Scalar) -> str:
    """Render a rational as "p" or "p/q" in lowest terms with q > 0."""
    return str(Fraction(q))


def parse_frac(s: str) -> Fraction:
    return Fraction(s)


class TruncatedSeries:
    __slots__ = ("order", "coeffs")

    def __init__(self, coeffs: Union[Sequence[Scalar], Mapping[int, Scalar]] = (), order: int = DEFAULT_ORDER):
        if order < 0:
            raise ValueError("order must be non-negative")
        c = [Fraction(0)] * (order + 1)
        items = coeffs.items() if isinstance(coeffs, Mapping) else enumerate(coeffs)
        for d, v in items:
            if d < 0:
                raise ValueError("negative codegree")
            if d <= order:
                c[d] += Fraction(v)
        self.order = order
        self.coeffs: Tuple[Fraction, ...] = tuple(c)

    @classmethod
    def one(cls, order: int = DEFAULT_ORDER) -> "TruncatedSeries":
        return cls([1], order)

    @classmethod
    def monomial(cls, d: int, c: Scalar = 1, order: int = DEFAULT_ORDER) -> "TruncatedSeries":
        return cls({d: c}, order)

    def __getitem__(self, d: int) -> Fraction:
        if 0 <= d <= self.order:
            return self.coeffs[d]
        raise IndexError(d)

    def coeff(self, d: int) -> Fraction:
        return self.coeffs[d] if 0 <= d <= self.order else Fraction(0)

    def truncate(self, order: int) -> "TruncatedSeries":
        return TruncatedSeries(self.coeffs[: order + 1], order)

    def _lift(self, other) -> "TruncatedSeries":
        if isinstance(other, TruncatedSeries):
            return other
        return TruncatedSeries([other], self.order)

    def _common(self, other: "TruncatedSeries") -> int:
        return min(self.order, other.order)

    def __eq__(self, other) -> bool:
        if not isinstance(other, (TruncatedSeries, int, Fraction)):
            return NotImplemented
        other = self._lift(other)
        T = self._common(other)
        return self.coeffs[: T + 1] == other.coeffs[: T + 1]

    def __hash__(self):
        return hash((self.order, self.coeffs))

    def __add__(self, other) -> "TruncatedSeries":
        other = self._lift(other)
        T = self._common(other)
        return TruncatedSeries([self.coeffs[d] + other.coeffs[d] for d in range(T + 1)], T)

    __radd__ = __add__

    def __neg__(self) -> "TruncatedSeries":
        return TruncatedSeries([-c for c in self.coeffs], self.order)

    def __sub__(self, other) -> "TruncatedSeries":
        return self + (-self._lift(other))

    def __rsub__(self, other) -> "TruncatedSeries":
        return self._lift(other) - self

    def __mul__(self, other) -> "TruncatedSeries":
        if not isinstance(other, TruncatedSeries):
            q = Fraction(other)
            return TruncatedSeries([c * q for c in self.coeffs], self.order)
        T = self._common(other)
        a, b = self.coeffs, other.coeffs
        out = [Fraction(0)] * (T + 1)
        for i in range(T + 1):
            if a[i]:
                for j in range(T + 1 - i):
                    if b[j]:
                        out[i + j] += a[i] * b[j]
        return TruncatedSeries(out, T)

    __rmul__ = __mul__

    def inverse(self) -> "TruncatedSeries":
        a = self.coeffs
        if a[0] == 0:
            raise ZeroDivisionError("series with zero constant term is not invertible")
        inv0 = 1 / a[0]
        b = [Fraction(0)] * (self.order + 1)
        b[0] = inv0
        for d in range(1, self.order + 1):
            s = sum((a[j] * b[d - j] for j in range(1, d + 1)), Fraction(0))
            b[d] = -s * inv0
        return TruncatedSeries(b, self.order)

    def __truediv__(self, other) -> "TruncatedSeries":
        if not isinstance(other, TruncatedSeries):
            return self * (1 / Fraction(other))
        T = self._common(other)
        return self.truncate(T) * other.truncate(T).inverse()

    def __rtruediv__(self, other) -> "TruncatedSeries":
        return self._lift(other) / self

    def __pow__(self, e: int) -> "TruncatedSeries":
        if e < 0:
            return self.inverse() ** (-e)
        out = TruncatedSeries.one(self.order)
        base = self
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out

    def log(self) -> "TruncatedSeries":
        a = self.coeffs
        if a[0] != 1:
            raise ValueError("log needs constant term 1")
        b = [Fraction(0)] * (self.order + 1)
        for d in range(1, self.order + 1):
            s = d * a[d] - sum((j * b[j] * a[d - j] for j in range(1, d)), Fraction(0))
            b[d] = s / d
        return TruncatedSeries(b, self.order)

    def exp(self) -> "TruncatedSeries":
        a = self.coeffs
        if a[0] != 0:
            raise ValueError("exp needs constant term 0")
        b = [Fraction(0)] * (self.order + 1)
        b[0] = Fraction(1)
        for d in range(1, self.order + 1):
            b[d] = sum((j * a[j] * b[d - j] for j in range(1, d + 1)), Fraction(0)) / d
        return TruncatedSeries(b, self.order)

    def root(self, r: int) -> "TruncatedSeries":
        """The unique r-th root with constant term 1."""
        if r < 1:
            raise ValueError("root index must be positive")
        if self.coeffs[0] != 1:
            raise ValueError("root needs constant term 1")
        return (self.log() * Fraction(1, r)).exp()

    def nonzero(self) -> Dict[int, Fraction]:
        return {d: c for d, c in enumerate(self.coeffs) if c}

    def to_json(self) -> dict:
        return {"order": self.order, "coeffs": {str(d): frac_str(c) for d, c in self.nonzero().items()}}

    @classmethod
    def from_json(cls, obj: Mapping) -> "TruncatedSeries":
        return cls({int(d): parse_frac(c) for d, c in obj["coeffs"].items()}, int(obj["order"]))

    def __repr__(self) -> str:
        terms = [f"{c}*t^-{d}" if d else str(c) for d, c in self.nonzero().items()]
        return f"TruncatedSeries({' + '.join(terms) or '0'}; O(t^-{self.order + 1}))"


def normalize_phi(p: Sequence[Scalar], N: int, order: int = DEFAULT_ORDER) -> TruncatedSeries:
    """t^-N * p(t) for a monic degree-N polynomial given in ascending powers."""
    p = list(p)
    while len(p) > N + 1 and p[-1] == 0:
        p.pop()
    if len(p) != N + 1 or p[N] != 1:
        raise ValueError("polynomial must be monic of degree N")
    return TruncatedSeries({N - i: c for i, c in enumerate(p)}, order)


Monomial = Tuple[int, ...]


class EdgePolynomial:
    """Sparse polynomial in the edge variables e1..em with rational coefficients."""

    __slots__ = ("nvars", "terms")

    def __init__(self, nvars: int, terms: Mapping[Monomial, Scalar] | None = None):
        self.nvars = nvars
        t: Dict[Monomial, Fraction] = {}
        for mono, c in (terms or {}).items():
            mono = tuple(mono)
            if len(mono) != nvars or any(x < 0 for x in mono):
                raise ValueError(f"bad monomial {mono}")
            c = Fraction(c)
            if c:
                t[mono] = t.get(mono, Fraction(0)) + c
                if not t[mono]:
                    del t[mono]
        self.terms = t

    @classmethod
    def constant(cls, nvars: int, c: Scalar = 1) -> "EdgePolynomial":
        return cls(nvars, {(0,) * nvars: c})

    def __add__(self, other: "EdgePolynomial") -> "EdgePolynomial":
        t = dict(self.terms)
        for m, c in other.terms.items():
            t[m] = t.get(m, Fraction(0)) + c
        return EdgePolynomial(self.nvars, t)

    def __neg__(self) -> "EdgePolynomial":
        return EdgePolynomial(self.nvars, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other: "EdgePolynomial") -> "EdgePolynomial":
        return self + (-other)

    def __mul__(self, other) -> "EdgePolynomial":
        if not isinstance(other, EdgePolynomial):
            q = Fraction(other)
            return EdgePolynomial(self.nvars, {m: c * q for m, c in self.terms.items()})
        t: Dict[Monomial, Fraction] = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = tuple(a + b for a, b in zip(m1, m2))
                t[m] = t.get(m, Fraction(0)) + c1 * c2
        return EdgePolynomial(self.nvars, t)

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        return isinstance(other, EdgePolynomial) and self.nvars == other.nvars and self.terms == other.terms

    def substitute(self, values: Mapping[int, Scalar]) -> "EdgePolynomial":
        """Set the 0-based variables in ``values``; they keep exponent 0 afterwards."""
        t: Dict[Monomial, Fraction] = {}
        for m, c in self.terms.items():
            for i, v in values.items():
                c *= Fraction(v) ** m[i] if m[i] else 1
            if c:
                mm = tuple(0 if i in values else x for i, x in enumerate(m))
                t[mm] = t.get(mm, Fraction(0)) + c
        return EdgePolynomial(self.nvars, t)

    def drop_variables(self, keep: Sequence[int]) -> "EdgePolynomial":
        """Re-index onto the variables in ``keep`` (others must have exponent 0)."""
        t = {}
        for m, c in self.terms.items():
            if any(m[i] for i in range(self.nvars) if i not in keep):
                raise ValueError("dropped variable still present")
            t[tuple(m[i] for i in keep)] = c
        return EdgePolynomial(len(keep), t)

    def evaluate(self, values: Sequence[Scalar] | None = None) -> Fraction:
        if values is None:
            return sum(self.terms.values(), Fraction(0))
        total = Fraction(0)
        for m, c in self.terms.items():
            for v, x in zip(values, m):
                c *= Fraction(v) ** x
            total += c
        return total

    @staticmethod
    def monomial_key(m: Monomial) -> str:
        return "*".join(f"e{i + 1}^{x}" for i, x in enumerate(m))

    def to_json(self) -> Dict[str, str]:
        return {self.monomial_key(m): frac_str(c) for m, c in sorted(self.terms.items(), reverse=True)}

    @classmethod
    def from_json(cls, nvars: int, obj: Mapping[str, str]) -> "EdgePolynomial":
        terms = {}
        for key, c in obj.items():
            mono = [0] * nvars
            for part in key.split("*"):
                var, exp = part.split("^")
                mono[int(var[1:]) - 1] = int(exp)
            terms[tuple(mono)] = parse_frac(c)
        return cls(nvars, terms)

    def __repr__(self) -> str:
        return f"EdgePolynomial({self.to_json()})"


def series_from_codegrees(values: Mapping[int, Scalar], order: int) -> TruncatedSeries:
    return TruncatedSeries(dict(values), order)


def sum_series(items: Iterable[TruncatedSeries], order: int) -> TruncatedSeries:
    out = TruncatedSeries((), order)
    for s in items:
        out = out + s
    return out
