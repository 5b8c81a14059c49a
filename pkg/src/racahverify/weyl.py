"""Sparse normal-ordered differential operators: the noncommutative core.

An operator in m variables is a sparse sum of normal-ordered monomials

    x1^a1 .. xm^am  d1^b1 .. dm^bm        (all positions left of all
                                           derivatives, indices ascending)

stored as a dict from the concatenated exponent tuple (a1..am, b1..bm) to a
ParamPoly coefficient.  Derivative exponents are non-negative.  Position
exponents may be negative for variables declared localized in the
signature; that is what makes 1/x^2 potential terms first-class citizens.

Multiplication renormal-orders with the per-variable rule

    d^b x^k = sum_{s=0..b} C(b,s) * k(k-1)...(k-s+1) * x^(k-s) d^(b-s)

whose falling factorial is valid for negative k as well; distinct
variables commute.  Because the representation is canonical (no zero
terms, exponent-vector keys), operator equality is decidable by
subtraction.

Application of an operator to a (Laurent) polynomial test function is
implemented by direct differentiation, deliberately independent of the
multiplication kernel, so the two can cross-check each other.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import comb
from typing import Iterable, Mapping, Sequence, Union

from .coeff import ParamPoly

CoeffLike = Union[int, Fraction, ParamPoly]


@dataclass(frozen=True)
class AlgebraSignature:
    """Fixes the algebra an operator lives in.

    num_vars:  number of position variables (same count of derivatives).
    localized: 1-based indices of variables allowed negative position
               exponents.
    params:    ordered names of the coefficient parameters a1..ak.
    """

    num_vars: int
    localized: frozenset[int] = field(default_factory=frozenset)
    params: tuple[str, ...] = ()

    def __post_init__(self):
        if self.num_vars < 1:
            raise ValueError("num_vars must be positive")
        object.__setattr__(self, "localized", frozenset(self.localized))
        object.__setattr__(self, "params", tuple(self.params))
        if not all(1 <= i <= self.num_vars for i in self.localized):
            raise ValueError("localized indices must lie in 1..num_vars")

    @property
    def nparams(self) -> int:
        return len(self.params)

    def check_monomial(self, xexp: Sequence[int], dexp: Sequence[int]) -> None:
        if len(xexp) != self.num_vars or len(dexp) != self.num_vars:
            raise ValueError("exponent vector length differs from num_vars")
        for i, b in enumerate(dexp):
            if b < 0:
                raise ValueError(f"negative derivative exponent d{i + 1}^{b}")
        for i, a in enumerate(xexp):
            if a < 0 and (i + 1) not in self.localized:
                raise ValueError(
                    f"negative position exponent x{i + 1}^{a} on a non-localized variable"
                )

    def coeff(self, value: CoeffLike) -> ParamPoly:
        if isinstance(value, ParamPoly):
            if value.nparams != self.nparams:
                raise ValueError(
                    f"coefficient arity {value.nparams} differs from signature arity {self.nparams}"
                )
            return value
        return ParamPoly.const(self.nparams, value)

    def param(self, index: int) -> ParamPoly:
        """The coefficient polynomial a_index (1-based)."""
        return ParamPoly.param(self.nparams, index)


@lru_cache(maxsize=None)
def _falling(k: int, s: int) -> int:
    """k(k-1)...(k-s+1); defined for every integer k, zero when 0 <= k < s."""
    out = 1
    for t in range(s):
        out *= k - t
    return out


@lru_cache(maxsize=None)
def _reorder_options(b: int, k: int) -> tuple[tuple[int, int], ...]:
    """Nonzero (s, C(b,s)*falling(k,s)) pairs for moving d^b past x^k."""
    return tuple(
        (s, f) for s in range(b + 1) if (f := comb(b, s) * _falling(k, s))
    )


def _mul_terms(
    m: int,
    aterms: Mapping[tuple, ParamPoly],
    bterms: Mapping[tuple, ParamPoly],
) -> dict[tuple, dict[tuple, Fraction]]:
    """Multiply two canonical term maps; returns mono -> {pexp: coeff}.

    Accumulates into a flat dict keyed by (monomial, parameter exponent)
    so the massive cancellations in commutators happen during the sweep,
    not in a post-pass.
    """
    acc: dict[tuple, Fraction] = {}
    acc_get = acc.get
    bitems = list(bterms.items())
    for ma, ca in aterms.items():
        da_nonzero = [i for i in range(m) if ma[m + i]]
        ca_items = list(ca.terms.items())
        for mb, cb in bitems:
            # cross products of the two coefficient polynomials
            if len(ca_items) == 1 and len(cb.terms) == 1:
                (pa, fa), = ca_items
                (pb, fb), = cb.terms.items()
                if any(pa) or any(pb):
                    pa = tuple(x + y for x, y in zip(pa, pb))
                cpairs = ((pa, fa * fb),)
            else:
                cross: dict[tuple, Fraction] = {}
                for pa, fa in ca_items:
                    for pb, fb in cb.terms.items():
                        pe = tuple(x + y for x, y in zip(pa, pb))
                        v = cross.get(pe)
                        cross[pe] = fa * fb if v is None else v + fa * fb
                cpairs = tuple(cross.items())

            base = [x + y for x, y in zip(ma, mb)]
            active = [i for i in da_nonzero if mb[i]]
            if not active:
                mono = tuple(base)
                for pe, q in cpairs:
                    key = (mono, pe)
                    v = acc_get(key)
                    acc[key] = q if v is None else v + q
                continue
            option_lists = [_reorder_options(ma[m + i], mb[i]) for i in active]
            for combo in itertools.product(*option_lists):
                factor = 1
                mono_list = base[:]
                for i, (s, f) in zip(active, combo):
                    factor *= f
                    if s:
                        mono_list[i] -= s
                        mono_list[m + i] -= s
                mono = tuple(mono_list)
                for pe, q in cpairs:
                    key = (mono, pe)
                    v = acc_get(key)
                    acc[key] = q * factor if v is None else v + q * factor
    grouped: dict[tuple, dict[tuple, Fraction]] = {}
    for (mono, pe), q in acc.items():
        if q:
            grouped.setdefault(mono, {})[pe] = q
    return grouped


def _wrap_terms(nparams: int, grouped: dict[tuple, dict[tuple, Fraction]]) -> dict[tuple, ParamPoly]:
    out = {}
    for mono, d in grouped.items():
        p = ParamPoly.__new__(ParamPoly)
        p.nparams = nparams
        p.terms = d
        out[mono] = p
    return out


class Operator:
    """Immutable sparse operator in canonical normal-ordered form.

    ``terms`` maps the concatenated exponent tuple to a nonzero ParamPoly;
    callers must never mutate it.
    """

    __slots__ = ("sig", "terms")

    def __init__(self, sig: AlgebraSignature, terms: Mapping[tuple, ParamPoly] | None = None):
        self.sig = sig
        self.terms = {mo: c for mo, c in terms.items() if c} if terms else {}

    # -- constructors ------------------------------------------------------

    @classmethod
    def zero(cls, sig: AlgebraSignature) -> Operator:
        return cls(sig)

    @classmethod
    def constant(cls, sig: AlgebraSignature, value: CoeffLike) -> Operator:
        c = sig.coeff(value)
        if not c:
            return cls(sig)
        return cls(sig, {(0,) * (2 * sig.num_vars): c})

    @classmethod
    def monomial(
        cls,
        sig: AlgebraSignature,
        xexp: Sequence[int],
        dexp: Sequence[int],
        coeff: CoeffLike = 1,
    ) -> Operator:
        sig.check_monomial(xexp, dexp)
        c = sig.coeff(coeff)
        if not c:
            return cls(sig)
        return cls(sig, {tuple(xexp) + tuple(dexp): c})

    @classmethod
    def x(cls, sig: AlgebraSignature, index: int, power: int = 1) -> Operator:
        """x_index^power (1-based index; negative power needs localization)."""
        xe = [0] * sig.num_vars
        xe[_check_index(sig, index) - 1] = power
        return cls.monomial(sig, xe, [0] * sig.num_vars)

    @classmethod
    def d(cls, sig: AlgebraSignature, index: int, power: int = 1) -> Operator:
        """d_index^power (1-based index)."""
        de = [0] * sig.num_vars
        de[_check_index(sig, index) - 1] = power
        return cls.monomial(sig, [0] * sig.num_vars, de)

    # -- queries -----------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def term_count(self) -> int:
        return len(self.terms)

    def derivative_degree(self) -> int:
        """Largest total derivative degree over all terms (0 for zero)."""
        m = self.sig.num_vars
        return max((sum(mo[m:]) for mo in self.terms), default=0)

    def constant_value(self) -> ParamPoly:
        """Coefficient of the identity monomial (the rest must vanish)."""
        ident = (0,) * (2 * self.sig.num_vars)
        for mo in self.terms:
            if mo != ident:
                raise ValueError(f"operator is not a multiple of the identity: {self}")
        return self.terms.get(ident, ParamPoly(self.sig.nparams))

    # -- arithmetic --------------------------------------------------------

    def _check_sig(self, other: Operator) -> None:
        if self.sig != other.sig:
            raise ValueError("operators live in different algebra signatures")

    def __add__(self, other: Operator) -> Operator:
        if not isinstance(other, Operator):
            return NotImplemented
        self._check_sig(other)
        out = dict(self.terms)
        for mo, c in other.terms.items():
            s = out.get(mo)
            if s is None:
                out[mo] = c
            else:
                s = s + c
                if s:
                    out[mo] = s
                else:
                    del out[mo]
        op = Operator.__new__(Operator)
        op.sig = self.sig
        op.terms = out
        return op

    def __neg__(self) -> Operator:
        op = Operator.__new__(Operator)
        op.sig = self.sig
        op.terms = {mo: -c for mo, c in self.terms.items()}
        return op

    def __sub__(self, other: Operator) -> Operator:
        return self + (-other)

    def __mul__(self, other: Union[Operator, CoeffLike]) -> Operator:
        if isinstance(other, Operator):
            self._check_sig(other)
            grouped = _mul_terms(self.sig.num_vars, self.terms, other.terms)
            op = Operator.__new__(Operator)
            op.sig = self.sig
            op.terms = _wrap_terms(self.sig.nparams, grouped)
            return op
        return self.scale(other)

    def __rmul__(self, other: CoeffLike) -> Operator:
        return self.scale(other)

    def __truediv__(self, other: int | Fraction) -> Operator:
        return self.scale(Fraction(1, 1) / other)

    def scale(self, value: CoeffLike) -> Operator:
        c = self.sig.coeff(value)
        if not c:
            return Operator(self.sig)
        return Operator(self.sig, {mo: co * c for mo, co in self.terms.items()})

    def __pow__(self, n: int) -> Operator:
        if n < 0:
            raise ValueError("negative operator powers are not defined")
        out = Operator.constant(self.sig, 1)
        for _ in range(n):
            out = out * self
        return out

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Operator):
            return NotImplemented
        if self.sig != other.sig:
            return False
        return (self - other).is_zero()

    __hash__ = None

    def specialize_params(self, values: Sequence[Fraction | int]) -> Operator:
        """Substitute numbers for the coefficient parameters.

        Returns an operator over the parameter-free signature with the
        same variables and localization.
        """
        if len(values) != self.sig.nparams:
            raise ValueError("need one value per parameter")
        new_sig = AlgebraSignature(self.sig.num_vars, self.sig.localized, ())
        out: dict[tuple, ParamPoly] = {}
        for mo, c in self.terms.items():
            v = c.evaluate(values)
            if v:
                out[mo] = ParamPoly.const(0, v)
        op = Operator.__new__(Operator)
        op.sig = new_sig
        op.terms = out
        return op

    # -- action on test functions -------------------------------------------

    def apply(self, f: Polynomial) -> Polynomial:
        """Act on a (Laurent) polynomial by direct differentiation.

        Independent of the multiplication kernel on purpose: this is the
        semantic oracle the normal-ordering rule is checked against.
        """
        if self.sig != f.sig:
            raise ValueError("operator and polynomial signatures differ")
        m = self.sig.num_vars
        acc: dict[tuple, Fraction] = {}
        for mo, ca in self.terms.items():
            xa, da = mo[:m], mo[m:]
            dvars = [i for i in range(m) if da[i]]
            for k, cf in f.terms.items():
                factor = 1
                for i in dvars:
                    factor *= _falling(k[i], da[i])
                    if not factor:
                        break
                if not factor:
                    continue
                newexp = tuple(k[i] - da[i] + xa[i] for i in range(m))
                for pa, fa in ca.terms.items():
                    for pb, fb in cf.terms.items():
                        pe = tuple(x + y for x, y in zip(pa, pb)) if (any(pa) or any(pb)) else pa
                        key = (newexp, pe)
                        v = acc.get(key)
                        q = fa * fb * factor
                        acc[key] = q if v is None else v + q
        grouped: dict[tuple, dict[tuple, Fraction]] = {}
        for (xe, pe), q in acc.items():
            if q:
                grouped.setdefault(xe, {})[pe] = q
        return Polynomial(self.sig, _wrap_terms(self.sig.nparams, grouped), _trusted=True)

    # -- printing ------------------------------------------------------------

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        m = self.sig.num_vars
        parts = []
        for mo in sorted(self.terms, key=lambda mo: (sum(mo), mo), reverse=True):
            factors = [_coeff_str(self.terms[mo])]
            for i in range(m):
                if mo[i]:
                    factors.append(f"x{i + 1}" + (f"^{mo[i]}" if mo[i] != 1 else ""))
            for i in range(m):
                if mo[m + i]:
                    factors.append(f"d{i + 1}" + (f"^{mo[m + i]}" if mo[m + i] != 1 else ""))
            parts.append(" * ".join(factors))
        return " + ".join(parts)

    def __repr__(self) -> str:
        return f"Operator({self.sig.num_vars} vars, {len(self.terms)} terms)"


def _check_index(sig: AlgebraSignature, index: int) -> int:
    if not 1 <= index <= sig.num_vars:
        raise ValueError(f"variable index {index} out of range 1..{sig.num_vars}")
    return index


def _coeff_str(c: ParamPoly) -> str:
    if c.is_constant():
        v = c.constant_value()
        return str(v) if v > 0 else f"({v})"
    return f"({c})"


def commutator(a: Operator, b: Operator) -> Operator:
    """[a, b] = ab - ba."""
    return a * b - b * a


def anticommutator(a: Operator, b: Operator) -> Operator:
    """{a, b} = ab + ba."""
    return a * b + b * a


class Polynomial:
    """(Laurent) polynomial in the position variables, ParamPoly coefficients.

    The value type operators act on; also the oracle's test functions.
    """

    __slots__ = ("sig", "terms")

    def __init__(
        self,
        sig: AlgebraSignature,
        terms: Mapping[tuple, ParamPoly] | None = None,
        _trusted: bool = False,
    ):
        self.sig = sig
        if terms and not _trusted:
            for xe in terms:
                sig.check_monomial(xe, (0,) * sig.num_vars)
            terms = {xe: c for xe, c in terms.items() if c}
        self.terms = dict(terms) if terms else {}

    @classmethod
    def zero(cls, sig: AlgebraSignature) -> Polynomial:
        return cls(sig)

    @classmethod
    def monomial(cls, sig: AlgebraSignature, xexp: Sequence[int], coeff: CoeffLike = 1) -> Polynomial:
        c = sig.coeff(coeff)
        xe = tuple(xexp)
        sig.check_monomial(xe, (0,) * sig.num_vars)
        return cls(sig, {xe: c} if c else {}, _trusted=True)

    def is_zero(self) -> bool:
        return not self.terms

    def __add__(self, other: Polynomial) -> Polynomial:
        if self.sig != other.sig:
            raise ValueError("polynomials live in different signatures")
        out = dict(self.terms)
        for xe, c in other.terms.items():
            s = out.get(xe)
            if s is None:
                out[xe] = c
            else:
                s = s + c
                if s:
                    out[xe] = s
                else:
                    del out[xe]
        return Polynomial(self.sig, out, _trusted=True)

    def __neg__(self) -> Polynomial:
        return Polynomial(self.sig, {xe: -c for xe, c in self.terms.items()}, _trusted=True)

    def __sub__(self, other: Polynomial) -> Polynomial:
        return self + (-other)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.sig == other.sig and (self - other).is_zero()

    __hash__ = None

    def evaluate(self, coords: Sequence[Fraction], params: Sequence[Fraction] = ()) -> Fraction:
        """Exact value at a rational point; localized coordinates must be nonzero."""
        if len(coords) != self.sig.num_vars:
            raise ValueError("coordinate count differs from num_vars")
        total = Fraction(0)
        for xe, c in self.terms.items():
            v = c.evaluate(params)
            for x, k in zip(coords, xe):
                if k:
                    v = v * Fraction(x) ** k
            total += v
        return total

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for xe in sorted(self.terms, key=lambda e: (sum(e), e), reverse=True):
            factors = [_coeff_str(self.terms[xe])]
            for i, k in enumerate(xe):
                if k:
                    factors.append(f"x{i + 1}" + (f"^{k}" if k != 1 else ""))
            parts.append(" * ".join(factors))
        return " + ".join(parts)

    def __repr__(self) -> str:
        return f"Polynomial({self.sig.num_vars} vars, {len(self.terms)} terms)"


# -- parsing -----------------------------------------------------------------


def _split_top(text: str, sep: str) -> list[str]:
    """Split on sep occurrences outside parentheses."""
    parts = []
    depth = 0
    start = 0
    i = 0
    n = len(text)
    while i < n:
        ch = text[i]
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
            if depth < 0:
                raise ValueError(f"unbalanced parentheses in {text!r}")
        elif depth == 0 and text.startswith(sep, i):
            parts.append(text[start:i])
            i += len(sep)
            start = i
            continue
        i += 1
    if depth:
        raise ValueError(f"unbalanced parentheses in {text!r}")
    parts.append(text[start:])
    return parts


def parse_operator(text: str, sig: AlgebraSignature) -> Operator:
    """Parse the textual format produced by ``str(Operator)``."""
    from .coeff import parse_param_poly

    text = text.strip()
    if text == "0":
        return Operator.zero(sig)
    m = sig.num_vars
    total = Operator.zero(sig)
    for term in _split_top(text, " + "):
        term = term.strip()
        factors = [f.strip() for f in _split_top(term, " * ")]
        head = factors[0]
        if head.startswith("(") and head.endswith(")"):
            coeff = parse_param_poly(head[1:-1], sig.nparams)
        elif head[0] in "+-0123456789":
            coeff = ParamPoly.const(sig.nparams, Fraction(head))
        else:
            raise ValueError(f"term {term!r} must start with a coefficient")
        xe = [0] * m
        de = [0] * m
        for factor in factors[1:]:
            if not factor or factor[0] not in "xd":
                raise ValueError(f"cannot parse factor {factor!r}")
            name, _, power = factor.partition("^")
            idx = int(name[1:])
            if not 1 <= idx <= m:
                raise ValueError(f"variable index {idx} out of range 1..{m}")
            k = int(power) if power else 1
            if factor[0] == "x":
                xe[idx - 1] += k
            else:
                de[idx - 1] += k
        total = total + Operator.monomial(sig, xe, de, coeff)
    return total
