"""Exact multivariate polynomial arithmetic with graded variables.

A polynomial is stored sparsely as a map from exponent vectors to nonzero
rational coefficients.  Every variable carries a positive integer degree
(a weight), fixed by the ``VarTable``; the total degree of a monomial is the
weighted sum of its exponents.  Degrees are weights, not exponent caps:
``truncate`` is the only size control at this layer.

Coefficients are exact: Python ints, or ``fractions.Fraction`` when a
denominator is unavoidable.  Canonical storage keeps no zero terms and
demotes integral Fractions to ints, so the common all-integer computations
stay on fast int arithmetic.
"""

from __future__ import annotations

from fractions import Fraction
from operator import add as _add_op
from typing import Iterable, Iterator, Mapping, Optional, Sequence, Tuple, Union

Exponent = Tuple[int, ...]
Coeff = Union[int, Fraction]


class GradedPolyError(ValueError):
    """Base error for this module."""


class TableMismatchError(GradedPolyError):
    """Operands do not share the same variable table."""


class NotAUnitError(GradedPolyError):
    """Series inversion requires constant term 1."""


class NotDivisibleError(GradedPolyError):
    """Exact division failed: some monomial lacks the divisor variable."""


class GradingError(GradedPolyError):
    """A substitution value is not homogeneous of the variable's degree."""


def _as_coeff(c: object) -> Coeff:
    if isinstance(c, int):
        return c
    if isinstance(c, Fraction):
        return int(c) if c.denominator == 1 else c
    raise TypeError(f"coefficient must be int or Fraction, got {type(c).__name__}")


class VarTable:
    """Ordered list of (name, degree) pairs defining the variables.

    The order is fixed at construction and defines the canonical monomial
    order.  Names must be unique and degrees must be >= 1.  Tables compare
    by value, so independently built identical tables are interchangeable.
    """

    __slots__ = ("names", "degrees", "_index")

    def __init__(self, entries: Iterable[Tuple[str, int]]) -> None:
        names = []
        degrees = []
        for name, deg in entries:
            if not isinstance(deg, int) or deg < 1:
                raise GradedPolyError(f"degree of {name!r} must be a positive integer")
            names.append(name)
            degrees.append(deg)
        if len(set(names)) != len(names):
            raise GradedPolyError("variable names must be unique")
        self.names: Tuple[str, ...] = tuple(names)
        self.degrees: Tuple[int, ...] = tuple(degrees)
        self._index = {name: i for i, name in enumerate(self.names)}

    def __len__(self) -> int:
        return len(self.names)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, VarTable):
            return NotImplemented
        return self.names == other.names and self.degrees == other.degrees

    def __hash__(self) -> int:
        return hash((self.names, self.degrees))

    def __repr__(self) -> str:
        inner = ", ".join(f"{n}:{d}" for n, d in zip(self.names, self.degrees))
        return f"VarTable({inner})"

    def __contains__(self, name: str) -> bool:
        return name in self._index

    def index(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise GradedPolyError(f"unknown variable {name!r}") from None

    def degree_of(self, name: str) -> int:
        return self.degrees[self.index(name)]

    def weighted_degree(self, expo: Exponent) -> int:
        degs = self.degrees
        return sum(e * degs[i] for i, e in enumerate(expo) if e)

    def entries(self) -> Tuple[Tuple[str, int], ...]:
        return tuple(zip(self.names, self.degrees))

    def extended(self, extra: Iterable[Tuple[str, int]]) -> "VarTable":
        """A new table with the extra variables appended."""
        return VarTable(list(self.entries()) + list(extra))

    def without(self, *names: str) -> "VarTable":
        """A new table with the named variables removed."""
        drop = set(names)
        return VarTable([(n, d) for n, d in self.entries() if n not in drop])


def _check_same_table(a: "GradedPoly", b: "GradedPoly") -> None:
    if a.table != b.table:
        raise TableMismatchError(f"tables differ: {a.table!r} vs {b.table!r}")


class GradedPoly:
    """Sparse exact polynomial over a fixed ``VarTable``.

    ``terms`` maps exponent tuples (one entry per table variable) to nonzero
    coefficients.  Instances are treated as immutable; all operations return
    new polynomials.
    """

    __slots__ = ("table", "terms")

    def __init__(self, table: VarTable, terms: Mapping[Exponent, Coeff]) -> None:
        self.table = table
        nvars = len(table)
        clean: dict = {}
        for expo, c in terms.items():
            if len(expo) != nvars:
                raise GradedPolyError(
                    f"exponent {expo} has {len(expo)} entries, table has {nvars}"
                )
            c = _as_coeff(c)
            if c:
                clean[expo] = c
        self.terms = clean

    @classmethod
    def _raw(cls, table: VarTable, terms: dict) -> "GradedPoly":
        # internal: terms already canonical (no zeros, right arity, int-normalized)
        self = cls.__new__(cls)
        self.table = table
        self.terms = terms
        return self

    @classmethod
    def zero(cls, table: VarTable) -> "GradedPoly":
        return cls._raw(table, {})

    @classmethod
    def constant(cls, table: VarTable, c: Coeff) -> "GradedPoly":
        c = _as_coeff(c)
        if not c:
            return cls.zero(table)
        return cls._raw(table, {(0,) * len(table): c})

    @classmethod
    def one(cls, table: VarTable) -> "GradedPoly":
        return cls.constant(table, 1)

    @classmethod
    def variable(cls, table: VarTable, name: str) -> "GradedPoly":
        i = table.index(name)
        expo = tuple(1 if j == i else 0 for j in range(len(table)))
        return cls._raw(table, {expo: 1})

    @classmethod
    def monomial(cls, table: VarTable, expo: Exponent, c: Coeff = 1) -> "GradedPoly":
        return cls(table, {tuple(expo): c})

    # -- queries ---------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def constant_term(self) -> Coeff:
        return self.terms.get((0,) * len(self.table), 0)

    def coefficient(self, expo: Exponent) -> Coeff:
        return self.terms.get(tuple(expo), 0)

    def total_degree(self) -> int:
        """Max weighted degree of any term; -1 for the zero polynomial."""
        if not self.terms:
            return -1
        wd = self.table.weighted_degree
        return max(wd(e) for e in self.terms)

    def homogeneous_component(self, k: int) -> "GradedPoly":
        wd = self.table.weighted_degree
        return GradedPoly._raw(
            self.table, {e: c for e, c in self.terms.items() if wd(e) == k}
        )

    def is_homogeneous(self, k: Optional[int] = None) -> bool:
        if not self.terms:
            return True
        wd = self.table.weighted_degree
        degs = {wd(e) for e in self.terms}
        if len(degs) > 1:
            return False
        return k is None or degs == {k}

    def max_exponent(self, name: str) -> int:
        """Largest exponent of the named variable across all terms."""
        i = self.table.index(name)
        return max((e[i] for e in self.terms), default=0)

    def iter_sorted(self) -> Iterator[Tuple[Exponent, Coeff]]:
        """Terms in canonical order: by weighted degree, then earlier
        variables with higher exponents first."""
        wd = self.table.weighted_degree
        for expo in sorted(self.terms, key=lambda e: (wd(e), tuple(-x for x in e))):
            yield expo, self.terms[expo]

    # -- arithmetic ------------------------------------------------------

    def __add__(self, other: "GradedPoly") -> "GradedPoly":
        if not isinstance(other, GradedPoly):
            return NotImplemented
        _check_same_table(self, other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            v = out.get(e)
            if v is None:
                out[e] = c
            else:
                v = v + c
                if v:
                    if isinstance(v, Fraction) and v.denominator == 1:
                        v = int(v)
                    out[e] = v
                else:
                    del out[e]
        return GradedPoly._raw(self.table, out)

    def __sub__(self, other: "GradedPoly") -> "GradedPoly":
        if not isinstance(other, GradedPoly):
            return NotImplemented
        return self + (-other)

    def __neg__(self) -> "GradedPoly":
        return GradedPoly._raw(self.table, {e: -c for e, c in self.terms.items()})

    def __mul__(self, other: object) -> "GradedPoly":
        if isinstance(other, GradedPoly):
            _check_same_table(self, other)
            return GradedPoly._raw(
                self.table, _mul_terms(self.terms, other.terms, self.table, None)
            )
        if isinstance(other, (int, Fraction)):
            c = _as_coeff(other)
            if not c:
                return GradedPoly.zero(self.table)
            return GradedPoly._raw(
                self.table, _canonical({e: v * c for e, v in self.terms.items()})
            )
        return NotImplemented

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "GradedPoly":
        if not isinstance(k, int) or k < 0:
            raise GradedPolyError("exponent must be a nonnegative integer")
        out = GradedPoly.one(self.table)
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, GradedPoly):
            return NotImplemented
        return self.table == other.table and self.terms == other.terms

    def __hash__(self) -> int:
        return hash((self.table, frozenset(self.terms.items())))

    # -- rendering -------------------------------------------------------

    def __str__(self) -> str:
        return render_poly(self)

    def __repr__(self) -> str:
        return f"GradedPoly({self})"


def _canonical(terms: dict) -> dict:
    out = {}
    for e, c in terms.items():
        if isinstance(c, Fraction) and c.denominator == 1:
            c = int(c)
        if c:
            out[e] = c
    return out


def _mul_terms(
    ta: Mapping[Exponent, Coeff],
    tb: Mapping[Exponent, Coeff],
    table: VarTable,
    dmax: Optional[int],
) -> dict:
    """Multiply two term maps; with a degree cap, pairs over the cap are
    skipped via a sort-and-break sweep (the hot path for truncated series)."""
    if not ta or not tb:
        return {}
    out: dict = {}
    get = out.get
    if dmax is None:
        for ea, ca in ta.items():
            for eb, cb in tb.items():
                e = tuple(map(_add_op, ea, eb))
                v = get(e)
                out[e] = ca * cb if v is None else v + ca * cb
    else:
        wd = table.weighted_degree
        items_a = sorted((wd(e), e, c) for e, c in ta.items())
        items_b = sorted((wd(e), e, c) for e, c in tb.items())
        if items_a[0][0] + items_b[0][0] > dmax:
            return {}
        for da, ea, ca in items_a:
            lim = dmax - da
            if items_b[0][0] > lim:
                break
            for db, eb, cb in items_b:
                if db > lim:
                    break
                e = tuple(map(_add_op, ea, eb))
                v = get(e)
                out[e] = ca * cb if v is None else v + ca * cb
    return _canonical(out)


def mul_truncated(a: GradedPoly, b: GradedPoly, dmax: Optional[int]) -> GradedPoly:
    """Product with all terms of weighted degree > dmax dropped."""
    _check_same_table(a, b)
    return GradedPoly._raw(a.table, _mul_terms(a.terms, b.terms, a.table, dmax))


def poly_arith(a: GradedPoly, b: Optional[GradedPoly], kind: str) -> GradedPoly:
    """Dispatch entry point: kind is one of add, sub, mul, neg."""
    if kind == "neg":
        return -a
    if b is None:
        raise GradedPolyError(f"kind {kind!r} needs two operands")
    if kind == "add":
        return a + b
    if kind == "sub":
        return a - b
    if kind == "mul":
        return a * b
    raise GradedPolyError(f"unknown kind {kind!r}")


def truncate(a: GradedPoly, dmax: int) -> GradedPoly:
    """Drop all monomials of weighted total degree > dmax."""
    if dmax < 0:
        return GradedPoly.zero(a.table)
    wd = a.table.weighted_degree
    return GradedPoly._raw(a.table, {e: c for e, c in a.terms.items() if wd(e) <= dmax})


def series_inverse(a: GradedPoly, dmax: int) -> GradedPoly:
    """Inverse of a power series with constant term 1, truncated at dmax.

    Writes a = 1 + u and accumulates the geometric series
    1 - u + u^2 - ... ; u has positive degree, so the loop stops after at
    most dmax rounds.
    """
    if a.constant_term() != 1:
        raise NotAUnitError(f"constant term is {a.constant_term()}, need 1")
    table = a.table
    one_expo = (0,) * len(table)
    neg_u = {e: -c for e, c in truncate(a, dmax).terms.items() if e != one_expo}
    acc = {one_expo: 1}
    p = dict(neg_u)
    k = 1
    while p and k <= dmax:
        for e, c in p.items():
            v = acc.get(e)
            if v is None:
                acc[e] = c
            else:
                v = v + c
                if v:
                    acc[e] = v
                else:
                    del acc[e]
        p = _mul_terms(p, neg_u, table, dmax)
        k += 1
    return GradedPoly._raw(table, _canonical(acc))


def exact_div_by_var(a: GradedPoly, name: str) -> GradedPoly:
    """Divide by a variable that must occur in every monomial."""
    i = a.table.index(name)
    out = {}
    for e, c in a.terms.items():
        if e[i] < 1:
            raise NotDivisibleError(
                f"monomial with exponents {e} has no factor {name!r}"
            )
        out[e[:i] + (e[i] - 1,) + e[i + 1 :]] = c
    return GradedPoly._raw(a.table, out)


def subst(
    a: GradedPoly,
    assignment: Mapping[str, GradedPoly],
    table: Optional[VarTable] = None,
) -> GradedPoly:
    """Simultaneous substitution of polynomials for variables.

    Each replacement must be homogeneous of the replaced variable's degree,
    so the grading is preserved.  Variables without an assignment must exist
    (with the same degree) in the target table and map to themselves.  The
    target table is taken from the replacements, from the ``table`` argument,
    or defaults to a's own table.
    """
    if table is None:
        for v in assignment.values():
            table = v.table
            break
        else:
            table = a.table
    # validate and build images only for variables that actually occur
    occurring = set()
    for expo in a.terms:
        for i, e in enumerate(expo):
            if e:
                occurring.add(i)
    images: dict = {}
    for i in sorted(occurring):
        name = a.table.names[i]
        deg = a.table.degrees[i]
        if name in assignment:
            img = assignment[name]
            if img.table != table:
                raise TableMismatchError(
                    f"replacement for {name!r} is over a different table"
                )
            if not img.is_homogeneous(deg):
                raise GradingError(
                    f"replacement for {name!r} must be homogeneous of degree {deg}"
                )
            images[i] = img
        else:
            if name not in table or table.degree_of(name) != deg:
                raise TableMismatchError(
                    f"variable {name!r} (degree {deg}) missing from target table"
                )
            images[i] = GradedPoly.variable(table, name)
    # cache powers of each image as needed
    pow_cache = {i: [GradedPoly.one(table)] for i in images}
    out = GradedPoly.zero(table)
    for expo, c in a.terms.items():
        term = GradedPoly.constant(table, c)
        for i, e in enumerate(expo):
            if not e:
                continue
            cache = pow_cache[i]
            while len(cache) <= e:
                cache.append(cache[-1] * images[i])
            term = term * cache[e]
        out = out + term
    return out


def render_coeff(c: Coeff) -> str:
    if isinstance(c, Fraction):
        return f"{c.numerator}/{c.denominator}"
    return str(c)


def render_poly(a: GradedPoly) -> str:
    """Canonical text form, e.g. ``1 + 3*H + 4*H^2``.

    Terms follow the canonical order; coefficients print as p/q with q > 0
    and /1 omitted; unit coefficients are dropped next to a variable part.
    """
    if a.is_zero():
        return "0"
    names = a.table.names
    pieces = []
    for expo, c in a.iter_sorted():
        factors = []
        for i, e in enumerate(expo):
            if e == 1:
                factors.append(names[i])
            elif e > 1:
                factors.append(f"{names[i]}^{e}")
        neg = c < 0
        mag = -c if neg else c
        if factors and mag == 1:
            body = "*".join(factors)
        elif factors:
            body = render_coeff(mag) + "*" + "*".join(factors)
        else:
            body = render_coeff(mag)
        pieces.append((neg, body))
    first_neg, first_body = pieces[0]
    text = ("-" if first_neg else "") + first_body
    for neg, body in pieces[1:]:
        text += (" - " if neg else " + ") + body
    return text


def parse_poly(text: str, table: VarTable) -> GradedPoly:
    """Parse the canonical text form (and modest variations of it).

    Accepts sums of terms ``[+-] coeff * v1^e1 * v2 ...`` with integer or
    p/q coefficients.  This is the inverse of ``render_poly`` on its output
    and is used by the scenario/service layer to read ring elements.
    """
    s = text.strip()
    if not s:
        raise GradedPolyError("empty polynomial text")
    if s == "0":
        return GradedPoly.zero(table)
    # split into signed chunks at top level (no parentheses supported)
    chunks: list = []
    cur = []
    sign = 1
    i = 0
    # leading sign
    if s[0] in "+-":
        sign = -1 if s[0] == "-" else 1
        i = 1
    while i < len(s):
        ch = s[i]
        if ch in "+-":
            chunks.append((sign, "".join(cur).strip()))
            cur = []
            sign = -1 if ch == "-" else 1
        else:
            cur.append(ch)
        i += 1
    chunks.append((sign, "".join(cur).strip()))
    total = GradedPoly.zero(table)
    for sgn, chunk in chunks:
        if not chunk:
            raise GradedPolyError(f"dangling sign in {text!r}")
        coeff: Coeff = 1
        expo = [0] * len(table)
        for factor in chunk.split("*"):
            factor = factor.strip()
            if not factor:
                raise GradedPolyError(f"empty factor in {text!r}")
            if factor[0].isdigit():
                if "/" in factor:
                    num, den = factor.split("/", 1)
                    coeff = coeff * Fraction(int(num), int(den))
                else:
                    coeff = coeff * int(factor)
            else:
                if "^" in factor:
                    name, e_text = factor.split("^", 1)
                    e = int(e_text)
                else:
                    name, e = factor, 1
                expo[table.index(name.strip())] += e
        total = total + GradedPoly.monomial(table, tuple(expo), sgn * coeff)
    return total
