"""Presented graded rings, normal forms, and the projective-bundle calculus.

A ring is a polynomial ring over a ``VarTable`` modulo "top power" rewrite
rules: each rule replaces ``var^power`` by a lower-order homogeneous
polynomial, so exhaustive rewriting plus dimension truncation reaches a
unique normal form.  This shape covers every ring needed here: truncated
polynomial rings like Q[H]/(H^(n+1)), and projective-bundle rings where the
fiber class zeta satisfies the rank-d relation

    zeta^d = -(c_1(N) zeta^(d-1) + ... + c_d(N)).

Throughout the package the fiber class of a projective bundle of lines is
named ``z`` (the first Chern class of O(1)); the exceptional-divisor class e
of a blow-up restricts to -z.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import TYPE_CHECKING, Optional, Sequence

from .gradedpoly import (
    Coeff,
    Exponent,
    GradedPoly,
    VarTable,
    series_inverse,
    truncate,
)

if TYPE_CHECKING:  # pragma: no cover
    from .bundles import BundleClass

ZETA = "z"


class ChowError(ValueError):
    """Base error for ring-level failures."""


class EmptyBundleError(ChowError):
    """A rank-0 bundle where a positive-rank one is required."""


class NoDegreeMapError(ChowError):
    """Degree asked of a ring without bounded dimension and fundamental class."""


class RingMismatchError(ChowError):
    """Operands live in different rings."""


@dataclass(frozen=True)
class RewriteRule:
    """Replace var^power by a homogeneous polynomial of the same degree.

    The replacement must have exponent < power in its own variable, so each
    application strictly lowers that exponent and rewriting terminates.
    """

    var: str
    power: int
    replacement: GradedPoly

    def __post_init__(self) -> None:
        if self.power < 1:
            raise ChowError("rule power must be >= 1")
        table = self.replacement.table
        vdeg = table.degree_of(self.var)
        if not self.replacement.is_homogeneous(self.power * vdeg):
            raise ChowError(
                f"replacement for {self.var}^{self.power} must be homogeneous "
                f"of degree {self.power * vdeg}"
            )
        if self.replacement.max_exponent(self.var) >= self.power:
            raise ChowError("replacement must lower its own variable's exponent")


class RingPresentation:
    """A graded ring given by variables, rewrite rules, and a dimension.

    dim None means unbounded (no truncation in normal forms); a bounded ring
    drops everything above its dimension.  ``fundamental`` designates the
    top-class monomial for the degree map, and ``degree_scale`` is the degree
    of that monomial's cycle (e.g. the degree of a complete-intersection
    center as a subvariety of projective space), so

        degree(a) = coefficient of fundamental in a  *  degree_scale.
    """

    __slots__ = ("table", "rules", "dim", "fundamental", "degree_scale")

    def __init__(
        self,
        table: VarTable,
        rules: Sequence[RewriteRule] = (),
        dim: Optional[int] = None,
        fundamental: Optional[Exponent] = None,
        degree_scale: Coeff = 1,
    ) -> None:
        self.table = table
        by_var = {}
        for rule in rules:
            if rule.var not in table:
                raise ChowError(f"rule variable {rule.var!r} not in table")
            if rule.replacement.table != table:
                raise ChowError("rule replacement must be over the ring's table")
            if rule.var in by_var:
                raise ChowError(f"duplicate rule for {rule.var!r}")
            by_var[rule.var] = rule
        self.rules = by_var
        if dim is not None and dim < 0:
            raise ChowError("dim must be nonnegative or None")
        self.dim = dim
        if fundamental is not None:
            fundamental = tuple(fundamental)
            if len(fundamental) != len(table):
                raise ChowError("fundamental monomial has wrong arity")
        self.fundamental = fundamental
        self.degree_scale = degree_scale

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, RingPresentation):
            return NotImplemented
        return (
            self.table == other.table
            and self.rules.keys() == other.rules.keys()
            and all(other.rules[v] == r for v, r in self.rules.items())
            and self.dim == other.dim
            and self.fundamental == other.fundamental
            and self.degree_scale == other.degree_scale
        )

    def __repr__(self) -> str:
        dims = "unbounded" if self.dim is None else str(self.dim)
        return f"RingPresentation({self.table!r}, rules on {sorted(self.rules)}, dim {dims})"

    def zero(self) -> "ChowClass":
        return ChowClass(self, GradedPoly.zero(self.table))

    def one(self) -> "ChowClass":
        return ChowClass(self, GradedPoly.one(self.table))

    def var(self, name: str) -> "ChowClass":
        return normal_form(GradedPoly.variable(self.table, name), self)


class ChowClass:
    """An element of a presented ring, stored in normal form.

    Build these through ``normal_form`` (or ring helpers); the constructor
    trusts its input.  Arithmetic re-normalizes, so classes stay canonical
    and equality is plain value equality.
    """

    __slots__ = ("ring", "value")

    def __init__(self, ring: RingPresentation, value: GradedPoly) -> None:
        self.ring = ring
        self.value = value

    def is_zero(self) -> bool:
        return self.value.is_zero()

    def _same_ring(self, other: "ChowClass") -> None:
        if self.ring != other.ring:
            raise RingMismatchError("classes live in different rings")

    def __add__(self, other: "ChowClass") -> "ChowClass":
        if not isinstance(other, ChowClass):
            return NotImplemented
        self._same_ring(other)
        return ChowClass(self.ring, self.value + other.value)

    def __sub__(self, other: "ChowClass") -> "ChowClass":
        if not isinstance(other, ChowClass):
            return NotImplemented
        self._same_ring(other)
        return ChowClass(self.ring, self.value - other.value)

    def __neg__(self) -> "ChowClass":
        return ChowClass(self.ring, -self.value)

    def __mul__(self, other: object) -> "ChowClass":
        if isinstance(other, ChowClass):
            self._same_ring(other)
            return normal_form(self.value * other.value, self.ring)
        if isinstance(other, (int, Fraction)):
            return ChowClass(self.ring, self.value * other)
        return NotImplemented

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "ChowClass":
        out = self.ring.one()
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, ChowClass):
            return NotImplemented
        return self.ring == other.ring and self.value == other.value

    def __str__(self) -> str:
        return str(self.value)

    def __repr__(self) -> str:
        return f"ChowClass({self.value})"

    def homogeneous_component(self, k: int) -> "ChowClass":
        return ChowClass(self.ring, self.value.homogeneous_component(k))


def normal_form(p: GradedPoly, R: RingPresentation) -> ChowClass:
    """Exhaustive rule application, then truncation at the ring dimension."""
    if p.table != R.table:
        raise ChowError("polynomial is over a different table than the ring")
    if R.dim is not None:
        p = truncate(p, R.dim)
    changed = True
    while changed:
        changed = False
        for name, rule in R.rules.items():
            i = R.table.index(name)
            reducible = {e: c for e, c in p.terms.items() if e[i] >= rule.power}
            if not reducible:
                continue
            keep = GradedPoly._raw(
                p.table, {e: c for e, c in p.terms.items() if e[i] < rule.power}
            )
            stripped = GradedPoly._raw(
                p.table,
                {
                    e[:i] + (e[i] - rule.power,) + e[i + 1 :]: c
                    for e, c in reducible.items()
                },
            )
            p = keep + stripped * rule.replacement
            if R.dim is not None:
                p = truncate(p, R.dim)
            changed = True
    return ChowClass(R, p)


def transfer_poly(p: GradedPoly, table: VarTable) -> GradedPoly:
    """Re-key a polynomial onto another table, matching variables by name.

    Variables absent from the target must not occur; extra target variables
    get exponent 0.  Used to move classes between a ring and its
    projective-bundle extension.
    """
    if p.table == table:
        return p
    src = p.table
    pos = []
    for name in src.names:
        pos.append(table.index(name) if name in table else None)
    out = {}
    for e, c in p.terms.items():
        new = [0] * len(table)
        for i, x in enumerate(e):
            if not x:
                continue
            j = pos[i]
            if j is None:
                raise ChowError(
                    f"variable {src.names[i]!r} does not exist in the target table"
                )
            new[j] = x
        key = tuple(new)
        if key in out:
            out[key] = out[key] + c
        else:
            out[key] = c
    return GradedPoly(table, out)


def grothendieck_rule(N: "BundleClass", zeta: str = ZETA) -> RewriteRule:
    """The defining relation of the projective bundle of lines P(N).

    For rank d:  zeta^d -> -(c_1 zeta^(d-1) + ... + c_d), over N's table
    extended by zeta when necessary.
    """
    d = N.rank
    if d == 0:
        raise EmptyBundleError("cannot projectivize a rank-0 bundle")
    base = N.ring.table
    table = base if zeta in base else base.extended([(zeta, 1)])
    repl = GradedPoly.zero(table)
    zpoly = GradedPoly.variable(table, zeta)
    for i in range(1, d + 1):
        ci = transfer_poly(N.c(i).value, table)
        if ci.max_exponent(zeta):
            raise ChowError("Chern classes of N must be free of the fiber class")
        repl = repl - ci * zpoly ** (d - i)
    return RewriteRule(var=zeta, power=d, replacement=repl)


def segre_pushforward(
    beta: ChowClass, N: "BundleClass", zeta: str = ZETA
) -> ChowClass:
    """Pushforward g_* from P(N) to the base of N.

    Linear over the base, determined by g_*(zeta^(d-1+j)) = s_j(N) with
    s(N) the inverse series of c(N); powers below d-1 push to zero.
    """
    d = N.rank
    if d == 0:
        raise EmptyBundleError("pushforward needs a positive-rank bundle")
    ringX = N.ring
    table_up = beta.value.table
    zi = table_up.index(zeta)
    by_power: dict = {}
    for e, c in beta.value.terms.items():
        k = e[zi]
        j = k - (d - 1)
        if j < 0:
            continue
        stripped = e[:zi] + (0,) + e[zi + 1 :]
        bucket = by_power.setdefault(j, {})
        if stripped in bucket:
            bucket[stripped] = bucket[stripped] + c
        else:
            bucket[stripped] = c
    if not by_power:
        return ringX.zero()
    maxj = max(by_power)
    s_total = series_inverse(N.total().value, maxj) if maxj else GradedPoly.one(ringX.table)
    out = GradedPoly.zero(ringX.table)
    for j, bucket in by_power.items():
        a_j = transfer_poly(GradedPoly(table_up, bucket), ringX.table)
        out = out + a_j * s_total.homogeneous_component(j)
    return normal_form(out, ringX)


def degree(a: ChowClass) -> Coeff:
    """Coefficient of the fundamental monomial, times the ring's cycle degree."""
    R = a.ring
    if R.dim is None or R.fundamental is None:
        raise NoDegreeMapError("ring has no bounded dimension / fundamental class")
    c = a.value.coefficient(R.fundamental)
    out = c * R.degree_scale
    if isinstance(out, Fraction) and out.denominator == 1:
        out = int(out)
    return out


def truncated_polynomial_ring(
    name: str, dim: int, degree_scale: Coeff = 1
) -> RingPresentation:
    """Q[v]/(v^(dim+1)) with fundamental class v^dim: the Chow ring of
    projective space, and the model for hyperplane-generated centers."""
    table = VarTable([(name, 1)])
    rule = RewriteRule(
        var=name, power=dim + 1, replacement=GradedPoly.zero(table)
    )
    return RingPresentation(
        table, [rule], dim=dim, fundamental=(dim,), degree_scale=degree_scale
    )
