"""Blow-up class calculus.

Models the square

        Xt --j--> Yt
        |g        |f
        X  --i--> Y

of a blow-up f along a regularly embedded center of codimension d, with
exceptional divisor Xt = P(N) over the center.  Classes on the blow-up are
kept in the pair form  f*(y_part) + j_*(x_part), with x_part living in the
projective-bundle ring of the normal bundle N.  The module provides:

  * the correction class alpha and the classical total-class formula,
  * twisted operators (formal expressions in the fiber class and the
    Chern classes of a normal and an excess bundle) together with the
    evaluation rule turning them into maps on blow-up classes,
  * four total-class formulas (projective-bundle quotient form, global
    complete-intersection form, tautological-restriction form, and
    split line-bundle form), and the proper-transform operator,
  * pushforward, restriction, and pair-characterized equality,
  * the verification suite for the universal identities.

Sign conventions, fixed once: z denotes c_1(O(1)) on P(N); the class e of
the exceptional divisor restricts to -z (so c_1 of the divisor line bundle
is -z and its inverse has c_1 = +z); the fiber class satisfies the rank-d
projective-bundle relation.  A formal operator expression F0 + F+ (split by
z-degree) acts on a pulled-back class f*b by

    y_part:  (caller-supplied interpretation of F0) * b,
    x_part:  -(F+/z)(restricted arguments) * g*(i*(b)),

which realizes "each m*z^k term contributes j_*(-z^(k-1) * m * g*i*b)".
"""

import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Dict, List, Mapping, Optional, Sequence, Tuple

from .bundles import BundleClass, tensor_line
from .chowring import (
    ChowClass,
    ChowError,
    RewriteRule,
    RingPresentation,
    ZETA,
    grothendieck_rule,
    normal_form,
    segre_pushforward,
    transfer_poly,
)
from .gradedpoly import (
    GradedPoly,
    NotDivisibleError,
    VarTable,
    exact_div_by_var,
    mul_truncated,
    series_inverse,
    subst,
    truncate,
)


class BlowupError(ChowError):
    """Base for blow-up calculus errors."""


class InternalConsistencyError(BlowupError):
    """An identity that must hold by construction failed (wrong relation or sign)."""


class ContextMismatchError(BlowupError):
    """Operands belong to different blow-up contexts or rings."""


class ScenarioMismatchError(BlowupError):
    """Supplied global data is inconsistent with the context's center data."""


class MissingMapError(BlowupError):
    """The context lacks the pullback/pushforward needed for this operation."""


class OperatorDomainError(BlowupError):
    """Twisted operators act on pulled-back classes only."""


# ---------------------------------------------------------------------------
# contexts and pair classes
# ---------------------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class BlowupContext:
    """All the data of one blow-up diagram.

    ringY and ringX model the base and the center; N is the rank-d normal
    bundle over ringX; pull_i and push_i implement i* and i_*; ringXt is
    ringX extended by the fiber class z with the rank-d projective-bundle
    relation.  dmax bounds every truncated expansion (total-class formulas
    divide by 1 - z, so expansions are cut off; identities compared at
    equal dmax are exact degree by degree).  Because j_* raises degree by
    one, x_parts are kept to degree dmax - 1: the pair then represents the
    blow-up class completely through degree dmax.
    """

    ringY: RingPresentation
    ringX: RingPresentation
    d: int
    N: BundleClass
    pull_i: Callable[[ChowClass], ChowClass]
    push_i: Optional[Callable[[ChowClass], ChowClass]]
    ringXt: RingPresentation
    dmax: int

    def __post_init__(self) -> None:
        if self.d < 1:
            raise BlowupError("codimension must be at least 1")
        if self.N.rank != self.d:
            raise BlowupError("normal bundle rank must equal the codimension")
        if self.N.ring != self.ringX:
            raise ContextMismatchError("normal bundle must live on the center ring")
        if ZETA not in self.ringXt.table:
            raise BlowupError(f"ringXt must contain the fiber class {ZETA!r}")
        if ZETA not in self.ringXt.rules:
            raise BlowupError("ringXt must carry the projective-bundle relation")
        if self.dmax < 0:
            raise BlowupError("dmax must be nonnegative")

    # -- constructors for pair classes ---------------------------------

    def f_pull(self, b: ChowClass) -> "BlowupClass":
        """f*(b) as a pair class."""
        return BlowupClass(self, b, self.ringXt.zero())

    def j_push(self, beta: ChowClass) -> "BlowupClass":
        """j_*(beta) as a pair class."""
        return BlowupClass(self, self.ringY.zero(), beta)

    # -- ring plumbing -------------------------------------------------

    def xt_class(self, p: GradedPoly) -> ChowClass:
        """Truncate at dmax and reduce into ringXt."""
        return normal_form(truncate(p, self.dmax), self.ringXt)

    def x_class(self, p: GradedPoly) -> ChowClass:
        """Truncate to an x_part (degree dmax - 1) and reduce into ringXt."""
        return normal_form(truncate(p, max(self.dmax - 1, 0)), self.ringXt)

    def embed_x(self, c: ChowClass) -> ChowClass:
        """A class on the center, viewed in ringXt."""
        if c.ring != self.ringX:
            raise ContextMismatchError("class does not live on the center ring")
        return self.xt_class(transfer_poly(c.value, self.ringXt.table))

    def pull_to_exc(self, b: ChowClass) -> ChowClass:
        """g*(i*(b)): restrict a base class to the exceptional divisor."""
        if b.ring != self.ringY:
            raise ContextMismatchError("class does not live on the base ring")
        return self.embed_x(self.pull_i(b))

    def pull_var_images(self) -> Dict[str, GradedPoly]:
        """Images in ringXt of every base-ring variable under g* i*.

        Substituting these into a formal expression over the base table
        implements restriction of its coefficients to the exceptional
        divisor (the restriction is a ring map, so variable images
        determine it).
        """
        images: Dict[str, GradedPoly] = {}
        for name in self.ringY.table.names:
            cls = self.pull_i(self.ringY.var(name))
            images[name] = transfer_poly(cls.value, self.ringXt.table)
        return images


class BlowupClass:
    """A class on the blow-up in pair form  f*(y_part) + j_*(x_part).

    The representation is not unique (pushforwards from the exceptional
    divisor can also be written as pulled-back classes); two pair classes
    are compared with bl_equal, never with ==.
    """

    __slots__ = ("ctx", "y_part", "x_part")

    def __init__(self, ctx: BlowupContext, y_part: ChowClass, x_part: ChowClass) -> None:
        if y_part.ring != ctx.ringY:
            raise ContextMismatchError("y_part must live in the base ring")
        if x_part.ring != ctx.ringXt:
            raise ContextMismatchError("x_part must live in the exceptional ring")
        self.ctx = ctx
        self.y_part = y_part
        self.x_part = x_part

    def _same_ctx(self, other: "BlowupClass") -> None:
        if self.ctx is not other.ctx:
            raise ContextMismatchError("pair classes belong to different contexts")

    def __add__(self, other: "BlowupClass") -> "BlowupClass":
        if not isinstance(other, BlowupClass):
            return NotImplemented
        self._same_ctx(other)
        return BlowupClass(self.ctx, self.y_part + other.y_part, self.x_part + other.x_part)

    def __sub__(self, other: "BlowupClass") -> "BlowupClass":
        if not isinstance(other, BlowupClass):
            return NotImplemented
        self._same_ctx(other)
        return BlowupClass(self.ctx, self.y_part - other.y_part, self.x_part - other.x_part)

    def __neg__(self) -> "BlowupClass":
        return BlowupClass(self.ctx, -self.y_part, -self.x_part)

    def __mul__(self, other: object) -> "BlowupClass":
        if isinstance(other, BlowupClass):
            self._same_ctx(other)
            ctx = self.ctx
            y = self.y_part * other.y_part
            gy_self = ctx.pull_to_exc(self.y_part).value
            gy_other = ctx.pull_to_exc(other.y_part).value
            zp = GradedPoly.variable(ctx.ringXt.table, ZETA)
            cross = mul_truncated(gy_self, other.x_part.value, ctx.dmax) + mul_truncated(
                gy_other, self.x_part.value, ctx.dmax
            )
            # j_* x * j_* x' = j_*((-z) x x'): self-intersection of the divisor
            selfint = mul_truncated(
                zp, mul_truncated(self.x_part.value, other.x_part.value, ctx.dmax), ctx.dmax
            )
            return BlowupClass(ctx, y, ctx.x_class(cross - selfint))
        if isinstance(other, (int, Fraction)):
            return BlowupClass(self.ctx, self.y_part * other, self.x_part * other)
        return NotImplemented

    __rmul__ = __mul__

    def __repr__(self) -> str:
        return f"BlowupClass(y_part={self.y_part.value}, x_part={self.x_part.value})"


# ---------------------------------------------------------------------------
# twisted operators
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class TwistedOperator:
    """A formal operator expression, split by fiber-class degree.

    expr = f0 + fplus exactly; f0 is free of the fiber class z, and every
    monomial of fplus has z-degree at least 1.  d and e_excess record the
    ranks of the normal-direction and excess bundles the expression was
    built from; twist records the sign choice of the excess-bundle
    line-twist when one was made ("-e" twists by the inverse of the
    exceptional-divisor bundle, "+e" by the bundle itself).
    """

    d: int
    e_excess: int
    expr: GradedPoly
    f0: GradedPoly
    fplus: GradedPoly
    twist: Optional[str] = None

    @classmethod
    def from_expr(
        cls,
        d: int,
        e_excess: int,
        expr: GradedPoly,
        twist: Optional[str] = None,
    ) -> "TwistedOperator":
        if ZETA not in expr.table:
            raise BlowupError(
                f"operator expressions must live over a table containing {ZETA!r}"
            )
        zi = expr.table.index(ZETA)
        f0 = GradedPoly._raw(
            expr.table, {e: c for e, c in expr.terms.items() if e[zi] == 0}
        )
        fplus = GradedPoly._raw(
            expr.table, {e: c for e, c in expr.terms.items() if e[zi] > 0}
        )
        return cls(d=d, e_excess=e_excess, expr=expr, f0=f0, fplus=fplus, twist=twist)


def _free_ring(table: VarTable) -> RingPresentation:
    return RingPresentation(table)


def _embed_bundle(E: BundleClass, ring: RingPresentation) -> BundleClass:
    """The same bundle data, re-keyed onto a larger free table."""
    comps = tuple(
        ChowClass(ring, transfer_poly(c.value, ring.table)) for c in E.chern
    )
    return BundleClass(E.rank, comps)


def _twisted_total(E: BundleClass, ell: GradedPoly, table: VarTable) -> GradedPoly:
    """Total class of E tensored by a line class ell, over the given table."""
    ring = _free_ring(table)
    twisted = tensor_line(_embed_bundle(E, ring), ChowClass(ring, ell))
    return twisted.total().value


def apply_twisted_operator(
    op: TwistedOperator,
    ctx: BlowupContext,
    a: BlowupClass,
    f0_class: ChowClass,
    var_images: Optional[Mapping[str, GradedPoly]] = None,
) -> BlowupClass:
    """Evaluate a twisted operator on a pulled-back class a = f*(b).

    f0_class is the caller's interpretation of the z-free part as a class
    on the base (it is prescribed case by case by each total-class formula
    and never inferred).  var_images optionally maps the expression's
    non-fiber variables to their restrictions in ringXt; by default the
    variables are taken verbatim (they must then exist in ringXt).  The
    z-positive part contributes

        x_part = -(F+/z)(images) * g*(i*(b)),

    with the exact division by z performed before any ring reduction.
    """
    if a.ctx is not ctx:
        raise ContextMismatchError("class does not belong to the given context")
    if not a.x_part.is_zero():
        raise OperatorDomainError(
            "twisted operators act on pulled-back classes (x_part must vanish)"
        )
    if f0_class.ring != ctx.ringY:
        raise ContextMismatchError("f0_class must live in the base ring")
    b = a.y_part
    y = f0_class * b

    table = ctx.ringXt.table
    if var_images:
        restricted = subst(op.fplus, dict(var_images), table)
    elif op.fplus.table == table:
        restricted = op.fplus
    else:
        restricted = subst(op.fplus, {}, table)
    try:
        quot = exact_div_by_var(restricted, ZETA)
    except NotDivisibleError as exc:
        raise InternalConsistencyError(
            "z-positive part of an operator failed exact division by z"
        ) from exc
    gib = ctx.pull_to_exc(b).value
    x = ctx.x_class(-mul_truncated(quot, gib, ctx.dmax))
    return BlowupClass(ctx, y, x)


# ---------------------------------------------------------------------------
# the correction class and the four total-class formulas
# ---------------------------------------------------------------------------


def porteous_alpha(ctx: BlowupContext) -> ChowClass:
    """The universal correction class alpha in ringXt.

    alpha = (1/z) [ sum_i c_(d-i)(N)  -  (1-z) sum_i (1+z)^i c_(d-i)(N) ],

    with the division performed exactly on the raw bracket BEFORE the
    projective-bundle relation is applied (the bracket vanishes at z = 0,
    so the division is exact; anything else indicates a wrong relation or
    sign and raises InternalConsistencyError).
    """
    table = ctx.ringXt.table
    zp = GradedPoly.variable(table, ZETA)
    one = GradedPoly.one(table)
    cs = [transfer_poly(ctx.N.c(i).value, table) for i in range(ctx.d + 1)]
    total = GradedPoly.zero(table)
    shifted = GradedPoly.zero(table)
    for i in range(ctx.d + 1):
        total = total + cs[ctx.d - i]
        shifted = shifted + (one + zp) ** i * cs[ctx.d - i]
    bracket = total - (one - zp) * shifted
    try:
        quot = exact_div_by_var(bracket, ZETA)
    except NotDivisibleError as exc:
        raise InternalConsistencyError(
            "correction-class bracket is not divisible by z"
        ) from exc
    return ctx.xt_class(quot)


def porteous_delta(ctx: BlowupContext, cX: ChowClass) -> BlowupClass:
    """The classical total-class correction  j_*(g*(cX) * alpha).

    Adding f*(cY) to this gives the blow-up's total class when cX and cY
    are the total tangent classes of center and base.
    """
    if cX.ring != ctx.ringX:
        raise ContextMismatchError("cX must live on the center ring")
    alpha = porteous_alpha(ctx)
    gx = transfer_poly(cX.value, ctx.ringXt.table)
    x = ctx.x_class(mul_truncated(gx, alpha.value, ctx.dmax))
    return ctx.j_push(x)


def main_normal_chern(ctx: BlowupContext, C: BundleClass) -> TwistedOperator:
    """Normal-bundle operator of the blow-up inside its projective bundle.

    expr = c(N) * c(C tensor L) / (1 - z)  truncated at dmax, where L is
    the inverse of the exceptional-divisor bundle (c_1(L) = +z) and the
    denominator is the divisor bundle itself.  The z-free part is
    c(N) c(C); its interpretation on the base is the total class of the
    ambient bundle E (rank d + rank C) and is supplied by the caller at
    application time.
    """
    if C.ring != ctx.ringX:
        raise ContextMismatchError("excess bundle must live on the center ring")
    table = ctx.ringXt.table
    zp = GradedPoly.variable(table, ZETA)
    n_total = transfer_poly(ctx.N.total().value, table)
    c_tw = _twisted_total(C, zp, table)
    geom = series_inverse(GradedPoly.one(table) - zp, ctx.dmax)
    expr = mul_truncated(mul_truncated(n_total, c_tw, ctx.dmax), geom, ctx.dmax)
    return TwistedOperator.from_expr(ctx.d, C.rank, expr, twist="-e")


def simlem_operator(
    Nhat: BundleClass, Chat: BundleClass, ctx: BlowupContext
) -> TwistedOperator:
    """Operator form of the globally-defined normal-bundle formula.

    The expression c(N-hat) * c(C-hat tensor L) / (1 - z) lives over the
    base table extended by the fiber class; its coefficients restrict to
    the exceptional divisor at application time through the context's
    variable images.  Requires N-hat to restrict to the context's normal
    bundle.
    """
    if Nhat.ring != ctx.ringY or Chat.ring != ctx.ringY:
        raise ContextMismatchError("global bundles must live on the base ring")
    if Nhat.rank != ctx.d:
        raise ScenarioMismatchError(
            "global normal-direction bundle must have rank equal to the codimension"
        )
    for i in range(1, ctx.d + 1):
        if ctx.pull_i(Nhat.c(i)) != ctx.N.c(i):
            raise ScenarioMismatchError(
                f"global bundle does not restrict to the center's normal bundle (c_{i})"
            )
    if ZETA in ctx.ringY.table:
        raise BlowupError(f"base table may not contain the fiber class {ZETA!r}")
    table = ctx.ringY.table.extended([(ZETA, 1)])
    zp = GradedPoly.variable(table, ZETA)
    n_total = transfer_poly(Nhat.total().value, table)
    c_tw = _twisted_total(Chat, zp, table)
    geom = series_inverse(GradedPoly.one(table) - zp, ctx.dmax)
    expr = mul_truncated(mul_truncated(n_total, c_tw, ctx.dmax), geom, ctx.dmax)
    return TwistedOperator.from_expr(ctx.d, Chat.rank, expr, twist="-e")


def simlem_normal_chern(
    Nhat: BundleClass, Chat: BundleClass, ctx: BlowupContext
) -> BlowupClass:
    """Normal-bundle class from globally defined bundles.

    When the bundles N-hat and C-hat live on the whole base and restrict
    to the context's N and to the excess bundle, the normal-bundle class
    of the blow-up is

        c(f* N-hat) * c(f* C-hat tensor L) / (1 - z)   applied to [Yt],

    evaluated with the standard operator semantics; the base-variable
    coefficients restrict through g* i*.
    """
    op = simlem_operator(Nhat, Chat, ctx)
    f0_class = Nhat.total() * Chat.total()
    return apply_twisted_operator(
        op,
        ctx,
        ctx.f_pull(ctx.ringY.one()),
        f0_class,
        var_images=ctx.pull_var_images(),
    )


def oldrec_operator(ctx: BlowupContext) -> TwistedOperator:
    """Total-class operator  (1 - z) * c(N tensor O(1)) / c(N).

    Its z-free part is exactly 1 (so it acts on f*(cY) as the identity
    plus a correction supported on the exceptional divisor).
    """
    table = ctx.ringXt.table
    zp = GradedPoly.variable(table, ZETA)
    n_total = transfer_poly(ctx.N.total().value, table)
    n_tw = _twisted_total(ctx.N, zp, table)
    inv_n = series_inverse(n_total, ctx.dmax)
    expr = mul_truncated(
        mul_truncated(GradedPoly.one(table) - zp, n_tw, ctx.dmax), inv_n, ctx.dmax
    )
    op = TwistedOperator.from_expr(ctx.d, 0, expr)
    if op.f0 != GradedPoly.one(table):
        raise InternalConsistencyError("total-class operator must have z-free part 1")
    return op


def oldrec_total_chern(ctx: BlowupContext, cY: ChowClass) -> BlowupClass:
    """Total class of the blow-up from the tautological-restriction form,
    acting on f*(cY)."""
    op = oldrec_operator(ctx)
    return apply_twisted_operator(op, ctx, ctx.f_pull(cY), ctx.ringY.one())


def difflp_operator(
    ctx: BlowupContext, Zclasses: Sequence[ChowClass]
) -> TwistedOperator:
    """Total-class operator for a center cut out by d hypersurface classes.

    With w_i = g* i* (Z_i), the operator is

        (1 - z) * prod_i (1 + w_i + z) / prod_i (1 + w_i),

    the divisor-exchange form: each hypersurface is traded against the
    exceptional divisor (whose class contributes -z under restriction).
    Requires prod_i (1 + w_i) to agree with c(N).
    """
    if len(Zclasses) != ctx.d:
        raise ContextMismatchError(
            f"need exactly {ctx.d} hypersurface classes, got {len(Zclasses)}"
        )
    table = ctx.ringXt.table
    zp = GradedPoly.variable(table, ZETA)
    one = GradedPoly.one(table)
    ws = []
    for Z in Zclasses:
        if Z.ring != ctx.ringY:
            raise ContextMismatchError("hypersurface classes must live on the base ring")
        if not Z.value.is_homogeneous(1):
            raise ScenarioMismatchError("hypersurface classes must be homogeneous of degree 1")
        ws.append(transfer_poly(ctx.pull_i(Z).value, table))
    denom = one
    num = one - zp
    for w in ws:
        denom = mul_truncated(denom, one + w, ctx.dmax)
        num = mul_truncated(num, one + w + zp, ctx.dmax)
    n_total = transfer_poly(ctx.N.total().value, table)
    if ctx.xt_class(denom) != ctx.xt_class(n_total):
        raise ScenarioMismatchError(
            "hypersurface classes do not multiply out to the normal bundle's total class"
        )
    expr = mul_truncated(num, series_inverse(denom, ctx.dmax), ctx.dmax)
    op = TwistedOperator.from_expr(ctx.d, 0, expr)
    if op.f0 != one:
        raise InternalConsistencyError("divisor-exchange operator must have z-free part 1")
    return op


def difflp_total_chern(
    ctx: BlowupContext, Zclasses: Sequence[ChowClass], cY: ChowClass
) -> BlowupClass:
    """Total class of the blow-up from the divisor-exchange form, acting
    on f*(cY)."""
    op = difflp_operator(ctx, Zclasses)
    return apply_twisted_operator(op, ctx, ctx.f_pull(cY), ctx.ringY.one())


def newnormal_chern(
    NXW: BundleClass, C: BundleClass, twist: str = "-e"
) -> TwistedOperator:
    """Proper-transform normal-bundle operator  c(N) * c(C tensor L).

    N here is the normal bundle of the center inside the second center W,
    and C is the excess bundle of the fiber square; both live on one ring.
    L is the inverse exceptional-divisor bundle for twist "-e" (c_1 = +z,
    the default) or the divisor bundle itself for twist "+e" (c_1 = -z).
    The z-free part is c(N) c(C), whose base interpretation is the total
    class of the ambient normal bundle.  No division occurs, so the
    expression is a finite polynomial.
    """
    if twist not in ("+e", "-e"):
        raise BlowupError(f"twist must be '+e' or '-e', got {twist!r}")
    if NXW.ring != C.ring:
        raise ContextMismatchError("both bundles must live on one ring")
    base = NXW.ring.table
    table = base if ZETA in base else base.extended([(ZETA, 1)])
    zp = GradedPoly.variable(table, ZETA)
    ell = zp if twist == "-e" else -zp
    n_total = transfer_poly(NXW.total().value, table)
    expr = n_total * _twisted_total(C, ell, table)
    return TwistedOperator.from_expr(NXW.rank, C.rank, expr, twist=twist)


# ---------------------------------------------------------------------------
# pushforward, restriction, equality
# ---------------------------------------------------------------------------


def bl_pushforward(a: BlowupClass) -> ChowClass:
    """f_*(a) = y_part + i_*(g_*(x_part)), a class on the base."""
    ctx = a.ctx
    if ctx.push_i is None:
        raise MissingMapError("context has no pushforward i_*")
    pushed = segre_pushforward(a.x_part, ctx.N)
    return a.y_part + ctx.push_i(pushed)


def bl_restrict(a: BlowupClass) -> ChowClass:
    """j*(a) = g*(i*(y_part)) - z * x_part, a class in ringXt.

    Uses j*(f*(b)) = g*(i*(b)) and the self-intersection rule
    j*(j_*(beta)) = -z * beta.
    """
    ctx = a.ctx
    zp = GradedPoly.variable(ctx.ringXt.table, ZETA)
    restricted_x = ctx.xt_class(-mul_truncated(zp, a.x_part.value, ctx.dmax))
    return ctx.pull_to_exc(a.y_part) + restricted_x


def bl_equal(a: BlowupClass, b: BlowupClass) -> bool:
    """Equality of blow-up classes through the (f_*, j*) pair.

    Classes on the blow-up are characterized by their pushforward to the
    base together with their restriction to the exceptional divisor, so
    this decides equality despite the non-unique pair representation.
    """
    if a.ctx is not b.ctx:
        raise ContextMismatchError("pair classes belong to different contexts")
    return bl_pushforward(a) == bl_pushforward(b) and bl_restrict(a) == bl_restrict(b)


# ---------------------------------------------------------------------------
# universal contexts
# ---------------------------------------------------------------------------


def universal_context(d: int, e_excess: int = 0, dmax: Optional[int] = None) -> BlowupContext:
    """The generic context: formal Chern variables and a free hyperplane.

    Base variables:  H (degree 1), n_1..n_d (the normal bundle's Chern
    classes, degree i), q_1..q_e (excess classes, degree j), and xc
    (degree d), the class of the center itself, i.e. i_*(1).  The center
    ring drops xc; restriction sends xc to n_d (self-intersection), and
    pushforward multiplies by xc, with xc^2 = n_d * xc making the
    projection formula exact on generators.
    """
    if d < 1:
        raise BlowupError("codimension must be at least 1")
    if e_excess < 0:
        raise BlowupError("excess rank must be nonnegative")
    entries: List[Tuple[str, int]] = [("H", 1)]
    entries += [(f"n{i}", i) for i in range(1, d + 1)]
    entries += [(f"q{j}", j) for j in range(1, e_excess + 1)]
    tableX = VarTable(entries)
    ringX = RingPresentation(tableX)
    tableY = tableX.extended([("xc", d)])
    xc = GradedPoly.variable(tableY, "xc")
    nd_y = GradedPoly.variable(tableY, f"n{d}")
    ringY = RingPresentation(tableY, [RewriteRule("xc", 2, nd_y * xc)])
    one_x = ringX.one()
    comps = (one_x,) + tuple(ringX.var(f"n{i}") for i in range(1, d + 1))
    N = BundleClass(d, comps)
    ringXt = RingPresentation(
        tableX.extended([(ZETA, 1)]), [grothendieck_rule(N)]
    )
    nd_x = GradedPoly.variable(tableX, f"n{d}")

    def pull_i(c: ChowClass) -> ChowClass:
        return normal_form(subst(c.value, {"xc": nd_x}, tableX), ringX)

    def push_i(c: ChowClass) -> ChowClass:
        lifted = transfer_poly(c.value, tableY)
        return normal_form(lifted * xc, ringY)

    return BlowupContext(
        ringY=ringY,
        ringX=ringX,
        d=d,
        N=N,
        pull_i=pull_i,
        push_i=push_i,
        ringXt=ringXt,
        dmax=2 * d + 2 if dmax is None else dmax,
    )


def difflp_context(d: int, dmax: Optional[int] = None) -> BlowupContext:
    """The generic split context: the normal bundle comes as d line classes.

    Base variables Z_1..Z_d (hypersurface classes) and xc = i_*(1);
    center variables z_1..z_d with Z_i restricting to z_i, so the normal
    bundle's total class is prod_i (1 + z_i) and xc restricts to
    z_1 * ... * z_d.
    """
    if d < 1:
        raise BlowupError("codimension must be at least 1")
    tableX = VarTable([(f"z{i}", 1) for i in range(1, d + 1)])
    ringX = RingPresentation(tableX)
    total = GradedPoly.one(tableX)
    for i in range(1, d + 1):
        total = total * (
            GradedPoly.one(tableX) + GradedPoly.variable(tableX, f"z{i}")
        )
    N = BundleClass.from_total(ringX, ChowClass(ringX, total), d)
    tableY = VarTable([(f"Z{i}", 1) for i in range(1, d + 1)] + [("xc", d)])
    top_y = GradedPoly.monomial(tableY, (1,) * d + (1,), 1)  # Z_1...Z_d * xc
    ringY = RingPresentation(tableY, [RewriteRule("xc", 2, top_y)])
    ringXt = RingPresentation(
        tableX.extended([(ZETA, 1)]), [grothendieck_rule(N)]
    )
    top_x = GradedPoly.monomial(tableX, (1,) * d, 1)  # z_1...z_d
    pull_images = {f"Z{i}": GradedPoly.variable(tableX, f"z{i}") for i in range(1, d + 1)}
    pull_images["xc"] = top_x
    push_images = {f"z{i}": GradedPoly.variable(tableY, f"Z{i}") for i in range(1, d + 1)}
    xc = GradedPoly.variable(tableY, "xc")

    def pull_i(c: ChowClass) -> ChowClass:
        return normal_form(subst(c.value, pull_images, tableX), ringX)

    def push_i(c: ChowClass) -> ChowClass:
        lifted = subst(c.value, push_images, tableY)
        return normal_form(lifted * xc, ringY)

    return BlowupContext(
        ringY=ringY,
        ringX=ringX,
        d=d,
        N=N,
        pull_i=pull_i,
        push_i=push_i,
        ringXt=ringXt,
        dmax=2 * d + 2 if dmax is None else dmax,
    )


# ---------------------------------------------------------------------------
# verification reports and the identity suite
# ---------------------------------------------------------------------------


@dataclass
class VerificationReport:
    """Outcome of one exact check: name, inputs, verdict, and residual.

    The residual is the canonical string of the difference that should
    have vanished ("0" on success), so a sign error is diagnosable from
    the report alone.
    """

    check: str
    parameters: Dict[str, object] = field(default_factory=dict)
    passed: bool = False
    residual: str = "0"
    elapsed_ms: int = 0

    def to_json_dict(self) -> Dict[str, object]:
        return {
            "check": self.check,
            "parameters": dict(self.parameters),
            "pass": self.passed,
            "residual": self.residual,
            "elapsed_ms": self.elapsed_ms,
        }

    def to_text(self) -> str:
        verdict = "PASS" if self.passed else "FAIL"
        params = ", ".join(f"{k}={v}" for k, v in self.parameters.items())
        line = f"[{verdict}] {self.check}" + (f" ({params})" if params else "")
        if not self.passed and self.residual != "0":
            line += f"\n    residual: {self.residual}"
        return line


def _finish(
    check: str,
    parameters: Dict[str, object],
    passed: bool,
    residual: str,
    t0: float,
) -> VerificationReport:
    return VerificationReport(
        check=check,
        parameters=parameters,
        passed=passed,
        residual=residual,
        elapsed_ms=int(round((time.perf_counter() - t0) * 1000)),
    )


def _pair_residual(a: BlowupClass, b: BlowupClass) -> str:
    """Canonical string of the first nonvanishing pair difference."""
    push = bl_pushforward(a) - bl_pushforward(b)
    if not push.is_zero():
        return str(push.value)
    restr = bl_restrict(a) - bl_restrict(b)
    if not restr.is_zero():
        return str(restr.value)
    return "0"


def verify_pushforward_identity(d: int) -> VerificationReport:
    """g_*(alpha_d) = (d - 1) * 1 in the generic context.

    This is the universal form of 'the pushed-forward total class gains
    (d-1) times the center's class'.
    """
    t0 = time.perf_counter()
    ctx = universal_context(d)
    alpha = porteous_alpha(ctx)
    pushed = segre_pushforward(alpha, ctx.N)
    expected = ctx.ringX.one() * (d - 1)
    residual = pushed - expected
    return _finish(
        "pushforward-identity",
        {"d": d},
        residual.is_zero(),
        "0" if residual.is_zero() else str(residual.value),
        t0,
    )


def verify_restriction_identity(d: int) -> VerificationReport:
    """g*c(N) - z * alpha_d = (1 - z) * c(N tensor O(1)) in the generic
    context (both sides reduced by the projective-bundle relation)."""
    t0 = time.perf_counter()
    ctx = universal_context(d)
    alpha = porteous_alpha(ctx)
    table = ctx.ringXt.table
    zp = GradedPoly.variable(table, ZETA)
    n_total = transfer_poly(ctx.N.total().value, table)
    lhs = ctx.xt_class(n_total - zp * alpha.value)
    rhs_raw = (GradedPoly.one(table) - zp) * _twisted_total(ctx.N, zp, table)
    rhs = ctx.xt_class(rhs_raw)
    residual = lhs - rhs
    return _finish(
        "restriction-identity",
        {"d": d},
        residual.is_zero(),
        "0" if residual.is_zero() else str(residual.value),
        t0,
    )


def verify_oldrec_equals_porteous(d: int, eE: int) -> VerificationReport:
    """The tautological-restriction form recovers the classical formula.

    Two layers, both exact:
      1. expression level: c(N tensor O(1)) c(C tensor O(1)) / (normal-
         bundle operator of rank-eE ambient) equals the total-class
         operator, with every excess class cancelling;
      2. class level: acting on each basis class f*(H^k), the operator
         result equals f*(H^k) + j_*(g*(i*(H^k) s(N)) * alpha).
    """
    if d < 1 or eE < d:
        raise BlowupError("need rank eE >= d >= 1")
    t0 = time.perf_counter()
    e_excess = eE - d
    ctx = universal_context(d, e_excess)
    C = BundleClass(
        e_excess,
        (ctx.ringX.one(),) + tuple(ctx.ringX.var(f"q{j}") for j in range(1, e_excess + 1)),
    )
    mainop = main_normal_chern(ctx, C)
    oldop = oldrec_operator(ctx)
    table = ctx.ringXt.table
    zp = GradedPoly.variable(table, ZETA)
    ambient = mul_truncated(
        _twisted_total(ctx.N, zp, table), _twisted_total(C, zp, table), ctx.dmax
    )
    lhs = mul_truncated(ambient, series_inverse(mainop.expr, ctx.dmax), ctx.dmax)
    diff = lhs - oldop.expr
    if not diff.is_zero():
        return _finish(
            "oldrec-vs-porteous", {"d": d, "eE": eE}, False, str(diff), t0
        )
    s_poly = series_inverse(ctx.N.total().value, ctx.dmax)
    Hx = GradedPoly.variable(ctx.ringX.table, "H")
    Hy = GradedPoly.variable(ctx.ringY.table, "H")
    one_y = ctx.ringY.one()
    for k in range(ctx.dmax + 1):
        cY = ChowClass(ctx.ringY, Hy**k)
        a = apply_twisted_operator(oldop, ctx, ctx.f_pull(cY), one_y)
        cX = normal_form(truncate(Hx**k * s_poly, ctx.dmax), ctx.ringX)
        b = ctx.f_pull(cY) + porteous_delta(ctx, cX)
        if not bl_equal(a, b):
            return _finish(
                "oldrec-vs-porteous",
                {"d": d, "eE": eE, "basis_power": k},
                False,
                _pair_residual(a, b),
                t0,
            )
    return _finish("oldrec-vs-porteous", {"d": d, "eE": eE}, True, "0", t0)


def verify_difflp_equals_porteous(d: int) -> VerificationReport:
    """The divisor-exchange form recovers the classical formula when the
    normal bundle's Chern classes are the elementary symmetric functions
    of the hypersurface classes."""
    if d < 1:
        raise BlowupError("codimension must be at least 1")
    t0 = time.perf_counter()
    ctx = difflp_context(d)
    Zs = [ctx.ringY.var(f"Z{i}") for i in range(1, d + 1)]
    s_poly = series_inverse(ctx.N.total().value, ctx.dmax)
    cases = [ctx.ringY.one()]
    if d <= 3:
        span = ctx.ringY.one()
        for Z in Zs:
            span = span * (ctx.ringY.one() + Z)
        cases.append(span)
    for cY in cases:
        a = difflp_total_chern(ctx, Zs, cY)
        cX = normal_form(
            truncate(
                mul_truncated(ctx.pull_i(cY).value, s_poly, ctx.dmax), ctx.dmax
            ),
            ctx.ringX,
        )
        b = ctx.f_pull(cY) + porteous_delta(ctx, cX)
        if not bl_equal(a, b):
            return _finish(
                "difflp-vs-porteous", {"d": d}, False, _pair_residual(a, b), t0
            )
    return _finish("difflp-vs-porteous", {"d": d}, True, "0", t0)


def verify_newnormal_extremes(dprime: int, e: int) -> VerificationReport:
    """Degenerate specializations of the proper-transform operator.

    Checks, with the default twist:
      * the z-free part is the product of the two total classes,
      * zero excess bundle: no z-terms at all (the two centers meet the
        base properly, the normal bundle pulls back untwisted),
      * zero normal part: the expression is exactly the excess bundle
        twisted by the inverse exceptional-divisor bundle (c_1 = +z),
      * for dprime >= 1, dividing the projective-bundle normal operator
        by the divisor bundle: expr * (1 - z) of the former equals the
        proper-transform expression, as truncated polynomials.
    """
    if dprime < 0 or e < 0:
        raise BlowupError("ranks must be nonnegative")
    t0 = time.perf_counter()
    entries = [(f"n{i}", i) for i in range(1, dprime + 1)]
    entries += [(f"q{j}", j) for j in range(1, e + 1)]
    entries += [("_t", 1)]  # spare degree-1 slot so the table is never empty
    ring = RingPresentation(VarTable(entries))
    one = ring.one()
    NXW = BundleClass(
        dprime, (one,) + tuple(ring.var(f"n{i}") for i in range(1, dprime + 1))
    )
    C = BundleClass(e, (one,) + tuple(ring.var(f"q{j}") for j in range(1, e + 1)))
    op = newnormal_chern(NXW, C)
    table = op.expr.table
    params: Dict[str, object] = {"d_prime": dprime, "e": e, "twist": op.twist}

    product = transfer_poly((NXW.total() * C.total()).value, table)
    if op.f0 != product:
        return _finish(
            "newnormal-extremes", params, False, str(op.f0 - product), t0
        )

    proper = newnormal_chern(NXW, BundleClass.trivial(ring, 0))
    expected_proper = transfer_poly(NXW.total().value, proper.expr.table)
    if not proper.fplus.is_zero() or proper.expr != expected_proper:
        return _finish(
            "newnormal-extremes",
            params,
            False,
            str(proper.expr - expected_proper),
            t0,
        )

    contained = newnormal_chern(BundleClass.trivial(ring, 0), C)
    zp = GradedPoly.variable(contained.expr.table, ZETA)
    expected_contained = _twisted_total(C, zp, contained.expr.table)
    if contained.expr != expected_contained:
        return _finish(
            "newnormal-extremes",
            params,
            False,
            str(contained.expr - expected_contained),
            t0,
        )

    if dprime >= 1:
        ctx = universal_context(dprime, e)
        Cu = BundleClass(
            e,
            (ctx.ringX.one(),)
            + tuple(ctx.ringX.var(f"q{j}") for j in range(1, e + 1)),
        )
        mainop = main_normal_chern(ctx, Cu)
        nop = newnormal_chern(ctx.N, Cu)
        tbl = ctx.ringXt.table
        zu = GradedPoly.variable(tbl, ZETA)
        lhs = mul_truncated(mainop.expr, GradedPoly.one(tbl) - zu, ctx.dmax)
        rhs = truncate(nop.expr, ctx.dmax)
        if lhs != rhs:
            return _finish(
                "newnormal-extremes", params, False, str(lhs - rhs), t0
            )

    return _finish("newnormal-extremes", params, True, "0", t0)
