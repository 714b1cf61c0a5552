"""Concrete projective-space scenarios and their blow-up invariants.

A scenario is a projective ambient P^n together with a center that is
either a linear subspace P^m or a smooth complete intersection of d
hypersurfaces of degrees a_1..a_d (a linear center is the special case
of all degrees 1).  The Chow rings are the honest truncated polynomial
rings

    A(P^n)   = Q[H] / (H^(n+1)),
    A(X)     = Q[h] / (h^(dimX+1))   with cycle degree  prod a_i,

with i*(H) = h and i_*(h^k) = (prod a_i) H^(d+k).  The center's normal
bundle is the direct sum of the restricted hypersurface bundles, so its
total class is prod (1 + a_i h), and the center's tangent class follows
by adjunction.  Smoothness and transversality of the hypersurfaces are
assumed, not verified: genericity is not decidable from the degrees.

This module turns the operator calculus into checkable integers: Euler
characteristics of blow-ups via the degree map, the fiberwise Euler
identity chi(blow-up) = chi(P^n) + (d-1) chi(X), and exact agreement of
the independent total-class routes on a catalog of scenarios.
"""

from __future__ import annotations

import json
import random
import time
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple, Union

from .blowup import (
    BlowupClass,
    BlowupContext,
    BlowupError,
    VerificationReport,
    _finish,
    _pair_residual,
    apply_twisted_operator,
    bl_equal,
    bl_pushforward,
    difflp_total_chern,
    main_normal_chern,
    porteous_delta,
    simlem_normal_chern,
)
from .bundles import BundleClass
from .chowring import (
    ChowClass,
    RewriteRule,
    RingPresentation,
    ZETA,
    degree,
    grothendieck_rule,
    normal_form,
    truncated_polynomial_ring,
)
from .gradedpoly import GradedPoly, mul_truncated, series_inverse, subst, truncate

__all__ = [
    "CATALOG",
    "CICenter",
    "LinearCenter",
    "Scenario",
    "ScenarioError",
    "ambient_tangent_chern",
    "blowup_total_chern",
    "catalog_by_label",
    "center_degrees",
    "center_euler",
    "center_tangent_chern",
    "difflp_agreement_check",
    "euler_identity_check",
    "scenario_context",
    "scenario_from_dict",
    "scenario_from_json",
    "simlem_agreement_check",
]


class ScenarioError(BlowupError):
    """The scenario parameters or their serialized form are invalid."""


@dataclass(frozen=True)
class LinearCenter:
    """A linear subspace P^m of the ambient P^n."""

    dim: int

    def to_dict(self) -> Dict[str, object]:
        return {"type": "linear", "dim": self.dim}


@dataclass(frozen=True)
class CICenter:
    """A smooth transversal complete intersection of hypersurfaces.

    Smoothness and transversality are assumptions on the caller's side;
    only the degrees enter the computation.
    """

    degrees: Tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "degrees", tuple(self.degrees))

    def to_dict(self) -> Dict[str, object]:
        return {"type": "ci", "degrees": list(self.degrees)}


Center = Union[LinearCenter, CICenter]


@dataclass(frozen=True)
class Scenario:
    """One ambient projective space with one blow-up center."""

    ambient_dim: int
    center: Center
    label: str

    def __post_init__(self) -> None:
        n = self.ambient_dim
        if n < 1:
            raise ScenarioError("ambient dimension must be at least 1")
        c = self.center
        if isinstance(c, LinearCenter):
            if not 0 <= c.dim < n:
                raise ScenarioError(
                    f"linear center needs 0 <= dim < {n}, got {c.dim}"
                )
        elif isinstance(c, CICenter):
            if not 1 <= len(c.degrees) <= n:
                raise ScenarioError(
                    f"complete intersection needs 1..{n} hypersurfaces, "
                    f"got {len(c.degrees)}"
                )
            if any(a < 1 for a in c.degrees):
                raise ScenarioError("hypersurface degrees must be positive")
        else:
            raise ScenarioError(f"unknown center type {type(c).__name__}")

    @property
    def codim(self) -> int:
        if isinstance(self.center, LinearCenter):
            return self.ambient_dim - self.center.dim
        return len(self.center.degrees)

    @property
    def center_dim(self) -> int:
        return self.ambient_dim - self.codim

    def to_dict(self) -> Dict[str, object]:
        return {
            "ambient_dim": self.ambient_dim,
            "center": self.center.to_dict(),
            "label": self.label,
        }


def center_degrees(s: Scenario) -> Tuple[int, ...]:
    """Hypersurface degrees cutting out the center (all 1 for linear)."""
    if isinstance(s.center, LinearCenter):
        return (1,) * s.codim
    return s.center.degrees


def scenario_from_dict(data: object) -> Scenario:
    """Deserialize {"ambient_dim", "center", "label"}; raises ScenarioError."""
    if not isinstance(data, dict):
        raise ScenarioError("scenario document must be a JSON object")
    try:
        n = data["ambient_dim"]
        raw = data["center"]
    except KeyError as exc:
        raise ScenarioError(f"scenario is missing field {exc.args[0]!r}") from None
    label = data.get("label", "")
    if not isinstance(n, int) or isinstance(n, bool):
        raise ScenarioError("ambient_dim must be an integer")
    if not isinstance(raw, dict) or "type" not in raw:
        raise ScenarioError("center must be an object with a 'type' field")
    kind = raw["type"]
    if kind == "linear":
        m = raw.get("dim")
        if not isinstance(m, int) or isinstance(m, bool):
            raise ScenarioError("linear center needs an integer 'dim'")
        center: Center = LinearCenter(m)
    elif kind == "ci":
        degs = raw.get("degrees")
        if not isinstance(degs, list) or not all(
            isinstance(a, int) and not isinstance(a, bool) for a in degs
        ):
            raise ScenarioError("ci center needs a list of integer 'degrees'")
        center = CICenter(tuple(degs))
    else:
        raise ScenarioError(f"unknown center type {kind!r}")
    if not isinstance(label, str):
        raise ScenarioError("label must be a string")
    return Scenario(ambient_dim=n, center=center, label=label)


def scenario_from_json(text: str) -> Scenario:
    """Parse a scenario document; raises ScenarioError on malformed input."""
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ScenarioError(f"scenario file is not valid JSON: {exc}") from None
    return scenario_from_dict(data)


# ---------------------------------------------------------------------------
# contexts and tangent classes
# ---------------------------------------------------------------------------


def scenario_context(s: Scenario) -> BlowupContext:
    """The blow-up context of a scenario, over honest truncated rings.

    ringY = Q[H]/(H^(n+1)); ringX = Q[h]/(h^(dimX+1)) with cycle degree
    prod a_i; the normal bundle has total class prod (1 + a_i h); the
    fiber ring carries both the h-truncation and the projective-bundle
    relation and is bounded by the exceptional divisor's dimension n-1.
    Expansions are cut at dmax = n, the top degree visible on the base.
    """
    n = s.ambient_dim
    d = s.codim
    dim_x = s.center_dim
    degs = center_degrees(s)
    scale = 1
    for a in degs:
        scale *= a

    ringY = truncated_polynomial_ring("H", n)
    ringX = truncated_polynomial_ring("h", dim_x, degree_scale=scale)
    h = GradedPoly.variable(ringX.table, "h")
    total = GradedPoly.one(ringX.table)
    for a in degs:
        total = total * (GradedPoly.one(ringX.table) + a * h)
    N = BundleClass.from_total(ringX, normal_form(total, ringX), d)

    tableXt = ringX.table.extended([(ZETA, 1)])
    trunc_rule = RewriteRule("h", dim_x + 1, GradedPoly.zero(tableXt))
    ringXt = RingPresentation(
        tableXt, [trunc_rule, grothendieck_rule(N)], dim=n - 1
    )

    def pull_i(c: ChowClass) -> ChowClass:
        return normal_form(subst(c.value, {"H": h}, ringX.table), ringX)

    Hy = GradedPoly.variable(ringY.table, "H")

    def push_i(c: ChowClass) -> ChowClass:
        lifted = subst(c.value, {"h": Hy}, ringY.table)
        return normal_form(scale * lifted * Hy**d, ringY)

    return BlowupContext(
        ringY=ringY,
        ringX=ringX,
        d=d,
        N=N,
        pull_i=pull_i,
        push_i=push_i,
        ringXt=ringXt,
        dmax=n,
    )


def ambient_tangent_chern(s: Scenario) -> ChowClass:
    """c(T_{P^n}) = (1 + H)^(n+1) in the ambient ring."""
    ring = truncated_polynomial_ring("H", s.ambient_dim)
    one_plus = GradedPoly.one(ring.table) + GradedPoly.variable(ring.table, "H")
    return normal_form(one_plus ** (s.ambient_dim + 1), ring)


def center_tangent_chern(s: Scenario) -> ChowClass:
    """c(T_X) by adjunction: (1+h)^(n+1) / prod (1 + a_i h), truncated.

    The degree of the top component is chi(X).
    """
    ctx = scenario_context(s)
    ring = ctx.ringX
    table = ring.table
    h = GradedPoly.variable(table, "h")
    one = GradedPoly.one(table)
    num = truncate((one + h) ** (s.ambient_dim + 1), ring.dim)
    den = GradedPoly.one(table)
    for a in center_degrees(s):
        den = mul_truncated(den, one + a * h, ring.dim)
    c = mul_truncated(num, series_inverse(den, ring.dim), ring.dim)
    return normal_form(c, ring)


def center_euler(s: Scenario) -> Fraction:
    """chi(X): the degree of the top component of c(T_X)."""
    return Fraction(degree(center_tangent_chern(s)))


def blowup_total_chern(
    s: Scenario,
) -> Tuple[BlowupClass, ChowClass, Fraction]:
    """Total tangent class of the blow-up, its pushforward, and chi.

    The pair form is f*(c(T_{P^n})) plus the classical correction
    j_*(g*(c(T_X)) . alpha); chi is the degree of the pushforward (the
    degree map is invariant under pushforward along f).
    """
    ctx = scenario_context(s)
    cY = ambient_tangent_chern(s)
    cX = center_tangent_chern(s)
    total = ctx.f_pull(cY) + porteous_delta(ctx, cX)
    pushed = bl_pushforward(total)
    chi = Fraction(degree(pushed))
    return total, pushed, chi


# ---------------------------------------------------------------------------
# scenario-level checks
# ---------------------------------------------------------------------------


def euler_identity_check(s: Scenario) -> VerificationReport:
    """chi(blow-up) = chi(P^n) + (d-1) chi(X), via two independent routes.

    The left side comes from the degree of the pushed-forward tangent
    class; the right side counts fiberwise (every fiber over the center
    is P^(d-1), of Euler characteristic d).
    """
    t0 = time.perf_counter()
    _, _, chi = blowup_total_chern(s)
    chi_x = center_euler(s)
    expected = Fraction(s.ambient_dim + 1) + (s.codim - 1) * chi_x
    passed = chi == expected
    residual = "0" if passed else f"chi={chi} expected={expected}"
    return _finish(
        "euler-identity",
        {"label": s.label, "n": s.ambient_dim, "d": s.codim},
        passed,
        residual,
        t0,
    )


def difflp_agreement_check(s: Scenario) -> VerificationReport:
    """The divisor-exchange total class equals the classical one.

    Every catalog center is cut out by hypersurfaces of the recorded
    degrees (degree 1 for linear centers), so the divisor-exchange route
    applies with Z_i = a_i H; it must agree with the correction-class
    route as a blow-up class.
    """
    t0 = time.perf_counter()
    ctx = scenario_context(s)
    cY = ambient_tangent_chern(s)
    H = ctx.ringY.var("H")
    zs = [a * H for a in center_degrees(s)]
    via_divisors = difflp_total_chern(ctx, zs, cY)
    via_correction = ctx.f_pull(cY) + porteous_delta(ctx, center_tangent_chern(s))
    passed = bl_equal(via_divisors, via_correction)
    residual = "0" if passed else _pair_residual(via_divisors, via_correction)
    return _finish(
        "difflp-agreement",
        {"label": s.label, "n": s.ambient_dim, "d": s.codim},
        passed,
        residual,
        t0,
    )


def simlem_agreement_check(
    d: int, cases: int = 20, seed: int = 2026
) -> VerificationReport:
    """Globally-extended and fiber-ring normal-bundle routes agree.

    Random scenarios: the center is a complete intersection of d
    hypersurfaces of degrees 1..3 in P^(d+2), the excess bundle is a sum
    of 0..2 restricted line bundles of degrees 1..3.  The global route
    evaluates the operator with coefficients on the base and restricts
    them; the fiber-ring route builds the operator over the center
    directly.  Both must give the same blow-up class.
    """
    t0 = time.perf_counter()
    if d < 1:
        raise BlowupError("codimension must be at least 1")
    rng = random.Random(seed)
    params = {"d": d, "cases": cases, "seed": seed}
    for case in range(cases):
        degs = tuple(rng.randint(1, 3) for _ in range(d))
        excess = tuple(rng.randint(1, 3) for _ in range(rng.randint(0, 2)))
        s = Scenario(
            ambient_dim=d + 2,
            center=CICenter(degs),
            label=f"ci{degs}-in-P{d + 2}",
        )
        ctx = scenario_context(s)

        H = GradedPoly.variable(ctx.ringY.table, "H")
        nhat_total = GradedPoly.one(ctx.ringY.table)
        for a in degs:
            nhat_total = nhat_total * (GradedPoly.one(ctx.ringY.table) + a * H)
        Nhat = BundleClass.from_total(
            ctx.ringY, normal_form(nhat_total, ctx.ringY), d
        )
        chat_total = GradedPoly.one(ctx.ringY.table)
        for b in excess:
            chat_total = chat_total * (GradedPoly.one(ctx.ringY.table) + b * H)
        Chat = BundleClass.from_total(
            ctx.ringY, normal_form(chat_total, ctx.ringY), len(excess)
        )

        h = GradedPoly.variable(ctx.ringX.table, "h")
        c_total = GradedPoly.one(ctx.ringX.table)
        for b in excess:
            c_total = c_total * (GradedPoly.one(ctx.ringX.table) + b * h)
        C = BundleClass.from_total(
            ctx.ringX, normal_form(c_total, ctx.ringX), len(excess)
        )

        via_global = simlem_normal_chern(Nhat, Chat, ctx)
        op = main_normal_chern(ctx, C)
        via_fiber = apply_twisted_operator(
            op,
            ctx,
            ctx.f_pull(ctx.ringY.one()),
            Nhat.total() * Chat.total(),
        )
        if not bl_equal(via_global, via_fiber):
            params = dict(params, degrees=list(degs), excess=list(excess))
            return _finish(
                "simlem-vs-main",
                params,
                False,
                _pair_residual(via_global, via_fiber),
                t0,
            )
    return _finish("simlem-vs-main", params, True, "0", t0)


# ---------------------------------------------------------------------------
# the catalog
# ---------------------------------------------------------------------------


CATALOG: Tuple[Scenario, ...] = (
    Scenario(2, LinearCenter(0), "point-in-P2"),
    Scenario(3, LinearCenter(0), "point-in-P3"),
    Scenario(3, LinearCenter(1), "line-in-P3"),
    Scenario(4, LinearCenter(2), "plane-in-P4"),
    Scenario(4, LinearCenter(1), "line-in-P4"),
    Scenario(4, LinearCenter(0), "point-in-P4"),
    Scenario(3, CICenter((2,)), "quadric-surface-in-P3"),
    Scenario(3, CICenter((3,)), "cubic-surface-in-P3"),
    Scenario(3, CICenter((2, 2)), "elliptic-quartic-in-P3"),
    Scenario(3, CICenter((2, 3)), "genus4-sextic-in-P3"),
    Scenario(4, CICenter((1, 2)), "quadric-surface-in-P4"),
    Scenario(4, CICenter((2, 2)), "delpezzo-quartic-in-P4"),
    Scenario(4, CICenter((2, 2, 2)), "genus5-octic-in-P4"),
)


def catalog_by_label(label: str) -> Scenario:
    for s in CATALOG:
        if s.label == label:
            return s
    raise ScenarioError(f"no catalog scenario labeled {label!r}")
