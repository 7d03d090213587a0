"""The decision procedure: smallest strongly closed cover of the hom
images of a test p-group, the cellularity verdict it induces, and the
supporting invariants (omega subgroups, minimal exponent, hyperfocal
subgroup and fundamental group, normality, invariance certificate).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from .errors import (
    ExternalDataRequired,
    InternalInvariantError,
    InvalidInput,
    SubgroupMismatch,
)
from .fusion import Axiomatized, FusionSystem, MapTuple, is_strongly_closed
from .groups import (
    DEFAULT_HOM_CAP,
    FiniteGroup,
    GroupHom,
    Subgroup,
    enumerate_homs,
    intersect,
    is_normal,
    product_set_size,
    quotient_group,
    subgroup_generated,
)

CITE_CRITERION = "criterion:cellular-iff-closure-is-all-of-S"
CITE_ABELIAN_NORMAL = "normality:abelian-strongly-closed-implies-normal-in-fusion"
CITE_NORMAL_FIBRE = "structure:cw-approximation-is-fibre-of-map-to-quotient-fusion"
CITE_NORMALITY_UNKNOWN = "normality:undetermined-without-morphism-tables"


@dataclass(frozen=True)
class CellularityReport:
    cellular: bool
    closure: Subgroup
    closure_abelian: bool
    closure_normal_in_F: Optional[bool]  # None encodes "unknown"
    quotient_order: int
    verdict_text: str
    citations: tuple[str, ...] = ()

    def to_json(self) -> dict:
        normal: object
        if self.closure_normal_in_F is None:
            normal = "unknown"
        else:
            normal = self.closure_normal_in_F
        return {
            "cellular": self.cellular,
            "closure": list(self.closure.members),
            "closure_order": self.closure.order,
            "abelian": self.closure_abelian,
            "normal_in_F": normal,
            "quotient_order": self.quotient_order,
            "citations": list(self.citations),
        }


@dataclass(frozen=True)
class HyperfocalResult:
    hyperfocal: Subgroup
    pi1: FiniteGroup
    projection: GroupHom


@dataclass(frozen=True)
class FusionInvarianceCertificate:
    K: Subgroup
    checked_pairs: int
    violations: tuple[tuple[GroupHom, Subgroup], ...]
    rho_target_degree: int
    rho_images: tuple[tuple[int, ...], ...] = field(repr=False)


# ---------------------------------------------------------------------------
# closure


def closure_from_seed(F: FusionSystem, seed: Subgroup) -> Subgroup:
    """Fixpoint closure of a subgroup under all fusion images of its
    elements; the result is strongly closed and the ascent is strict, so
    termination is immediate."""
    S = F.S
    K = seed
    while True:
        collected = set(K.members)
        for x in K.members:
            if x == S.identity:
                continue
            C = subgroup_generated(S, (x,))
            pos = C.members.index(x)
            for m in F.hom_images(C):
                collected.add(m[pos])
        K2 = subgroup_generated(S, collected)
        if K2 == K:
            return K
        if K2.order <= K.order:
            raise InternalInvariantError("closure fixpoint failed to grow")
        K = K2


def strong_closure(
    F: FusionSystem, P: FiniteGroup, hom_cap: int = DEFAULT_HOM_CAP
) -> Subgroup:
    """Smallest strongly closed subgroup of S containing the image of
    every homomorphism P -> S."""
    if isinstance(F.provenance, Axiomatized):
        raise ExternalDataRequired(
            "closure needs morphism tables; this fusion system declares facts only"
        )
    S = F.S
    seed_elems: set[int] = {S.identity}
    for h in enumerate_homs(P, S, cap=hom_cap):
        seed_elems.update(h.images)
    K = closure_from_seed(F, subgroup_generated(S, seed_elems))
    if not is_strongly_closed(F, K):
        raise InternalInvariantError("closure output is not strongly closed")
    return K


def omega_subgroup(S: FiniteGroup, p: int, m: int) -> Subgroup:
    """Subgroup generated by all elements of order dividing p^m; normal
    in S because the generating set is conjugation-stable."""
    if not S.is_p_group(p):
        raise InvalidInput(f"{S.label} is not a {p}-group")
    if m < 0:
        raise InvalidInput("omega exponent must be nonnegative")
    bound = p**m
    gens = [x for x in range(S.order) if S.power(x, bound) == S.identity]
    return subgroup_generated(S, gens)


def min_cellular_exponent(F: FusionSystem, hom_cap: int = DEFAULT_HOM_CAP) -> int:
    """Least m >= 1 such that the closure of a cyclic group of order p^m
    is all of S; computed through omega subgroups, which have the same
    closure as the cyclic test group of matching exponent."""
    S, p = F.S, F.p
    max_m = max(1, S.exponent_of_prime(p))
    for m in range(1, max_m + 1):
        if closure_from_seed(F, omega_subgroup(S, p, m)).order == S.order:
            return m
    raise InternalInvariantError(
        "closure of the full-exponent omega subgroup must be S"
    )


# ---------------------------------------------------------------------------
# hyperfocal subgroup and fundamental group


def _map_order(P: Subgroup, m: MapTuple) -> int:
    pos = {x: i for i, x in enumerate(P.members)}
    n = 1
    cur = m
    ident = P.members
    while cur != ident:
        cur = tuple(m[pos[v]] for v in cur)
        n += 1
    return n


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return a


def hyperfocal_subgroup(F: FusionSystem) -> HyperfocalResult:
    """Subgroup generated by the commutators x^-1 alpha(x) with alpha in
    the p'-generated part of each automorphism group; the quotient is the
    fundamental group of the classifying space."""
    S, p = F.S, F.p
    gens: set[int] = set()
    for Q in F.subgroups():
        if Q.order == 1:
            continue
        auts = F.automorphism_maps(Q)
        pos = {x: i for i, x in enumerate(Q.members)}
        pprime = [m for m in auts if _gcd(_map_order(Q, m), p) == 1]
        # O^p(Aut_F(Q)): close the p'-order elements under composition
        op: set[MapTuple] = set(pprime)
        frontier = list(pprime)
        while frontier:
            fresh = []
            for a in frontier:
                for b in pprime:
                    c = tuple(b[pos[v]] for v in a)
                    if c not in op:
                        op.add(c)
                        fresh.append(c)
            frontier = fresh
        for m in op:
            for x, v in zip(Q.members, m):
                gens.add(S.mul(S.inv(x), v))
    K = subgroup_generated(S, gens)
    if not is_normal(S, K):
        raise InternalInvariantError("hyperfocal subgroup is not normal in S")
    pi1, proj = quotient_group(S, K)
    if not pi1.is_p_group(p):
        raise InternalInvariantError("fundamental group is not a p-group")
    if pi1.order * K.order != S.order:
        raise InternalInvariantError("hyperfocal index bookkeeping failed")
    return HyperfocalResult(hyperfocal=K, pi1=pi1, projection=proj)


# ---------------------------------------------------------------------------
# normality inside the fusion system


def is_normal_in_fusion(
    F: FusionSystem, K: Subgroup, use_fast_path: bool = True
) -> Optional[bool]:
    """K normal in the fusion system: K normal in S and every morphism
    extends to one on PK fixing K setwise.  Abelian strongly closed
    subgroups are normal outright, so that case short-circuits.  Returns
    None when the provenance cannot answer."""
    S = F.S
    if K.parent is not S:
        raise SubgroupMismatch("subgroup is not inside this fusion system's S")
    if not is_normal(S, K):
        return False
    if use_fast_path and K.is_abelian():
        try:
            if is_strongly_closed(F, K):
                return True
        except ExternalDataRequired:
            return None
    if isinstance(F.provenance, Axiomatized):
        return None
    kset = set(K.members)
    by_members = {P.members: P for P in F.subgroups()}
    for P in F.subgroups():
        PK = subgroup_generated(S, set(P.members) | kset)
        big = by_members[PK.members]
        bpos = {x: i for i, x in enumerate(big.members)}
        restriction_idx = [bpos[x] for x in P.members]
        k_idx = [bpos[x] for x in K.members]
        candidates = F.hom_images(big)
        for m in F.hom_images(P):
            ok = any(
                tuple(n[i] for i in restriction_idx) == m
                and {n[i] for i in k_idx} == kset
                for n in candidates
            )
            if not ok:
                return False
    return True


# ---------------------------------------------------------------------------
# verdict report


def cellularity_report(
    F: FusionSystem, P: FiniteGroup, hom_cap: int = DEFAULT_HOM_CAP
) -> CellularityReport:
    """Decide cellularity of the classifying space with respect to the
    classifying space of P, and describe the obstruction when it fails."""
    S = F.S
    K = strong_closure(F, P, hom_cap=hom_cap)
    cellular = K.order == S.order
    abelian = K.is_abelian()
    normal = is_normal_in_fusion(F, K)
    citations = [CITE_CRITERION]
    if abelian and normal:
        citations.append(CITE_ABELIAN_NORMAL)
    if cellular:
        verdict = "closure is all of S, so the classifying space is cellular"
    elif normal:
        citations.append(CITE_NORMAL_FIBRE)
        verdict = (
            "closure is proper and normal in the fusion system: the cellular "
            "approximation is the homotopy fibre of the map to the quotient "
            f"fusion system on S/K of order {S.order // K.order}"
        )
    elif normal is None:
        citations.append(CITE_NORMALITY_UNKNOWN)
        verdict = "closure is proper; normality in the fusion system is undetermined"
    else:
        verdict = "closure is proper and not normal in the fusion system"
    return CellularityReport(
        cellular=cellular,
        closure=K,
        closure_abelian=abelian,
        closure_normal_in_F=normal,
        quotient_order=S.order // K.order,
        verdict_text=verdict,
        citations=tuple(citations),
    )


# ---------------------------------------------------------------------------
# invariance certificate


def fusion_invariance_certificate(
    F: FusionSystem, K: Subgroup
) -> FusionInvarianceCertificate:
    """Check, for every morphism, the double-coset counting identities that
    make the permutation representation of S on S/K fusion invariant, and
    build that representation with kernel exactly K."""
    S = F.S
    if K.parent is not S:
        raise SubgroupMismatch("subgroup is not inside this fusion system's S")
    if not is_strongly_closed(F, K):
        raise InvalidInput("certificate requires a strongly closed subgroup")
    quotient, proj = quotient_group(S, K)
    degree = quotient.order
    # regular permutation action of S on the cosets, through the projection
    perms = []
    for x in range(S.order):
        px = proj(x)
        perms.append(tuple(quotient.mul(px, c) for c in range(degree)))
    ident = tuple(range(degree))
    kernel = {x for x in range(S.order) if perms[x] == ident}
    if kernel != set(K.members):
        raise InternalInvariantError("coset representation kernel is not K")

    checked = 0
    violations: list[tuple[GroupHom, Subgroup]] = []
    pk_size: dict[Subgroup, int] = {}

    def pk(Hsub: Subgroup) -> int:
        if Hsub not in pk_size:
            pk_size[Hsub] = product_set_size(S, Hsub, K)
        return pk_size[Hsub]

    for P in F.subgroups():
        base_meet = intersect(P, K).order
        base_l = S.order // pk(P)
        for m in F.hom_images(P):
            checked += 1
            image = Subgroup(S, set(m), _trusted=True)
            meet = intersect(image, K).order
            l_phi = S.order // pk(image)
            if meet != base_meet or l_phi != base_l:
                violations.append(
                    (GroupHom(P, S, m, _trusted=True), P)
                )
    return FusionInvarianceCertificate(
        K=K,
        checked_pairs=checked,
        violations=tuple(violations),
        rho_target_degree=degree,
        rho_images=tuple(perms),
    )
