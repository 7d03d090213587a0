"""Fusion systems over a finite p-group as finite data.

Morphism storage: for each subgroup P of S we keep the full set of
morphisms P -> S as image tuples aligned with P's sorted members.  The
morphism set Hom(P, Q) is the filtered view {phi : phi(P) <= Q}; this
makes closure under corestriction-to-image and composition-with-inclusion
automatic, while closure under composition, restriction and inversion of
isomorphisms is enforced by construction (ambient conjugation) or by the
generation fixpoint.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Iterable, Optional

from .errors import (
    ExternalDataRequired,
    InternalInvariantError,
    InvalidInput,
    OrderCapExceeded,
    SubgroupMismatch,
)
from .groups import (
    DEFAULT_SUBGROUP_CAP,
    FiniteGroup,
    GroupHom,
    Subgroup,
    all_subgroups,
    centralizer,
    closure_of,
    full_subgroup,
    intersect,
    normalizer,
    quotient_group,
    subgroup_as_group,
    subgroup_generated,
    sylow_subgroup,
    trivial_subgroup,
)

MapTuple = tuple[int, ...]


@dataclass(frozen=True)
class GroupInduced:
    """Provenance: all morphisms are conjugations inside an ambient group."""

    ambient: FiniteGroup
    sylow_members: tuple[int, ...]  # S's elements as ambient indices


@dataclass(frozen=True)
class Generated:
    """Provenance: closure of inner morphisms and explicit seeds."""

    seeds: tuple[GroupHom, ...]


@dataclass(frozen=True)
class Axiomatized:
    """Provenance: morphism tables live elsewhere; only declared facts
    (strongly closed subgroups) are available."""

    strongly_closed: tuple[tuple[int, ...], ...]


Provenance = GroupInduced | Generated | Axiomatized


@dataclass(frozen=True)
class SaturationWitness:
    axiom: str  # "s.1" or "s.2"
    subgroup: tuple[int, ...]
    detail: str
    morphism: Optional[MapTuple] = None


@dataclass(frozen=True)
class SaturationReport:
    saturated: bool
    witnesses: tuple[SaturationWitness, ...]

    def __post_init__(self):
        if self.saturated != (len(self.witnesses) == 0):
            raise InternalInvariantError("saturation flag contradicts witnesses")


class FusionSystem:
    """Morphism data over a fixed finite p-group S."""

    def __init__(
        self,
        S: FiniteGroup,
        p: int,
        provenance: Provenance,
        hom_tables: Optional[dict[Subgroup, tuple[MapTuple, ...]]] = None,
        hom_provider: Optional[Callable[[Subgroup], tuple[MapTuple, ...]]] = None,
        spec_json: Optional[dict] = None,
    ):
        if not S.is_p_group(p):
            raise InvalidInput(f"{S.label} is not a {p}-group")
        self.S = S
        self.p = p
        self.provenance = provenance
        self.spec_json = spec_json
        self._tables: dict[Subgroup, tuple[MapTuple, ...]] = dict(hom_tables or {})
        self._provider = hom_provider
        self._subgroups: Optional[list[Subgroup]] = None

    def __repr__(self) -> str:
        kind = type(self.provenance).__name__
        return f"FusionSystem(S={self.S.label}, p={self.p}, {kind})"

    # -- morphism access ---------------------------------------------------

    def hom_images(self, P: Subgroup) -> tuple[MapTuple, ...]:
        """All morphisms P -> S as image tuples (sorted, deduplicated)."""
        if P.parent is not self.S:
            raise SubgroupMismatch("subgroup is not inside this fusion system's S")
        if P in self._tables:
            return self._tables[P]
        if self._provider is None:
            raise ExternalDataRequired(
                "morphisms are not available for this fusion system"
            )
        maps = self._provider(P)
        self._tables[P] = maps
        return maps

    def morphisms(self, P: Subgroup, Q: Subgroup) -> list[GroupHom]:
        """Hom(P, Q) as validated GroupHom values (the filtered view)."""
        if Q.parent is not self.S:
            raise SubgroupMismatch("subgroup is not inside this fusion system's S")
        qset = set(Q.members)
        out = []
        for m in self.hom_images(P):
            if set(m) <= qset:
                out.append(GroupHom(P, self.S, m, _trusted=True))
        return out

    def automorphism_maps(self, P: Subgroup) -> list[MapTuple]:
        pset = set(P.members)
        return [m for m in self.hom_images(P) if set(m) == pset]

    def conjugates_of(self, P: Subgroup) -> list[Subgroup]:
        out = {Subgroup(self.S, set(m), _trusted=True) for m in self.hom_images(P)}
        return sorted(out, key=lambda H: H.members)

    def subgroups(self, cap: int = DEFAULT_SUBGROUP_CAP) -> list[Subgroup]:
        if self._subgroups is None:
            self._subgroups = all_subgroups(self.S, cap=cap)
        return list(self._subgroups)

    def materialize(self, cap: int = DEFAULT_SUBGROUP_CAP) -> None:
        for P in self.subgroups(cap=cap):
            self.hom_images(P)

    def has_full_tables(self) -> bool:
        return self._provider is not None or isinstance(
            self.provenance, (GroupInduced, Generated)
        )


# ---------------------------------------------------------------------------
# construction from an ambient group


def _conjugation_provider(
    G: FiniteGroup, S: FiniteGroup, members_in_G: list[int]
) -> Callable[[Subgroup], tuple[MapTuple, ...]]:
    to_local = {g: i for i, g in enumerate(members_in_G)}

    def provider(P: Subgroup) -> tuple[MapTuple, ...]:
        # generators first: g conjugates P into S iff it does so on a
        # generating set, because S is closed under products
        gens_local = []
        seen = {S.identity}
        for x in P.members:
            if x not in seen:
                gens_local.append(x)
                seen = closure_of(S, gens_local)
                if len(seen) == P.order:
                    break
        gens_G = [members_in_G[x] for x in gens_local]
        maps = set()
        for g in range(G.order):
            ginv = G.inv(g)
            ok = True
            for h in gens_G:
                if G.mul(G.mul(g, h), ginv) not in to_local:
                    ok = False
                    break
            if not ok:
                continue
            maps.add(
                tuple(
                    to_local[G.mul(G.mul(g, members_in_G[x]), ginv)]
                    for x in P.members
                )
            )
        return tuple(sorted(maps))

    return provider


def fusion_from_group(
    G: FiniteGroup,
    p: int,
    cap: int = DEFAULT_SUBGROUP_CAP,
    spec_json: Optional[dict] = None,
) -> FusionSystem:
    """The fusion system of G on its (deterministic) Sylow p-subgroup:
    morphisms are exactly the conjugations by elements of G that map one
    subgroup of S into another."""
    syl = sylow_subgroup(G, p)
    S, members = subgroup_as_group(G, syl)
    if S.order > cap:
        raise OrderCapExceeded(
            f"Sylow subgroup of order {S.order} exceeds the cap {cap}",
            needed=S.order,
            cap=cap,
        )
    provider = _conjugation_provider(G, S, members)
    return FusionSystem(
        S,
        p,
        GroupInduced(ambient=G, sylow_members=tuple(members)),
        hom_provider=provider,
        spec_json=spec_json,
    )


# ---------------------------------------------------------------------------
# generation from seeds


def _compose_maps(P_members: tuple[int, ...], m: MapTuple, target_pos: dict, n: MapTuple) -> MapTuple:
    """n after m: x -> n[pos(m[x])], where pos indexes n's domain members."""
    return tuple(n[target_pos[v]] for v in m)


def fusion_generated(
    S: FiniteGroup,
    p: int,
    seeds: Iterable[GroupHom],
    cap: int = DEFAULT_SUBGROUP_CAP,
    spec_json: Optional[dict] = None,
) -> FusionSystem:
    """Smallest fusion system over S containing all inner morphisms and all
    seeds: the morphism family is closed under restriction, composition and
    inversion by a worklist fixpoint."""
    seeds = list(seeds)
    for h in seeds:
        if h.codomain is not S or h.domain.parent is not S:
            raise SubgroupMismatch("seed morphism does not live inside S")
        if not h.is_injective:
            raise InvalidInput("fusion morphisms must be injective")
    subs = all_subgroups(S, cap=cap)
    pos_of: dict[Subgroup, dict[int, int]] = {
        P: {x: i for i, x in enumerate(P.members)} for P in subs
    }
    by_members: dict[tuple[int, ...], Subgroup] = {P.members: P for P in subs}
    maximals: dict[Subgroup, list[Subgroup]] = {P: [] for P in subs}
    for P in subs:
        pm = set(P.members)
        for Q in subs:
            # in a p-group every maximal subgroup has index p
            if Q.order * p == P.order and set(Q.members) <= pm:
                maximals[P].append(Q)

    tables: dict[Subgroup, set[MapTuple]] = {P: set() for P in subs}
    by_image: dict[Subgroup, list[tuple[Subgroup, MapTuple]]] = {P: [] for P in subs}
    work: list[tuple[Subgroup, MapTuple]] = []

    def add(P: Subgroup, m: MapTuple) -> None:
        if m not in tables[P]:
            tables[P].add(m)
            work.append((P, m))

    for P in subs:
        for g in range(S.order):
            ginv = S.inv(g)
            add(P, tuple(S.mul(S.mul(g, x), ginv) for x in P.members))
    for h in seeds:
        add(h.domain, h.images)

    while work:
        P, m = work.pop()
        image = by_members[tuple(sorted(m))]
        ipos = pos_of[image]
        # inversion onto the image
        inv_map = [0] * image.order
        for x, v in zip(P.members, m):
            inv_map[ipos[v]] = x
        add(image, tuple(inv_map))
        # restriction to maximal subgroups (transitivity reaches the rest)
        ppos = pos_of[P]
        for Q in maximals[P]:
            add(Q, tuple(m[ppos[x]] for x in Q.members))
        # composition with everything already landing on / leaving the image
        for n in list(tables[image]):
            add(P, _compose_maps(P.members, m, ipos, n))
        for R, mr in by_image[P]:
            add(R, _compose_maps(R.members, mr, ppos, m))
        by_image[image].append((P, m))

    frozen = {P: tuple(sorted(ms)) for P, ms in tables.items()}
    return FusionSystem(
        S, p, Generated(seeds=tuple(seeds)), hom_tables=frozen, spec_json=spec_json
    )


def fusion_axiomatized(
    S: FiniteGroup,
    p: int,
    strongly_closed: Iterable[Subgroup],
    spec_json: Optional[dict] = None,
) -> FusionSystem:
    """A fusion system known only through declared strongly closed
    subgroups; morphism queries raise ExternalDataRequired."""
    decl = []
    for K in strongly_closed:
        if K.parent is not S:
            raise SubgroupMismatch("declared subgroup is not inside S")
        decl.append(K.members)
    return FusionSystem(
        S,
        p,
        Axiomatized(strongly_closed=tuple(sorted(decl))),
        hom_tables={},
        hom_provider=None,
        spec_json=spec_json,
    )


# ---------------------------------------------------------------------------
# predicates and reports


def is_strongly_closed(F: FusionSystem, K: Subgroup) -> bool:
    """True iff no fusion morphism moves an element of K outside K.

    Cyclic subgroups suffice: morphisms restrict to every <x>, and the
    image of any P <= K is generated by images of its elements.
    """
    if K.parent is not F.S:
        raise SubgroupMismatch("subgroup is not inside this fusion system's S")
    if K.order == 1 or K.order == F.S.order:
        return True
    if isinstance(F.provenance, Axiomatized):
        if K.members in F.provenance.strongly_closed:
            return True
        raise ExternalDataRequired(
            "strong closure is undecidable without morphism tables"
        )
    kset = set(K.members)
    for x in K.members:
        if x == F.S.identity:
            continue
        C = subgroup_generated(F.S, (x,))
        pos = C.members.index(x)
        for m in F.hom_images(C):
            if m[pos] not in kset:
                return False
    return True


def is_strongly_closed_full(F: FusionSystem, K: Subgroup) -> bool:
    """The unoptimized predicate: every morphism from every subgroup of K
    lands inside K.  Kept as a cross-check for the cyclic shortcut."""
    if K.parent is not F.S:
        raise SubgroupMismatch("subgroup is not inside this fusion system's S")
    kset = set(K.members)
    for P in F.subgroups():
        if not set(P.members) <= kset:
            continue
        for m in F.hom_images(P):
            if not set(m) <= kset:
                return False
    return True


def strongly_closed_subgroups(
    F: FusionSystem, cap: int = DEFAULT_SUBGROUP_CAP
) -> list[Subgroup]:
    """All strongly closed subgroups, sorted by (order, members); verified
    to be intersection-closed before returning."""
    out = [K for K in F.subgroups(cap=cap) if is_strongly_closed(F, K)]
    found = set(out)
    for A in out:
        for B in out:
            if intersect(A, B) not in found:
                raise InternalInvariantError(
                    "strongly closed family is not intersection-closed"
                )
    return sorted(out, key=lambda H: (H.order, H.members))


def _aut_S_maps(S: FiniteGroup, P: Subgroup) -> set[MapTuple]:
    out = set()
    for g in normalizer(S, P).members:
        ginv = S.inv(g)
        out.add(tuple(S.mul(S.mul(g, x), ginv) for x in P.members))
    return out


def is_saturated(F: FusionSystem, cap: int = DEFAULT_SUBGROUP_CAP) -> SaturationReport:
    """Check both saturation axioms on every subgroup and report every
    violation found."""
    S = F.S
    p = F.p
    subs = F.subgroups(cap=cap)
    F.materialize(cap=cap)
    n_order = {P: normalizer(S, P).order for P in subs}
    c_order = {P: centralizer(S, P).order for P in subs}
    aut_s = {P: _aut_S_maps(S, P) for P in subs}
    conj_class = {P: F.conjugates_of(P) for P in subs}
    witnesses: list[SaturationWitness] = []

    def fully_normalized(P: Subgroup) -> bool:
        return n_order[P] == max(n_order[Q] for Q in conj_class[P])

    def fully_centralized(P: Subgroup) -> bool:
        return c_order[P] == max(c_order[Q] for Q in conj_class[P])

    for P in subs:
        if not fully_normalized(P):
            continue
        if not fully_centralized(P):
            witnesses.append(
                SaturationWitness(
                    axiom="s.1",
                    subgroup=P.members,
                    detail="fully normalized but not fully centralized",
                )
            )
        n_aut_f = len(F.automorphism_maps(P))
        n_aut_s = len(aut_s[P])
        if n_aut_f % n_aut_s != 0:
            raise InternalInvariantError("Aut_S is not a subgroup of Aut_F")
        if (n_aut_f // n_aut_s) % p == 0:
            witnesses.append(
                SaturationWitness(
                    axiom="s.1",
                    subgroup=P.members,
                    detail=(
                        f"inner automorphism index {n_aut_f // n_aut_s} is divisible "
                        f"by {p}, so Out_S is not Sylow in Out_F"
                    ),
                )
            )

    by_members = {P.members: P for P in subs}
    for P in subs:
        ppos = {x: i for i, x in enumerate(P.members)}
        for m in F.hom_images(P):
            image = by_members[tuple(sorted(m))]
            if not fully_centralized(image):
                continue
            ipos = {x: i for i, x in enumerate(image.members)}
            inv_of = {v: x for x, v in zip(P.members, m)}
            target_auts = aut_s[image]
            ext_dom = []
            for g in normalizer(S, P).members:
                ginv = S.inv(g)
                twisted = tuple(
                    m[ppos[S.mul(S.mul(g, inv_of[y]), ginv)]] for y in image.members
                )
                if twisted in target_auts:
                    ext_dom.append(g)
            N_phi = by_members.get(tuple(sorted(ext_dom)))
            if N_phi is None:
                raise InternalInvariantError("extension domain is not a subgroup")
            npos = {x: i for i, x in enumerate(N_phi.members)}
            restriction_idx = [npos[x] for x in P.members]
            extended = any(
                tuple(big[i] for i in restriction_idx) == m
                for big in F.hom_images(N_phi)
            )
            if not extended:
                witnesses.append(
                    SaturationWitness(
                        axiom="s.2",
                        subgroup=P.members,
                        detail=(
                            "morphism with fully centralized image admits no "
                            f"extension to its domain of order {N_phi.order}"
                        ),
                        morphism=m,
                    )
                )
    return SaturationReport(saturated=not witnesses, witnesses=tuple(witnesses))


def is_fusion_preserving(
    rho: GroupHom, F: FusionSystem, Fprime: FusionSystem
) -> bool:
    """True iff rho: S -> S' intertwines every morphism of F with some
    morphism of F'."""
    S = F.S
    if rho.domain != full_subgroup(S):
        raise SubgroupMismatch("rho must be total on S")
    if rho.codomain is not Fprime.S:
        raise SubgroupMismatch("rho must land in the second fusion system's group")
    for P in F.subgroups():
        rP = Subgroup(Fprime.S, {rho(x) for x in P.members}, _trusted=True)
        rpos = {x: i for i, x in enumerate(rP.members)}
        candidates = Fprime.hom_images(rP)
        for m in F.hom_images(P):
            wanted = tuple(zip((rho(x) for x in P.members), (rho(v) for v in m)))
            if not any(
                all(n[rpos[a]] == b for a, b in wanted) for n in candidates
            ):
                return False
    return True


def fusion_automorphism_group(
    F: FusionSystem, P: Subgroup
) -> tuple[FiniteGroup, list[MapTuple]]:
    """Hom_F(P, P) as a concrete group under composition; returns the group
    and the payload list aligning its indices with the map tuples."""
    if P.parent is not F.S:
        raise SubgroupMismatch("subgroup is not inside this fusion system's S")
    maps = sorted(F.automorphism_maps(P))
    pos = {x: i for i, x in enumerate(P.members)}

    def compose(a, b):  # apply a, then b
        return tuple(b[pos[v]] for v in a)

    def invert(a):
        out = [0] * len(a)
        for x, v in zip(P.members, a):
            out[pos[v]] = x
        return tuple(out)

    ident = P.members
    grp = FiniteGroup(
        maps,
        compose,
        invert,
        label=f"AutF(P{P.order})",
        identity=maps.index(ident),
    )
    return grp, maps


def fusion_outer_automorphism_group(
    F: FusionSystem, P: Subgroup
) -> tuple[FiniteGroup, GroupHom]:
    """Out_F(P) = Aut_F(P) / Inn(P), with the projection homomorphism."""
    grp, payloads = fusion_automorphism_group(F, P)
    S = F.S
    inner = set()
    for g in P.members:
        ginv = S.inv(g)
        inner.add(tuple(S.mul(S.mul(g, x), ginv) for x in P.members))
    inn_members = [i for i, m in enumerate(payloads) if m in inner]
    return quotient_group(grp, Subgroup(grp, inn_members, _trusted=True))


# ---------------------------------------------------------------------------
# serialization (cache format)


def fusion_to_tables_json(F: FusionSystem) -> dict:
    F.materialize()
    tables = {}
    for P in F.subgroups():
        tables[",".join(map(str, P.members))] = [list(m) for m in F.hom_images(P)]
    return {"p": F.p, "S_order": F.S.order, "tables": tables}


def fusion_attach_tables(F: FusionSystem, data: dict) -> None:
    """Install cached hom tables (bypasses the provider)."""
    if data.get("S_order") != F.S.order or data.get("p") != F.p:
        raise InvalidInput("cached tables do not match this fusion system")
    for key, maps in data["tables"].items():
        members = tuple(int(x) for x in key.split(","))
        P = Subgroup(F.S, members, _trusted=True)
        F._tables[P] = tuple(sorted(tuple(m) for m in maps))
