"""Concrete finite groups on dense element indices 0 .. order-1.

A FiniteGroup owns an immutable list of element payloads (permutation
tuples, matrix tuples, product pairs, ...) in a deterministic order;
all other machinery (subgroups, homomorphisms, fusion systems) speaks
pure indices into that list.  Everything here is immutable after
construction and safe to share.
"""

from __future__ import annotations

import math
from typing import Callable, Iterable, Optional, Sequence

from .errors import (
    InvalidInput,
    InternalInvariantError,
    OrderCapExceeded,
    SubgroupMismatch,
)

DEFAULT_BUILD_CAP = 1 << 16
DEFAULT_SUBGROUP_CAP = 2048
DEFAULT_HOM_CAP = 2048


class FiniteGroup:
    """A finite group with enumerable elements and total multiplication.

    `elements[i]` is the payload of index i; `mul` composes payloads and
    resolves the result back to an index.  Index assignment is stable for
    the lifetime of the object.
    """

    def __init__(
        self,
        elements: Sequence[object],
        compose: Callable[[object, object], object],
        invert: Optional[Callable[[object], object]] = None,
        label: str = "G",
        identity: Optional[int] = None,
        prime_hint: Optional[int] = None,
        spec: Optional[dict] = None,
    ):
        self.elements = list(elements)
        self.order = len(self.elements)
        self._index = {e: i for i, e in enumerate(self.elements)}
        if len(self._index) != self.order:
            raise InvalidInput("duplicate element payloads")
        self._compose = compose
        self._invert = invert
        self.label = label
        self.prime_hint = prime_hint
        self.spec = spec
        if identity is None:
            identity = self._find_identity()
        self.identity = identity
        self._inv_cache: list[Optional[int]] = [None] * self.order
        self._order_cache: list[Optional[int]] = [None] * self.order
        self._cache: dict = {}

    def _find_identity(self) -> int:
        # the identity is the unique e with e*x = x for the first payload
        probe = self.elements[0]
        for i, e in enumerate(self.elements):
            if self._compose(e, probe) == probe and self._compose(probe, e) == probe:
                return i
        raise InvalidInput("no identity element found")

    def __repr__(self) -> str:
        return f"FiniteGroup({self.label}, order={self.order})"

    def index_of(self, payload: object) -> int:
        return self._index[payload]

    def mul(self, a: int, b: int) -> int:
        return self._index[self._compose(self.elements[a], self.elements[b])]

    def inv(self, a: int) -> int:
        cached = self._inv_cache[a]
        if cached is not None:
            return cached
        if self._invert is not None:
            r = self._index[self._invert(self.elements[a])]
        else:
            # fall back to the cyclic inverse a^(ord(a)-1)
            r, x = self.identity, a
            while True:
                nxt = self.mul(x, a)
                if nxt == self.identity:
                    r = x
                    break
                x = nxt
            if self.mul(a, r) != self.identity:
                raise InternalInvariantError("inverse computation failed")
        self._inv_cache[a] = r
        return r

    def conj(self, g: int, x: int) -> int:
        """g x g^-1."""
        return self.mul(self.mul(g, x), self.inv(g))

    def power(self, a: int, n: int) -> int:
        if n < 0:
            return self.power(self.inv(a), -n)
        acc, base = self.identity, a
        while n:
            if n & 1:
                acc = self.mul(acc, base)
            base = self.mul(base, base)
            n >>= 1
        return acc

    def element_order(self, a: int) -> int:
        cached = self._order_cache[a]
        if cached is not None:
            return cached
        n, x = 1, a
        while x != self.identity:
            x = self.mul(x, a)
            n += 1
        self._order_cache[a] = n
        return n

    def exponent_of_prime(self, p: int) -> int:
        """Largest m with an element of order p^m."""
        best = 0
        for x in range(self.order):
            o = self.element_order(x)
            m = 0
            while o % p == 0:
                o //= p
                m += 1
            if o == 1:
                best = max(best, m)
        return best

    def is_p_group(self, p: int) -> bool:
        n = self.order
        while n % p == 0:
            n //= p
        return n == 1

    def is_abelian(self) -> bool:
        if "abelian" not in self._cache:
            self._cache["abelian"] = all(
                self.mul(a, b) == self.mul(b, a)
                for a in range(self.order)
                for b in range(a + 1, self.order)
            )
        return self._cache["abelian"]


def element_order(G: FiniteGroup, x: int) -> int:
    """Least n >= 1 with x^n = identity."""
    return G.element_order(x)


class Subgroup:
    """A subgroup of a parent group, held as a strictly sorted index tuple.

    The sorted tuple is the canonical form: two subgroups of the same
    parent are equal iff their tuples are equal.
    """

    __slots__ = ("parent", "members", "_hash")

    def __init__(self, parent: FiniteGroup, members: Iterable[int], _trusted: bool = False):
        ms = tuple(sorted(set(members)))
        self.parent = parent
        self.members = ms
        self._hash = hash((id(parent), ms))
        if not _trusted:
            self._validate()

    def _validate(self) -> None:
        G, ms = self.parent, self.members
        mset = set(ms)
        if not ms or any(x < 0 or x >= G.order for x in ms):
            raise InvalidInput("subgroup members out of range or empty")
        if G.identity not in mset:
            raise InvalidInput("subgroup does not contain the identity")
        for x in ms:
            if G.inv(x) not in mset:
                raise InvalidInput("subgroup not closed under inversion")
            for y in ms:
                if G.mul(x, y) not in mset:
                    raise InvalidInput("subgroup not closed under multiplication")
        if G.order % len(ms) != 0:
            raise InternalInvariantError("subgroup order does not divide group order")

    @property
    def order(self) -> int:
        return len(self.members)

    def __contains__(self, x: int) -> bool:
        return x in self._member_set()

    def _member_set(self) -> frozenset:
        # lazily cached via parent-level dict to keep __slots__ tight
        key = ("mset", self.members)
        cache = self.parent._cache
        if key not in cache:
            cache[key] = frozenset(self.members)
        return cache[key]

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Subgroup)
            and self.parent is other.parent
            and self.members == other.members
        )

    def __hash__(self) -> int:
        return self._hash

    def __repr__(self) -> str:
        return f"Subgroup(order={self.order} of {self.parent.label})"

    def is_abelian(self) -> bool:
        G = self.parent
        ms = self.members
        return all(
            G.mul(a, b) == G.mul(b, a) for i, a in enumerate(ms) for b in ms[i + 1 :]
        )


def full_subgroup(G: FiniteGroup) -> Subgroup:
    """G as a subgroup of itself (cached)."""
    if "full" not in G._cache:
        G._cache["full"] = Subgroup(G, range(G.order), _trusted=True)
    return G._cache["full"]


def trivial_subgroup(G: FiniteGroup) -> Subgroup:
    return Subgroup(G, (G.identity,), _trusted=True)


def _require_subgroup_of(G: FiniteGroup, H: Subgroup) -> None:
    if H.parent is not G:
        raise SubgroupMismatch("subgroup belongs to a different parent group")


def closure_of(G: FiniteGroup, gens: Iterable[int]) -> frozenset:
    """Member set of the subgroup generated by gens (BFS closure)."""
    gens = [g for g in gens]
    seen = {G.identity}
    frontier = []
    for g in gens:
        if g not in seen:
            seen.add(g)
            frontier.append(g)
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = G.mul(x, g)
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
                z = G.mul(g, x)
                if z not in seen:
                    seen.add(z)
                    nxt.append(z)
        frontier = nxt
    return frozenset(seen)


def subgroup_generated(G: FiniteGroup, gens: Iterable[int]) -> Subgroup:
    """Smallest subgroup of G containing gens, in canonical sorted form."""
    return Subgroup(G, closure_of(G, gens), _trusted=True)


def all_subgroups(G: FiniteGroup, cap: int = DEFAULT_SUBGROUP_CAP) -> list[Subgroup]:
    """Every subgroup of G, duplicate-free, sorted by (order, members).

    Grown by closing the cyclic subgroups under pairwise joins; complete
    because any subgroup is reached by adding its cyclic generators one
    at a time.
    """
    if G.order > cap:
        raise OrderCapExceeded(
            f"subgroup enumeration needs order <= {cap}, got {G.order}",
            needed=G.order,
            cap=cap,
        )
    if "all_subgroups" in G._cache:
        return list(G._cache["all_subgroups"])
    cyclics = set()
    for x in range(G.order):
        cyclics.add(closure_of(G, (x,)))
    known: set[frozenset] = set(cyclics)
    frontier = list(cyclics)
    while frontier:
        fresh = []
        for H in frontier:
            for C in cyclics:
                if C <= H:
                    continue
                joined = closure_of(G, tuple(H | C))
                if joined not in known:
                    known.add(joined)
                    fresh.append(joined)
        frontier = fresh
    out = sorted(
        (Subgroup(G, ms, _trusted=True) for ms in known),
        key=lambda H: (H.order, H.members),
    )
    G._cache["all_subgroups"] = tuple(out)
    return out


def center(G: FiniteGroup) -> Subgroup:
    if "center" not in G._cache:
        members = [
            x
            for x in range(G.order)
            if all(G.mul(x, y) == G.mul(y, x) for y in range(G.order))
        ]
        G._cache["center"] = Subgroup(G, members, _trusted=True)
    return G._cache["center"]


def centralizer(G: FiniteGroup, H: Subgroup) -> Subgroup:
    _require_subgroup_of(G, H)
    members = [
        x
        for x in range(G.order)
        if all(G.mul(x, h) == G.mul(h, x) for h in H.members)
    ]
    return Subgroup(G, members, _trusted=True)


def normalizer(G: FiniteGroup, H: Subgroup) -> Subgroup:
    _require_subgroup_of(G, H)
    hset = H._member_set()
    members = [
        g for g in range(G.order) if all(G.conj(g, h) in hset for h in H.members)
    ]
    return Subgroup(G, members, _trusted=True)


def conjugate_subgroup(G: FiniteGroup, g: int, H: Subgroup) -> Subgroup:
    """The subgroup g H g^-1."""
    _require_subgroup_of(G, H)
    return Subgroup(G, (G.conj(g, h) for h in H.members), _trusted=True)


def is_normal(G: FiniteGroup, H: Subgroup) -> bool:
    _require_subgroup_of(G, H)
    hset = H._member_set()
    return all(G.conj(g, h) in hset for g in range(G.order) for h in H.members)


def _p_part(n: int, p: int) -> int:
    out = 1
    while n % p == 0:
        n //= p
        out *= p
    return out


def sylow_subgroup(G: FiniteGroup, p: int) -> Subgroup:
    """A Sylow p-subgroup, found deterministically by normalizer climbing
    from the least element of order p."""
    target = _p_part(G.order, p)
    if target == 1:
        return trivial_subgroup(G)
    key = ("sylow", p)
    if key in G._cache:
        return G._cache[key]
    start = None
    for x in range(G.order):
        if x != G.identity and G.power(x, p) == G.identity:
            start = x
            break
    if start is None:
        raise InternalInvariantError("Cauchy element of order p not found")
    gens = [start]
    current = closure_of(G, gens)
    while len(current) < target:
        nset = current
        # normalizer of <gens>: test conjugation on generators only
        normal_members = [
            g
            for g in range(G.order)
            if all(G.conj(g, h) in nset for h in gens)
        ]
        grown = False
        for y in normal_members:
            if y in current:
                continue
            if G.power(y, p) in current:
                gens.append(y)
                current = closure_of(G, gens)
                grown = True
                break
        if not grown:
            raise InternalInvariantError("normalizer climb stalled below Sylow order")
    if len(current) != target:
        raise InternalInvariantError("Sylow climb overshot the p-part")
    result = Subgroup(G, current, _trusted=True)
    G._cache[key] = result
    return result


def derived_subgroup(G: FiniteGroup) -> Subgroup:
    """[G, G]; the full commutator set is conjugation-stable, so plain
    closure suffices."""
    if "derived" not in G._cache:
        comms = set()
        for a in range(G.order):
            ia = G.inv(a)
            for b in range(G.order):
                comms.add(G.mul(G.mul(ia, G.inv(b)), G.mul(a, b)))
        G._cache["derived"] = subgroup_generated(G, comms)
    return G._cache["derived"]


def frattini_subgroup_p(G: FiniteGroup, p: int) -> Subgroup:
    """Frattini subgroup of a p-group: [G,G] G^p."""
    gens = set(derived_subgroup(G).members)
    for x in range(G.order):
        gens.add(G.power(x, p))
    return subgroup_generated(G, gens)


def minimal_generating_set(G: FiniteGroup) -> list[int]:
    """A small generating set; minimal for p-groups via the Frattini
    quotient, greedy otherwise."""
    if "mingens" in G._cache:
        return list(G._cache["mingens"])
    if G.order == 1:
        G._cache["mingens"] = ()
        return []
    base: set[int] = {G.identity}
    p = None
    for q in range(2, G.order + 1):
        if G.order % q == 0:
            p = q
            break
    if p is not None and G.is_p_group(p):
        base = set(frattini_subgroup_p(G, p).members)
    gens: list[int] = []
    current = frozenset(base)
    for x in range(G.order):
        if x in current:
            continue
        gens.append(x)
        current = closure_of(G, gens + [y for y in base])
        if len(current) == G.order:
            break
    if len(current) != G.order:
        raise InternalInvariantError("generating set search failed")
    G._cache["mingens"] = tuple(gens)
    return gens


class GroupHom:
    """A total homomorphism from a subgroup into a group, stored as an
    element-level map (images aligned with the sorted domain members)."""

    __slots__ = ("domain", "codomain", "images", "_map")

    def __init__(
        self,
        domain: Subgroup,
        codomain: FiniteGroup,
        images: Sequence[int],
        _trusted: bool = False,
    ):
        self.domain = domain
        self.codomain = codomain
        self.images = tuple(images)
        if len(self.images) != len(domain.members):
            raise InvalidInput("image list does not match domain size")
        self._map = dict(zip(domain.members, self.images))
        if not _trusted:
            self._validate()

    def _validate(self) -> None:
        G, H = self.domain.parent, self.codomain
        m = self._map
        for x in self.domain.members:
            if not (0 <= m[x] < H.order):
                raise InvalidInput("image index out of range")
        for x in self.domain.members:
            for y in self.domain.members:
                if m[G.mul(x, y)] != H.mul(m[x], m[y]):
                    raise InvalidInput("map is not a homomorphism")
        # image must be a subgroup; closure check doubles as a sanity net
        Subgroup(H, set(self.images))

    def __call__(self, x: int) -> int:
        return self._map[x]

    @property
    def is_injective(self) -> bool:
        return len(set(self.images)) == len(self.images)

    def image_subgroup(self) -> Subgroup:
        return Subgroup(self.codomain, set(self.images), _trusted=True)

    def restrict(self, H: Subgroup) -> "GroupHom":
        if H.parent is not self.domain.parent or not set(H.members) <= set(
            self.domain.members
        ):
            raise SubgroupMismatch("restriction target is not inside the domain")
        return GroupHom(
            H, self.codomain, tuple(self._map[x] for x in H.members), _trusted=True
        )

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, GroupHom)
            and self.domain == other.domain
            and self.codomain is other.codomain
            and self.images == other.images
        )

    def __hash__(self) -> int:
        return hash((self.domain, id(self.codomain), self.images))

    def __repr__(self) -> str:
        return f"GroupHom(|dom|={self.domain.order} -> {self.codomain.label})"


def identity_hom(G: FiniteGroup) -> GroupHom:
    full = full_subgroup(G)
    return GroupHom(full, G, full.members, _trusted=True)


def _extend_generator_images(
    P: FiniteGroup,
    S: FiniteGroup,
    gens: Sequence[int],
    gen_images: Sequence[int],
) -> Optional[tuple[int, ...]]:
    """Grow a map P -> S from generator images over the Cayley graph of P.

    Returns the full image tuple (indexed by P's elements) or None when
    the assignment is inconsistent.  Visiting every (element, generator)
    pair makes this a complete homomorphism check, not just a tree fill.
    """
    images: list[Optional[int]] = [None] * P.order
    images[P.identity] = S.identity
    for g, img in zip(gens, gen_images):
        if images[g] is not None and images[g] != img:
            return None
        images[g] = img
    queue = [P.identity] + [g for g in gens if g != P.identity]
    seen = set(queue)
    head = 0
    while head < len(queue):
        x = queue[head]
        head += 1
        for g, img in zip(gens, gen_images):
            y = P.mul(x, g)
            iy = S.mul(images[x], img)
            if images[y] is None:
                images[y] = iy
            elif images[y] != iy:
                return None
            if y not in seen:
                seen.add(y)
                queue.append(y)
    if len(seen) != P.order:
        return None  # gens do not generate P; caller guards against this
    # re-walk all (element, generator) products now that every image exists
    for x in range(P.order):
        for g, img in zip(gens, gen_images):
            if images[P.mul(x, g)] != S.mul(images[x], img):
                return None
    return tuple(images)  # type: ignore[arg-type]


def enumerate_homs(
    P: FiniteGroup, S: FiniteGroup, cap: int = DEFAULT_HOM_CAP
) -> list[GroupHom]:
    """Every homomorphism P -> S (injective or not), including the trivial
    one, by backtracking over images of a minimal generating set."""
    if P.order > cap or S.order > cap:
        raise OrderCapExceeded(
            f"hom enumeration needs orders <= {cap}", needed=max(P.order, S.order), cap=cap
        )
    gens = minimal_generating_set(P)
    fullP = full_subgroup(P)
    if not gens:
        return [GroupHom(fullP, S, (S.identity,), _trusted=True)]
    candidates = []
    for g in gens:
        og = P.element_order(g)
        candidates.append([s for s in range(S.order) if og % S.element_order(s) == 0])
    found: list[tuple[int, ...]] = []
    assignment = [0] * len(gens)

    def backtrack(i: int) -> None:
        if i == len(gens):
            images = _extend_generator_images(P, S, gens, assignment)
            if images is not None:
                found.append(images)
            return
        for img in candidates[i]:
            assignment[i] = img
            backtrack(i + 1)

    backtrack(0)
    found.sort()
    return [GroupHom(fullP, S, images, _trusted=True) for images in found]


def subgroup_as_group(G: FiniteGroup, H: Subgroup) -> tuple[FiniteGroup, list[int]]:
    """H as a standalone group plus the list mapping its indices back to
    parent indices.  Returns G itself when H is all of G."""
    _require_subgroup_of(G, H)
    if H.order == G.order:
        return G, list(range(G.order))
    members = list(H.members)
    pos = {m: i for i, m in enumerate(members)}

    def compose(a, b):
        return pos[G.mul(members[a], members[b])]

    def invert(a):
        return pos[G.inv(members[a])]

    grp = FiniteGroup(
        range(len(members)),
        compose,
        invert,
        label=f"{G.label}|sub{H.order}",
        identity=pos[G.identity],
        prime_hint=G.prime_hint,
    )
    return grp, members


def quotient_group(G: FiniteGroup, N: Subgroup) -> tuple[FiniteGroup, GroupHom]:
    """G/N (N must be normal) plus the projection homomorphism.

    Cosets are ordered by their least member, so the result is canonical.
    """
    _require_subgroup_of(G, N)
    if not is_normal(G, N):
        raise InvalidInput("quotient by a non-normal subgroup")
    coset_of = [-1] * G.order
    reps: list[int] = []
    for x in range(G.order):
        if coset_of[x] >= 0:
            continue
        cos = sorted(G.mul(x, n) for n in N.members)
        idx = len(reps)
        reps.append(cos[0])
        for y in cos:
            coset_of[y] = idx
    order_key = sorted(range(len(reps)), key=lambda i: reps[i])
    rank = {old: new for new, old in enumerate(order_key)}
    reps = [reps[i] for i in order_key]
    coset_of = [rank[c] for c in coset_of]

    def compose(a, b):
        return coset_of[G.mul(reps[a], reps[b])]

    def invert(a):
        return coset_of[G.inv(reps[a])]

    Q = FiniteGroup(
        range(len(reps)),
        compose,
        invert,
        label=f"{G.label}/N{N.order}",
        identity=coset_of[G.identity],
        prime_hint=G.prime_hint,
    )
    proj = GroupHom(full_subgroup(G), Q, tuple(coset_of), _trusted=True)
    return Q, proj


def abelianization_moduli(G: FiniteGroup) -> list[int]:
    """Cyclic factor sizes of G/[G,G] (unsorted diagnostic helper)."""
    Q, _ = quotient_group(G, derived_subgroup(G))
    mods = []
    seen = trivial_subgroup(Q)
    for x in range(Q.order):
        if x in seen:
            continue
        mods.append(Q.element_order(x))
        seen = subgroup_generated(Q, set(seen.members) | {x})
        if seen.order == Q.order:
            break
    return mods


def product_set_size(G: FiniteGroup, A: Subgroup, B: Subgroup) -> int:
    """|A·B| as a plain product of member sets."""
    out = set()
    for a in A.members:
        for b in B.members:
            out.add(G.mul(a, b))
    return len(out)


def intersect(A: Subgroup, B: Subgroup) -> Subgroup:
    if A.parent is not B.parent:
        raise SubgroupMismatch("intersection across different parents")
    return Subgroup(A.parent, set(A.members) & set(B.members), _trusted=True)
