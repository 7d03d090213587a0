"""Group input encodings and the builder that turns them into FiniteGroups.

Four JSON kinds are accepted:

    {"kind": "perm", "degree": n, "generators": [[...], ...]}
    {"kind": "table", "table": [[...], ...]}
    {"kind": "semidirect", "base": <spec>, "actor": <spec>, "action": [...]}
    {"kind": "matrix", "field": {"char": 2, "deg": k}, "dim": d,
     "generators": [[d*d ints], ...]}

All integers are 0-based.  Generator-driven kinds (perm, matrix) are
enumerated by breadth-first closure from the identity with generators in
the given order; tables keep their own indexing; semidirect products use
the base-major product order.  Shorthand strings (``cyclic:n``,
``elem-abelian:p^k``, ``sym:n``, ``wreath:p,n,q``, ``b3r:r,gamma``,
``sz8``) expand to full specs, so equal inputs hash equally.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Optional, Sequence

from .errors import InvalidSpec, OrderCapExceeded
from .gf2k import gf2k
from .groups import DEFAULT_BUILD_CAP, FiniteGroup


@dataclass(frozen=True)
class PermSpec:
    degree: int
    generators: tuple[tuple[int, ...], ...]

    def validate(self) -> None:
        if self.degree < 1:
            raise InvalidSpec("permutation degree must be positive")
        for g in self.generators:
            if sorted(g) != list(range(self.degree)):
                raise InvalidSpec(f"not a bijection on 0..{self.degree - 1}: {g}")


@dataclass(frozen=True)
class TableSpec:
    table: tuple[tuple[int, ...], ...]

    def validate(self) -> None:
        n = len(self.table)
        if n == 0:
            raise InvalidSpec("empty multiplication table")
        idx = list(range(n))
        for row in self.table:
            if len(row) != n or sorted(row) != idx:
                raise InvalidSpec("table is not a Latin square")
        for j in range(n):
            if sorted(row[j] for row in self.table) != idx:
                raise InvalidSpec("table is not a Latin square")
        ident = [
            e
            for e in range(n)
            if all(self.table[e][x] == x and self.table[x][e] == x for x in range(n))
        ]
        if len(ident) != 1:
            raise InvalidSpec("table has no two-sided identity")
        # associativity: exhaustive when small, seeded sampling when not
        if n <= 128:
            triples = (
                (a, b, c) for a in range(n) for b in range(n) for c in range(n)
            )
        else:
            rng = random.Random(0xF05)
            triples = (
                (rng.randrange(n), rng.randrange(n), rng.randrange(n))
                for _ in range(100_000)
            )
        t = self.table
        for a, b, c in triples:
            if t[t[a][b]][c] != t[a][t[b][c]]:
                raise InvalidSpec("table is not associative")

    def identity_index(self) -> int:
        n = len(self.table)
        for e in range(n):
            if all(self.table[e][x] == x and self.table[x][e] == x for x in range(n)):
                return e
        raise InvalidSpec("table has no identity")


@dataclass(frozen=True)
class SemidirectSpec:
    base: dict
    actor: dict
    action: tuple[int, ...]  # automorphism of the base, as an index permutation

    def validate(self) -> None:
        if sorted(self.action) != list(range(len(self.action))):
            raise InvalidSpec("action is not a permutation of the base")


@dataclass(frozen=True)
class MatrixSpec:
    field_deg: int
    dim: int
    generators: tuple[tuple[int, ...], ...]

    def validate(self) -> None:
        F = gf2k(self.field_deg)
        d = self.dim
        for mat in self.generators:
            if len(mat) != d * d:
                raise InvalidSpec("matrix generator has wrong shape")
            if any(not (0 <= x < F.size) for x in mat):
                raise InvalidSpec("matrix entry outside the field")
            if _gf_matrix_rank(F, d, mat) != d:
                raise InvalidSpec("matrix generator is singular")


GroupSpec = PermSpec | TableSpec | SemidirectSpec | MatrixSpec


def _gf_matrix_rank(F, d: int, mat: Sequence[int]) -> int:
    rows = [list(mat[i * d : (i + 1) * d]) for i in range(d)]
    rank = 0
    for col in range(d):
        piv = next((r for r in range(rank, d) if rows[r][col]), None)
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        inv = F.inv(rows[rank][col])
        rows[rank] = [F.mul(inv, v) for v in rows[rank]]
        for r in range(d):
            if r != rank and rows[r][col]:
                f = rows[r][col]
                rows[r] = [F.add(v, F.mul(f, w)) for v, w in zip(rows[r], rows[rank])]
        rank += 1
    return rank


def _gf_matrix_inverse(F, d: int, mat: tuple[int, ...]) -> tuple[int, ...]:
    rows = [list(mat[i * d : (i + 1) * d]) + [int(i == j) for j in range(d)] for i in range(d)]
    for col in range(d):
        piv = next((r for r in range(col, d) if rows[r][col]), None)
        if piv is None:
            raise InvalidSpec("singular matrix")
        rows[col], rows[piv] = rows[piv], rows[col]
        inv = F.inv(rows[col][col])
        rows[col] = [F.mul(inv, v) for v in rows[col]]
        for r in range(d):
            if r != col and rows[r][col]:
                f = rows[r][col]
                rows[r] = [F.add(v, F.mul(f, w)) for v, w in zip(rows[r], rows[col])]
    out = []
    for i in range(d):
        out.extend(rows[i][d:])
    return tuple(out)


def _bfs_closure(identity, gens, compose, cap, label):
    if len(set(gens)) != len(gens):
        gens = list(dict.fromkeys(gens))
    elements = [identity]
    seen = {identity}
    head = 0
    while head < len(elements):
        x = elements[head]
        head += 1
        for g in gens:
            y = compose(x, g)
            if y not in seen:
                seen.add(y)
                elements.append(y)
                if len(elements) > cap:
                    raise OrderCapExceeded(
                        f"{label}: closure exceeded the cap of {cap}", cap=cap
                    )
    return elements


def build_group(
    spec: GroupSpec, cap: int = DEFAULT_BUILD_CAP, label: Optional[str] = None
) -> FiniteGroup:
    """Construct the group a spec describes; element order is deterministic."""
    spec.validate()
    if isinstance(spec, PermSpec):
        d = spec.degree
        identity = tuple(range(d))

        def compose(p, q):  # apply p, then q
            return tuple(q[p[i]] for i in range(d))

        def invert(p):
            out = [0] * d
            for i, v in enumerate(p):
                out[v] = i
            return tuple(out)

        elements = _bfs_closure(identity, list(spec.generators), compose, cap, "perm")
        return FiniteGroup(
            elements,
            compose,
            invert,
            label=label or f"Perm{d}",
            identity=0,
            spec=spec_to_json(spec),
        )

    if isinstance(spec, TableSpec):
        n = len(spec.table)
        if n > cap:
            raise OrderCapExceeded(f"table of size {n} exceeds the cap {cap}", cap=cap)
        t = spec.table
        inv_row = [0] * n
        e = spec.identity_index()
        for a in range(n):
            inv_row[a] = list(t[a]).index(e)
        return FiniteGroup(
            range(n),
            lambda a, b: t[a][b],
            lambda a: inv_row[a],
            label=label or f"Table{n}",
            identity=e,
            spec=spec_to_json(spec),
        )

    if isinstance(spec, SemidirectSpec):
        base = build_group(parse_group_spec(spec.base), cap=cap)
        actor = build_group(parse_group_spec(spec.actor), cap=cap)
        if base.order * actor.order > cap:
            raise OrderCapExceeded(
                f"semidirect order {base.order * actor.order} exceeds the cap {cap}",
                cap=cap,
            )
        action = spec.action
        if len(action) != base.order:
            raise InvalidSpec("action length does not match the base order")
        for a in range(base.order):
            for b in range(base.order):
                if action[base.mul(a, b)] != base.mul(action[a], action[b]):
                    raise InvalidSpec("action is not an automorphism of the base")
        # the actor must be cyclic; its canonical generator is the least
        # element of full order
        gen = next(
            (t for t in range(actor.order) if actor.element_order(t) == actor.order),
            None,
        )
        if gen is None:
            raise InvalidSpec("semidirect actor is not cyclic")
        powers = [list(range(base.order))]
        for _ in range(actor.order - 1):
            powers.append([action[x] for x in powers[-1]])
        if [action[x] for x in powers[-1]] != powers[0]:
            raise InvalidSpec("action order does not divide the actor order")
        exp_of = [0] * actor.order
        t, k = actor.identity, 0
        for _ in range(actor.order):
            exp_of[t] = k
            t = actor.mul(t, gen)
            k += 1
        act_for = [powers[exp_of[t]] for t in range(actor.order)]
        na = actor.order

        def compose(x, y):
            b1, t1 = x
            b2, t2 = y
            return (base.mul(b1, act_for[t1][b2]), actor.mul(t1, t2))

        def invert(x):
            b, t = x
            ti = actor.inv(t)
            return (act_for[ti][base.inv(b)], ti)

        elements = [(b, t) for b in range(base.order) for t in range(na)]
        return FiniteGroup(
            elements,
            compose,
            invert,
            label=label or f"{base.label}:{actor.label}",
            identity=base.identity * na + actor.identity,
            spec=spec_to_json(spec),
        )

    if isinstance(spec, MatrixSpec):
        F = gf2k(spec.field_deg)
        d = spec.dim
        identity = tuple(int(i == j) for i in range(d) for j in range(d))

        def compose(A, B):
            out = []
            for i in range(d):
                arow = A[i * d : (i + 1) * d]
                for j in range(d):
                    acc = 0
                    for k in range(d):
                        acc ^= F.mul_table[arow[k]][B[k * d + j]]
                    out.append(acc)
            return tuple(out)

        def invert(A):
            return _gf_matrix_inverse(F, d, A)

        elements = _bfs_closure(identity, list(spec.generators), compose, cap, "matrix")
        return FiniteGroup(
            elements,
            compose,
            invert,
            label=label or f"Mat{d}(GF{F.size})",
            identity=0,
            spec=spec_to_json(spec),
        )

    raise InvalidSpec(f"unknown spec type {type(spec)!r}")


# ---------------------------------------------------------------------------
# JSON encoding


def spec_to_json(spec: GroupSpec) -> dict:
    if isinstance(spec, PermSpec):
        return {
            "kind": "perm",
            "degree": spec.degree,
            "generators": [list(g) for g in spec.generators],
        }
    if isinstance(spec, TableSpec):
        return {"kind": "table", "table": [list(r) for r in spec.table]}
    if isinstance(spec, SemidirectSpec):
        return {
            "kind": "semidirect",
            "base": spec.base,
            "actor": spec.actor,
            "action": list(spec.action),
        }
    if isinstance(spec, MatrixSpec):
        return {
            "kind": "matrix",
            "field": {"char": 2, "deg": spec.field_deg},
            "dim": spec.dim,
            "generators": [list(g) for g in spec.generators],
        }
    raise InvalidSpec(f"unknown spec type {type(spec)!r}")


def parse_group_spec(data) -> GroupSpec:
    """Parse a JSON object (or shorthand string) into a validated spec."""
    if isinstance(data, str):
        return parse_group_spec(expand_shorthand(data))
    if isinstance(data, (PermSpec, TableSpec, SemidirectSpec, MatrixSpec)):
        return data
    if not isinstance(data, dict) or "kind" not in data:
        raise InvalidSpec("group spec must be an object with a 'kind' field")
    kind = data["kind"]
    try:
        if kind == "perm":
            spec: GroupSpec = PermSpec(
                degree=int(data["degree"]),
                generators=tuple(tuple(int(x) for x in g) for g in data["generators"]),
            )
        elif kind == "table":
            spec = TableSpec(
                table=tuple(tuple(int(x) for x in row) for row in data["table"])
            )
        elif kind == "semidirect":
            spec = SemidirectSpec(
                base=data["base"] if isinstance(data["base"], dict) else expand_shorthand(data["base"]),
                actor=data["actor"] if isinstance(data["actor"], dict) else expand_shorthand(data["actor"]),
                action=tuple(int(x) for x in data["action"]),
            )
        elif kind == "matrix":
            field = data["field"]
            if int(field.get("char", 0)) != 2:
                raise InvalidSpec("matrix specs support characteristic 2 only")
            spec = MatrixSpec(
                field_deg=int(field["deg"]),
                dim=int(data["dim"]),
                generators=tuple(tuple(int(x) for x in g) for g in data["generators"]),
            )
        else:
            raise InvalidSpec(f"unknown group spec kind {kind!r}")
    except (KeyError, TypeError, ValueError) as exc:
        raise InvalidSpec(f"malformed group spec: {exc}") from exc
    spec.validate()
    return spec


# ---------------------------------------------------------------------------
# shorthand expansion


def _cycle(points: Sequence[int], degree: int) -> tuple[int, ...]:
    out = list(range(degree))
    for i, pt in enumerate(points):
        out[pt] = points[(i + 1) % len(points)]
    return tuple(out)


def expand_shorthand(text: str) -> dict:
    """Expand a shorthand group name into a full JSON spec."""
    text = text.strip()
    if text == "sz8":
        from .catalog import suzuki8_spec

        return suzuki8_spec()
    if ":" not in text:
        raise InvalidSpec(f"unknown group shorthand {text!r}")
    head, _, args = text.partition(":")
    try:
        if head == "cyclic":
            n = int(args)
            if n < 1:
                raise ValueError
            return {
                "kind": "perm",
                "degree": n,
                "generators": [list(_cycle(list(range(n)), n))],
            }
        if head == "elem-abelian":
            p_s, _, k_s = args.partition("^")
            p, k = int(p_s), int(k_s)
            degree = p * k
            gens = [
                list(_cycle(list(range(i * p, (i + 1) * p)), degree)) for i in range(k)
            ]
            return {"kind": "perm", "degree": degree, "generators": gens}
        if head == "sym":
            n = int(args)
            if n < 2:
                raise ValueError
            gens = [list(_cycle([0, 1], n))]
            if n > 2:
                gens.append(list(_cycle(list(range(n)), n)))
            return {"kind": "perm", "degree": n, "generators": gens}
        if head == "alt":
            n = int(args)
            if n < 3:
                raise ValueError
            gens = [list(_cycle([0, 1, 2], n))]
            if n > 3:
                if n % 2:
                    gens.append(list(_cycle(list(range(n)), n)))
                else:
                    gens.append(list(_cycle(list(range(1, n)), n)))
            return {"kind": "perm", "degree": n, "generators": gens}
        if head == "dihedral":
            n = int(args)  # order 2n, acting on n points
            if n < 3:
                raise ValueError
            rot = list(_cycle(list(range(n)), n))
            refl = [(-i) % n for i in range(n)]
            return {"kind": "perm", "degree": n, "generators": [rot, refl]}
        if head == "wreath":
            from .catalog import wreath_spec

            p, n, q = (int(x) for x in args.split(","))
            return wreath_spec(p, n, q)
        if head == "b3r":
            from .catalog import b3r_spec

            r, gamma = (int(x) for x in args.split(","))
            return b3r_spec(r, gamma)
    except ValueError as exc:
        raise InvalidSpec(f"malformed shorthand {text!r}") from exc
    raise InvalidSpec(f"unknown group shorthand {text!r}")


def group_from_json(data, cap: int = DEFAULT_BUILD_CAP, label: Optional[str] = None) -> FiniteGroup:
    return build_group(parse_group_spec(data), cap=cap, label=label)
