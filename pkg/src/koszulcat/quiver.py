"""Graded quivers: objects plus a named basis per (source, target, degree).

Degrees are cohomological (differentials elsewhere have degree +1).  A basis
arrow is addressed end to end by its key ``(src, tgt, degree, name)``; every
structure table in the category and coalgebra layers is a sparse dict over
these keys, so nothing downstream ever renumbers a basis.

The monoidal structure lives here: tensor (pairwise objects, degree-graded
Kuenneth basis) and the right adjoint internal hom (objects are *all* object
maps, which is why it carries a cap guard).  The hom-count identity

    |Maps(U (x) V, W)| = |Maps(U, Hom(V, W))|

over a finite field is the contract the two constructions satisfy jointly;
the test suite checks it by exact counting.
"""

from __future__ import annotations

from typing import Dict, Iterable, Iterator, List, Optional, Tuple

from .field import Field, Vec

Slot = Tuple[object, object, int]  # (src, tgt, degree)
Key = Tuple[object, object, int, object]  # (src, tgt, degree, name)


class GradedQuiver:
    def __init__(self, objects: Iterable, slots: Dict[Slot, Iterable]):
        self.objects = tuple(objects)
        if len(set(self.objects)) != len(self.objects):
            raise ValueError("duplicate objects")
        obset = set(self.objects)
        self.slots: Dict[Slot, Tuple] = {}
        for (x, y, n), names in slots.items():
            names = tuple(names)
            if not names:
                continue
            if x not in obset or y not in obset:
                raise ValueError(f"slot ({x}, {y}) references unknown objects")
            if not isinstance(n, int):
                raise ValueError(f"degree {n!r} is not an integer")
            if len(set(names)) != len(names):
                raise ValueError(f"duplicate basis names in slot ({x}, {y}, {n})")
            self.slots[(x, y, n)] = names

    def dim(self, x, y, n: int) -> int:
        return len(self.slots.get((x, y, n), ()))

    def slot(self, x, y, n: int) -> Tuple:
        return self.slots.get((x, y, n), ())

    def keys(self) -> Iterator[Key]:
        for (x, y, n), names in self.slots.items():
            for a in names:
                yield (x, y, n, a)

    def total_dim(self) -> int:
        return sum(len(v) for v in self.slots.values())

    def degree_support(self) -> Tuple[int, int]:
        if not self.slots:
            return (0, -1)
        degs = [n for (_, _, n) in self.slots]
        return (min(degs), max(degs))

    def has_key(self, key: Key) -> bool:
        x, y, n, a = key
        return a in self.slots.get((x, y, n), ())

    def shifted(self, k: int) -> "GradedQuiver":
        """V[k]: an element of degree d lands in degree d - k."""
        return GradedQuiver(
            self.objects,
            {(x, y, n - k): names for (x, y, n), names in self.slots.items()},
        )

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, GradedQuiver)
            and self.objects == other.objects
            and self.slots == other.slots
        )

    def __repr__(self) -> str:
        return f"GradedQuiver({len(self.objects)} objects, dim {self.total_dim()})"


def quiver_tensor(v: GradedQuiver, w: GradedQuiver) -> GradedQuiver:
    """Objects are pairs; (V(x)W)((x,x'),(y,y')) = (+)_{p+q=n} V(x,y)_p (x) W(x',y')_q.

    Basis names are ((p, a), (q, b)) so the two tensor legs stay addressable.
    """
    objects = [(x, xp) for x in v.objects for xp in w.objects]
    slots: Dict[Slot, List] = {}
    for (x, y, p), anames in v.slots.items():
        for (xp, yp, q), bnames in w.slots.items():
            dst = ((x, xp), (y, yp), p + q)
            bucket = slots.setdefault(dst, [])
            for a in anames:
                for b in bnames:
                    bucket.append(((p, a), (q, b)))
    return GradedQuiver(objects, slots)


def quiver_internal_hom(
    v: GradedQuiver, w: GradedQuiver, max_objects: int = 512
) -> GradedQuiver:
    """Right adjoint of tensor: objects are all maps Ob V -> Ob W.

    Hom(f, g) in degree n is (+)_{x,y} Hom_n(V(x,y), W(fx, gy)); a basis
    element (x, y, p, a, b) is the elementary map sending a to b.  The number
    of objects is |Ob W| ** |Ob V|, guarded by ``max_objects``.
    """
    if v.objects and not w.objects:
        return GradedQuiver((), {})
    count = len(w.objects) ** len(v.objects)
    if count > max_objects:
        raise ValueError(
            f"internal hom would have {count} objects (cap {max_objects})"
        )

    def all_maps():
        if not v.objects:
            yield ()
            return
        pools = [w.objects] * len(v.objects)
        idx = [0] * len(v.objects)
        while True:
            yield tuple(zip(v.objects, (p[i] for p, i in zip(pools, idx))))
            k = len(idx) - 1
            while k >= 0:
                idx[k] += 1
                if idx[k] < len(pools[k]):
                    break
                idx[k] = 0
                k -= 1
            if k < 0:
                return

    objects = list(all_maps())
    slots: Dict[Slot, List] = {}
    for f in objects:
        fd = dict(f)
        for g in objects:
            gd = dict(g)
            for (x, y, p), anames in v.slots.items():
                for (x2, y2, q), bnames in w.slots.items():
                    if x2 != fd[x] or y2 != gd[y]:
                        continue
                    dst = (f, g, q - p)
                    bucket = slots.setdefault(dst, [])
                    for a in anames:
                        for b in bnames:
                            bucket.append((x, y, p, a, b))
    return GradedQuiver(objects, slots)


def count_quiver_maps(v: GradedQuiver, w: GradedQuiver, field: Field) -> int:
    """Number of degree-0 quiver maps V -> W over a finite field.

    A map is an object map f plus an arbitrary linear map per slot, so the
    count is a sum over f of q ** sum(dim V(x,y,n) * dim W(fx, fy, n)).
    """
    if field.size is None:
        raise ValueError("counting needs a finite field")
    if not v.objects:
        return 1
    if not w.objects:
        return 0
    q = field.size
    total = 0

    def rec(i: int, fd: dict):
        nonlocal total
        if i == len(v.objects):
            e = 0
            for (x, y, n), names in v.slots.items():
                e += len(names) * w.dim(fd[x], fd[y], n)
            total += q**e
            return
        for t in w.objects:
            fd[v.objects[i]] = t
            rec(i + 1, fd)
        del fd[v.objects[i]]

    rec(0, {})
    return total


# ---------------------------------------------------------------------------
# augmented quivers: unit and counit over k[Ob], with a split reduced part


class AugmentedQuiver:
    """A graded quiver with unit eta: k[Ob] -> V and counit eps: V -> k[Ob].

    eta picks a degree-0 endomorphism vector per object; eps is a functional
    on each degree-0 endomorphism slot.  The axiom is eps(eta(x)) = 1 with
    eps vanishing between distinct objects (which the slot structure already
    enforces).  ``reduced_basis`` computes a named basis of ker(eps), which
    in degree-0 endomorphism slots is a genuine complement of the unit line.
    """

    def __init__(
        self,
        field: Field,
        quiver: GradedQuiver,
        unit: Dict[object, Vec],
        counit: Dict[object, Dict[object, object]],
    ):
        self.field = field
        self.quiver = quiver
        self.unit = {x: dict(v) for x, v in unit.items()}
        self.counit = {x: dict(f) for x, f in counit.items()}

    def validate(self) -> List[str]:
        problems: List[str] = []
        F = self.field
        for x in self.quiver.objects:
            u = self.unit.get(x)
            if not u:
                problems.append(f"object {x!r} has no unit vector")
                continue
            for key in u:
                sx, tx, n, _ = key
                if not self.quiver.has_key(key):
                    problems.append(f"unit of {x!r} uses unknown key {key}")
                elif (sx, tx, n) != (x, x, 0):
                    problems.append(f"unit of {x!r} not in degree-0 endo slot")
            eps = self.counit.get(x, {})
            val = F.zero
            for key, c in u.items():
                val = F.add(val, F.mul(eps.get(key[3], F.zero), c))
            if val != F.one:
                problems.append(f"eps(eta({x!r})) = {val}, expected 1")
        return problems

    def reduced_basis(self) -> Dict[Slot, List[Tuple[object, Vec]]]:
        """Named basis of ker(eps) per slot; names reuse basis arrows where
        they lie in the kernel and synthesize 'red<i>' vectors otherwise."""
        F = self.field
        out: Dict[Slot, List[Tuple[object, Vec]]] = {}
        for (x, y, n), names in self.quiver.slots.items():
            eps = self.counit.get(x, {}) if (x == y and n == 0) else {}
            plain = [a for a in names if F.is_zero(F.coerce(eps.get(a, F.zero)))]
            if len(plain) == len(names):
                out[(x, y, n)] = [
                    (a, {(x, y, n, a): F.one}) for a in names
                ]
                continue
            # one relation eps = 0: solve for a pivot name with eps != 0
            pivot = next(a for a in names if not F.is_zero(F.coerce(eps.get(a, F.zero))))
            pv = F.coerce(eps[pivot])
            basis: List[Tuple[object, Vec]] = []
            for i, a in enumerate(names):
                if a == pivot:
                    continue
                va = F.coerce(eps.get(a, F.zero))
                v: Vec = {(x, y, n, a): F.one}
                if not F.is_zero(va):
                    v[(x, y, n, pivot)] = F.neg(F.div(va, pv))
                    basis.append((f"red{i}", v))
                else:
                    basis.append((a, v))
            out[(x, y, n)] = basis
        return out


def validate_quiver_map(
    v: GradedQuiver,
    w: GradedQuiver,
    object_map: Dict[object, object],
    action: Dict[Key, Vec],
) -> List[str]:
    """Degree-0 map check: every image vector sits in the matching slot."""
    problems = []
    for x in v.objects:
        if object_map.get(x) not in w.objects:
            problems.append(f"object {x!r} has no valid image")
    for key, img in action.items():
        if not v.has_key(key):
            problems.append(f"unknown source key {key}")
            continue
        x, y, n, _ = key
        want = (object_map.get(x), object_map.get(y), n)
        for wk in img:
            if (wk[0], wk[1], wk[2]) != want or not w.has_key(wk):
                problems.append(f"image of {key} leaves slot {want}: {wk}")
    return problems
