"""Dg categories with finitely many objects and finite-dimensional homs.

A category is a graded quiver plus structure tables: a unit vector per
object, a sparse composition table on basis arrows, a differential of
degree +1, and optionally a curvature endomorphism of degree 2 per object.
Missing table entries mean zero; every stored vector must land in the slot
its degrees dictate, and ``validate`` re-derives all axioms from scratch:

    1_y o f = f = f o 1_x            d(1_x) = 0
    (h o g) o f = h o (g o f)        d(g o f) = dg o f + (-1)^|g| g o df
    d(d(f)) = h_y o f - f o h_x      h_x in degree 2, d(h_x) = 0

The uncurved case is h = 0.  A zero unit vector is rejected except in the
one-object category with no morphisms at all (0 = 1 forces everything to
vanish, so that is the only model).

Composition is written ``compose(g, f)`` = "g after f" throughout; no
Koszul sign lives here.  Signs enter in ``tensor_dg`` (interchanging a
morphism past a morphism) and ``opposite`` (reversal).
"""

from __future__ import annotations

from typing import Dict, List, Optional, Tuple

from .complexes import BoundedComplex
from .field import Field, Vec, vec_add, vec_bump, vec_eq, vec_scale, vec_sub
from .matrix import SparseMatrix
from .quiver import GradedQuiver, Key, quiver_tensor


class DgCategory:
    def __init__(
        self,
        field: Field,
        quiver: GradedQuiver,
        unit: Dict[object, Vec],
        comp: Dict[Tuple[Key, Key], Vec],
        diff: Optional[Dict[Key, Vec]] = None,
        curvature: Optional[Dict[object, Vec]] = None,
    ):
        self.field = field
        self.quiver = quiver
        self.unit = {x: dict(v) for x, v in unit.items() if v}
        self.comp = {pair: dict(v) for pair, v in comp.items() if v}
        self.diff = {k: dict(v) for k, v in (diff or {}).items() if v}
        self.curvature = {x: dict(v) for x, v in (curvature or {}).items() if v}

    # -- evaluation ---------------------------------------------------------

    def unit_vec(self, x) -> Vec:
        return dict(self.unit.get(x, {}))

    def curvature_vec(self, x) -> Vec:
        return dict(self.curvature.get(x, {}))

    def is_curved(self) -> bool:
        return any(self.curvature.values())

    def apply_d(self, vec: Vec) -> Vec:
        F = self.field
        out: Vec = {}
        for key, c in vec.items():
            for k2, c2 in self.diff.get(key, {}).items():
                vec_bump(F, out, k2, F.mul(c, c2))
        return out

    def compose(self, g: Vec, f: Vec) -> Vec:
        """Bilinear extension of the basis composition table; g after f."""
        F = self.field
        out: Vec = {}
        for gk, gc in g.items():
            for fk, fc in f.items():
                entry = self.comp.get((gk, fk))
                if not entry:
                    continue
                c = F.mul(gc, fc)
                for k2, c2 in entry.items():
                    vec_bump(F, out, k2, F.mul(c, c2))
        return out

    def basis_vec(self, key: Key) -> Vec:
        return {key: self.field.one}

    # -- validation ---------------------------------------------------------

    def _vec_ok(self, vec: Vec, slot, problems: List[str], what: str) -> None:
        for k in vec:
            if (k[0], k[1], k[2]) != slot or not self.quiver.has_key(k):
                problems.append(f"{what}: component {k} outside slot {slot}")

    def validate(self, max_problems: int = 25) -> List[str]:
        problems: List[str] = []
        F = self.field
        Q = self.quiver

        def done():
            return len(problems) >= max_problems

        # units exist, sit in degree-0 endo slots, are closed
        for x in Q.objects:
            u = self.unit.get(x, {})
            if not u:
                if Q.total_dim() > 0:
                    problems.append(
                        f"unit at {x!r} is zero in a nonzero category"
                    )
                continue
            self._vec_ok(u, (x, x, 0), problems, f"unit at {x!r}")
            if self.apply_d(u):
                problems.append(f"unit at {x!r} is not closed")
        if done():
            return problems

        # table hygiene: domains exist, images land in forced slots
        for key, img in self.diff.items():
            if not Q.has_key(key):
                problems.append(f"differential of unknown key {key}")
                continue
            x, y, n, _ = key
            self._vec_ok(img, (x, y, n + 1), problems, f"d{key}")
        for (gk, fk), img in self.comp.items():
            if not Q.has_key(gk) or not Q.has_key(fk):
                problems.append(f"composition entry on unknown keys {gk}, {fk}")
                continue
            fx, fy, fn, _ = fk
            gx, gy, gn, _ = gk
            if fy != gx:
                problems.append(f"composition of non-composable pair {gk} o {fk}")
                continue
            self._vec_ok(img, (fx, gy, fn + gn), problems, f"{gk} o {fk}")
        for x, h in self.curvature.items():
            if x not in Q.objects:
                problems.append(f"curvature at unknown object {x!r}")
                continue
            self._vec_ok(h, (x, x, 2), problems, f"curvature at {x!r}")
            if self.apply_d(h):
                problems.append(f"curvature at {x!r} is not closed")
        if done():
            return problems

        keys = list(Q.keys())

        # unit laws
        for k in keys:
            x, y, _, _ = k
            v = self.basis_vec(k)
            if not vec_eq(self.compose(self.unit_vec(y), v), v):
                problems.append(f"1 o {k} != {k}")
            if not vec_eq(self.compose(v, self.unit_vec(x)), v):
                problems.append(f"{k} o 1 != {k}")
            if done():
                return problems

        # associativity over all composable basis triples
        by_src: Dict[object, List[Key]] = {}
        for k in keys:
            by_src.setdefault(k[0], []).append(k)
        for f in keys:
            for g in by_src.get(f[1], ()):
                gf = self.compose(self.basis_vec(g), self.basis_vec(f))
                for h in by_src.get(g[1], ()):
                    hv = self.basis_vec(h)
                    lhs = self.compose(hv, gf)
                    rhs = self.compose(
                        self.compose(hv, self.basis_vec(g)), self.basis_vec(f)
                    )
                    if not vec_eq(lhs, rhs):
                        problems.append(f"associativity fails on ({h}, {g}, {f})")
                        if done():
                            return problems

        # Leibniz
        for f in keys:
            fv = self.basis_vec(f)
            df = self.apply_d(fv)
            for g in by_src.get(f[1], ()):
                gv = self.basis_vec(g)
                lhs = self.apply_d(self.compose(gv, fv))
                rhs = vec_add(F, self.compose(self.apply_d(gv), fv),
                              vec_scale(F, F.coerce(-1) if g[2] % 2 else F.one,
                                        self.compose(gv, df)))
                if not vec_eq(lhs, rhs):
                    problems.append(f"Leibniz fails on ({g}, {f})")
                    if done():
                        return problems

        # d^2 = [h, -]
        for f in keys:
            x, y, _, _ = f
            fv = self.basis_vec(f)
            dd = self.apply_d(self.apply_d(fv))
            want = vec_sub(
                F,
                self.compose(self.curvature_vec(y), fv),
                self.compose(fv, self.curvature_vec(x)),
            )
            if not vec_eq(dd, want):
                problems.append(f"d^2 on {f} does not match curvature bracket")
                if done():
                    return problems

        return problems

    # -- hom complexes ------------------------------------------------------

    def hom_complex(self, x, y, lo: int, hi: int) -> BoundedComplex:
        """Hom(x, y) as a complex on [lo, hi]; refuses if d^2 != 0 there."""
        F = self.field
        dims, labels = {}, {}
        for n in range(lo, hi + 1):
            names = self.quiver.slot(x, y, n)
            dims[n] = len(names)
            labels[n] = [(x, y, n, a) for a in names]
        diffs = {}
        for n in range(lo, hi):
            src, tgt = labels[n], labels[n + 1]
            if not src or not tgt:
                continue
            pos = {k: i for i, k in enumerate(tgt)}
            entries = {}
            for j, key in enumerate(src):
                for k2, c in self.diff.get(key, {}).items():
                    if k2 in pos:
                        entries[(pos[k2], j)] = c
            diffs[n] = SparseMatrix(F, len(tgt), len(src), entries)
        cx = BoundedComplex(F, dims, diffs, labels=labels)
        bad = cx.validate()
        if bad:
            raise ValueError(f"hom({x!r}, {y!r}) is not a complex: {bad[0]}")
        return cx

    def hom_homology(self, x, y, lo: int, hi: int) -> Dict[int, int]:
        """dim H^n for n strictly inside the window, where edges are unsafe."""
        cx = self.hom_complex(x, y, lo - 1, hi + 1)
        return cx.homology_dims(lo, hi)

    def __repr__(self) -> str:
        kind = "curved dg" if self.is_curved() else "dg"
        return (
            f"DgCategory({kind}, {len(self.quiver.objects)} objects, "
            f"dim {self.quiver.total_dim()})"
        )


# ---------------------------------------------------------------------------
# constructions


def empty_category(field: Field) -> DgCategory:
    return DgCategory(field, GradedQuiver((), {}), {}, {})


def zero_category(field: Field) -> DgCategory:
    """One object, no morphisms at all; the only category with 1 = 0."""
    return DgCategory(field, GradedQuiver(("*",), {}), {"*": {}}, {})


def free_category(
    field: Field,
    generators: GradedQuiver,
    d_gen: Optional[Dict[Key, Vec]] = None,
) -> DgCategory:
    """Path category on an object-acyclic generator quiver.

    Basis = composable generator words (a_1, ..., a_n) with a_1 applied
    first; the empty word at x is the unit.  Names must be globally unique
    so a word can be stored as a tuple of names.  ``d_gen`` sends generator
    keys to word vectors (unit components allowed); it extends as a
    derivation

        d(a_1 .. a_n) = sum_i (-1)^{|a_{i+1}| + .. + |a_n|} a_1 .. d(a_i) .. a_n

    matching d(g o f) = dg o f + (-1)^|g| g o df once words compose by
    concatenation.  d^2 = 0 is the caller's obligation; ``validate`` checks.
    """
    names = [k[3] for k in generators.keys()]
    if len(set(names)) != len(names):
        raise ValueError("free_category needs globally unique generator names")

    # object-level acyclicity so the word basis is finite
    succ: Dict[object, set] = {x: set() for x in generators.objects}
    for x, y, _ in generators.slots:
        if x == y:
            raise ValueError(f"generator loop at {x!r}: word basis is infinite")
        succ[x].add(y)
    seen: Dict[object, int] = {}

    def dfs(v):
        seen[v] = 1
        for w in succ[v]:
            if seen.get(w) == 1 or (w not in seen and dfs(w)):
                return True
        seen[v] = 2
        return False

    for v in generators.objects:
        if v not in seen and dfs(v):
            raise ValueError("generator quiver has a directed cycle")

    gen_keys = list(generators.keys())
    by_src = {}
    for k in gen_keys:
        by_src.setdefault(k[0], []).append(k)

    # words[(x, y, deg)] -> list of tuples of generator keys
    all_words: Dict[Tuple[object, object, int], List[Tuple[Key, ...]]] = {}
    for x in generators.objects:
        all_words.setdefault((x, x, 0), []).append(())
    grow = [(k,) for k in gen_keys]
    while grow:
        nxt = []
        for w in grow:
            x = w[0][0]
            y = w[-1][1]
            deg = sum(k[2] for k in w)
            all_words.setdefault((x, y, deg), []).append(w)
            for k in by_src.get(y, ()):
                nxt.append(w + (k,))
        grow = nxt

    def word_name(w: Tuple[Key, ...]):
        return tuple(k[3] for k in w)

    def word_key(w: Tuple[Key, ...], at=None) -> Key:
        if not w:
            return (at, at, 0, ())
        return (w[0][0], w[-1][1], sum(k[2] for k in w), word_name(w))

    slots = {}
    word_by_name: Dict[Tuple[object, object], Dict[Tuple, Tuple[Key, ...]]] = {}
    for (x, y, n), ws in all_words.items():
        slots[(x, y, n)] = tuple(word_name(w) for w in ws)
        for w in ws:
            word_by_name.setdefault((x, y), {})[word_name(w)] = w
    quiver = GradedQuiver(generators.objects, slots)

    unit = {x: {(x, x, 0, ()): field.one} for x in generators.objects}

    comp: Dict[Tuple[Key, Key], Vec] = {}
    for (x, y, n), ws in all_words.items():
        for w1 in ws:
            k1 = word_key(w1, at=x)
            for (y2, z, m), ws2 in all_words.items():
                if y2 != y:
                    continue
                for w2 in ws2:
                    k2 = word_key(w2, at=y)
                    joined = w1 + w2
                    comp[(k2, k1)] = {word_key(joined, at=x): field.one}

    diff: Dict[Key, Vec] = {}
    if d_gen:
        F = field

        def d_letter(k: Key) -> Vec:
            return d_gen.get(k, {})

        for (x, y, n), ws in all_words.items():
            for w in ws:
                if not w:
                    continue
                out: Vec = {}
                for i, k in enumerate(w):
                    tail_deg = sum(kk[2] for kk in w[i + 1:])
                    sign = F.coerce(-1) if tail_deg % 2 else F.one
                    for dk, c in d_letter(k).items():
                        # dk is a word key in the free category
                        repl = word_by_name[(dk[0], dk[1])][dk[3]]
                        new = w[:i] + repl + w[i + 1:]
                        vec_bump(F, out, word_key(new, at=x), F.mul(sign, c))
                if out:
                    diff[word_key(w, at=x)] = out
    return DgCategory(field, quiver, unit, comp, diff=diff)


def tensor_dg(c: DgCategory, d: DgCategory) -> DgCategory:
    """C (x) D: pairwise objects, Koszul sign when a morphism crosses one.

    (g (x) g') o (f (x) f') = (-1)^{|g'| |f|} (g o f) (x) (g' o f')
    d(f (x) f') = df (x) f' + (-1)^|f| f (x) df'
    h_(x,x') = h_x (x) 1 + 1 (x) h_x'
    """
    if c.field is not d.field:
        raise ValueError("tensor needs a common ground field")
    F = c.field
    quiver = quiver_tensor(c.quiver, d.quiver)

    def pair_key(k1: Key, k2: Key) -> Key:
        return (
            (k1[0], k2[0]),
            (k1[1], k2[1]),
            k1[2] + k2[2],
            ((k1[2], k1[3]), (k2[2], k2[3])),
        )

    def pair_vec(v1: Vec, v2: Vec, sign=None) -> Vec:
        out: Vec = {}
        for k1, a in v1.items():
            for k2, b in v2.items():
                coeff = F.mul(a, b)
                if sign is not None:
                    coeff = F.mul(coeff, sign(k1, k2))
                vec_bump(F, out, pair_key(k1, k2), coeff)
        return out

    unit = {}
    for x in c.quiver.objects:
        for xp in d.quiver.objects:
            unit[(x, xp)] = pair_vec(c.unit_vec(x), d.unit_vec(xp))

    comp: Dict[Tuple[Key, Key], Vec] = {}
    ckeys = list(c.quiver.keys())
    dkeys = list(d.quiver.keys())
    for g1 in ckeys:
        for f1 in ckeys:
            if f1[1] != g1[0]:
                continue
            base = c.comp.get((g1, f1))
            if not base:
                continue
            for g2 in dkeys:
                for f2 in dkeys:
                    if f2[1] != g2[0]:
                        continue
                    base2 = d.comp.get((g2, f2))
                    if not base2:
                        continue
                    sgn = F.coerce(-1) if (g2[2] * f1[2]) % 2 else F.one
                    comp[(pair_key(g1, g2), pair_key(f1, f2))] = vec_scale(
                        F, sgn, pair_vec(base, base2)
                    )

    diff: Dict[Key, Vec] = {}
    for k1 in ckeys:
        d1 = c.diff.get(k1, {})
        for k2 in dkeys:
            d2 = d.diff.get(k2, {})
            out: Vec = {}
            for kk, cc in pair_vec(d1, {k2: F.one}).items():
                vec_bump(F, out, kk, cc)
            sgn = F.coerce(-1) if k1[2] % 2 else F.one
            for kk, cc in pair_vec({k1: F.one}, d2).items():
                vec_bump(F, out, kk, F.mul(sgn, cc))
            if out:
                diff[pair_key(k1, k2)] = out

    curvature: Dict[object, Vec] = {}
    for x in c.quiver.objects:
        for xp in d.quiver.objects:
            h = vec_add(
                F,
                pair_vec(c.curvature_vec(x), d.unit_vec(xp)),
                pair_vec(c.unit_vec(x), d.curvature_vec(xp)),
            )
            if h:
                curvature[(x, xp)] = h
    return DgCategory(F, quiver, unit, comp, diff=diff, curvature=curvature)


def opposite(c: DgCategory) -> DgCategory:
    """Reverse arrows: g op f = (-1)^{|f||g|} f o g, h^op = -h, same d."""
    F = c.field

    def flip(k: Key) -> Key:
        return (k[1], k[0], k[2], k[3])

    quiver = GradedQuiver(
        c.quiver.objects,
        {(y, x, n): names for (x, y, n), names in c.quiver.slots.items()},
    )
    unit = {x: {flip(k): v for k, v in u.items()} for x, u in c.unit.items()}
    diff = {
        flip(k): {flip(k2): v for k2, v in img.items()}
        for k, img in c.diff.items()
    }
    comp = {}
    for (gk, fk), img in c.comp.items():
        sgn = F.coerce(-1) if (gk[2] * fk[2]) % 2 else F.one
        comp[(flip(fk), flip(gk))] = {
            flip(k2): F.mul(sgn, v) for k2, v in img.items()
        }
    curvature = {
        x: {flip(k): F.neg(v) for k, v in h.items()}
        for x, h in c.curvature.items()
    }
    return DgCategory(F, quiver, unit, comp, diff=diff, curvature=curvature)


# ---------------------------------------------------------------------------
# functors


class DgFunctor:
    """Strict functor: object map plus degree-0 action on basis arrows.

    ``validate`` checks slot discipline, F(1) = 1, F(g o f) = F(g) o F(f),
    F(df) = d(F f), and F-image of curvature equals target curvature.
    """

    def __init__(
        self,
        source: DgCategory,
        target: DgCategory,
        object_map: Dict[object, object],
        action: Dict[Key, Vec],
    ):
        self.source = source
        self.target = target
        self.object_map = dict(object_map)
        self.action = {k: dict(v) for k, v in action.items() if v}

    def apply(self, vec: Vec) -> Vec:
        F = self.target.field
        out: Vec = {}
        for k, c in vec.items():
            for k2, c2 in self.action.get(k, {}).items():
                vec_bump(F, out, k2, F.mul(c, c2))
        return out

    def validate(self, max_problems: int = 25) -> List[str]:
        problems: List[str] = []
        src, tgt = self.source, self.target
        om = self.object_map
        for x in src.quiver.objects:
            if om.get(x) not in tgt.quiver.objects:
                problems.append(f"object {x!r} has no valid image")
        if problems:
            return problems
        for k, img in self.action.items():
            if not src.quiver.has_key(k):
                problems.append(f"action on unknown key {k}")
                continue
            x, y, n, _ = k
            for k2 in img:
                if (k2[0], k2[1], k2[2]) != (om[x], om[y], n) or not tgt.quiver.has_key(k2):
                    problems.append(f"image of {k} leaves its slot")
        for x in src.quiver.objects:
            if not vec_eq(self.apply(src.unit_vec(x)), tgt.unit_vec(om[x])):
                problems.append(f"unit at {x!r} not preserved")
            hx = self.apply(src.curvature_vec(x))
            if not vec_eq(hx, tgt.curvature_vec(om[x])):
                problems.append(f"curvature at {x!r} not preserved")
        keys = list(src.quiver.keys())
        for f in keys:
            fv = src.basis_vec(f)
            if not vec_eq(self.apply(src.apply_d(fv)), tgt.apply_d(self.apply(fv))):
                problems.append(f"differential not preserved on {f}")
            if len(problems) >= max_problems:
                return problems
        for f in keys:
            for g in keys:
                if f[1] != g[0]:
                    continue
                fv, gv = src.basis_vec(f), src.basis_vec(g)
                lhs = self.apply(src.compose(gv, fv))
                rhs = tgt.compose(self.apply(gv), self.apply(fv))
                if not vec_eq(lhs, rhs):
                    problems.append(f"composition not preserved on ({g}, {f})")
                    if len(problems) >= max_problems:
                        return problems
        return problems


def identity_functor(c: DgCategory) -> DgFunctor:
    return DgFunctor(
        c,
        c,
        {x: x for x in c.quiver.objects},
        {k: {k: c.field.one} for k in c.quiver.keys()},
    )


def compose_functors(g: DgFunctor, f: DgFunctor) -> DgFunctor:
    if f.target is not g.source:
        raise ValueError("functors not composable")
    return DgFunctor(
        f.source,
        g.target,
        {x: g.object_map[y] for x, y in f.object_map.items()},
        {k: g.apply(v) for k, v in f.action.items()},
    )
