"""Convolution categories, Maurer-Cartan elements, and the closed structure.

For a pointed curved coalgebra C and a dg category D, the convolution
category {C, D} has object maps Ob C -> Ob D as objects and graded maps
from C into D-arrows as morphisms:

    (d phi)(c)   = d_D(phi c) - (-1)^{|phi|} phi(d_C c)
    (psi * phi)(c) = sum (-1)^{(|phi| + |c1|) |c2|} psi(c2) o phi(c1)
    unit at f    = eta o f o eps
    curvature    = eta o f o h_C  (+ h_D o f o eps when C is counital)

The reduced variant {C-bar, D} drops the grouplike rows (and with them all
units).  Its Maurer-Cartan elements -- degree-1 cochains xi with
d xi + xi * xi + h = 0 -- are in bijection with dg functors Omega C -> D
and with coalgebra morphisms C -> BD; both transports live here, together
with the Maurer-Cartan category MC*(C, D) (homs from the unital convolution,
differential twisted by the endpoint elements), the internal hom
uHom(C, BD) = B MC*(C, D), and the Eilenberg-Zilber comparison functor
Omega(C (x) C') -> Omega C (x) Omega C'.

Cochains are spanned by ("o", x, dk) -- the grouplike row at x sent to the
D-arrow dk -- and ("r", ck, dk), of degree |dk| - |ck|.  All tables are
finite; the infinite constructions only enter through materialized bar and
cobar output.
"""

from dataclasses import dataclass
from itertools import product
from typing import Dict, List, Optional, Sequence, Tuple

from .field import Field, Vec, vec_addmul, vec_bump, vec_eq, vec_scale, vec_sub
from .quiver import GradedQuiver, Key
from .dgcat import DgCategory, DgFunctor, tensor_dg
from .coalgebra import (
    CoalgebraMorphism,
    FinalCoalgebra,
    PointedCoalgebra,
    identity_morphism,
    tensor_coalgebras,
    associated_graded,
    zero_coalgebra,
)
from .barcobar import (
    CobarResult,
    Splitting,
    _word_key,
    bar_construction,
    cobar_construction,
)


# ---------------------------------------------------------------------------
# row systems

# Tensor-row naming, shared with the pointed tensor coalgebra so that
# interchange and Eilenberg-Zilber bookkeeping is pure relabelling.


def _lkey(ck: Key, y) -> Key:
    return ((ck[0], y), (ck[1], y), ck[2], ((ck[2], ck[3]), ("G", y)))


def _rkey(x, dk: Key) -> Key:
    return ((x, dk[0]), (x, dk[1]), dk[2], (("G", x), (dk[2], dk[3])))


def _bkey(ck: Key, dk: Key) -> Key:
    return (
        (ck[0], dk[0]),
        (ck[1], dk[1]),
        ck[2] + dk[2],
        ((ck[2], ck[3]), (dk[2], dk[3])),
    )


class RowSystem:
    """Row-level view of a coalgebra with or without its counit.

    ``comult`` holds only the row (x) row part of the comultiplication; the
    canonical g (x) c + c (x) g terms are implied by the ``counital`` flag.
    One table format then covers a pointed coalgebra, its counit kernel,
    and the kernel tensored with another pointed coalgebra -- exactly the
    coalgebra legs the convolution construction has to accept.
    """

    def __init__(self, field: Field, objects, counital: bool,
                 rows: GradedQuiver, comult, diff, curv):
        self.field = field
        self.objects = tuple(objects)
        self.counital = bool(counital)
        self.rows = rows
        comult = {
            k: {p: c for p, c in v.items() if not field.is_zero(c)}
            for k, v in comult.items()
        }
        self.comult = {k: v for k, v in comult.items() if v}
        self.diff = {k: dict(v) for k, v in diff.items() if v}
        self.curv = {k: c for k, c in curv.items() if not field.is_zero(c)}

    @classmethod
    def from_coalgebra(cls, coa: PointedCoalgebra, counital: bool = True) -> "RowSystem":
        return cls(coa.field, coa.objects, counital, coa.reduced,
                   coa.comult, coa.diff, coa.curv)

    @classmethod
    def reduced_tensor(cls, c: PointedCoalgebra, cp: PointedCoalgebra) -> "RowSystem":
        """Counit kernel of ``c`` tensored with all of ``cp``.

        Not the kernel of the tensor: the comultiplication keeps the full
        coproduct of ``cp`` but only the reduced one of ``c``, so there is
        no counit and no implied grouplike terms.
        """
        if c.field is not cp.field:
            raise ValueError("tensor needs a common scalar field")
        F = c.field
        objects = [(x, y) for x in c.objects for y in cp.objects]
        ckeys = list(c.reduced.keys())
        pkeys = list(cp.reduced.keys())
        slots: Dict = {}

        def add(k: Key):
            slots.setdefault((k[0], k[1], k[2]), []).append(k[3])

        for a in ckeys:
            for y in cp.objects:
                add(_lkey(a, y))
            for b in pkeys:
                add(_bkey(a, b))
        comult: Dict = {}
        diff: Dict = {}
        curv: Dict = {}
        for a in ckeys:
            red_a = c.comult.get(a, {})
            # grouplike right leg: cofactors stay in the same column
            for y in cp.objects:
                k = _lkey(a, y)
                terms: Dict = {}
                for (a1, a2), al in red_a.items():
                    vec_bump(F, terms, (_lkey(a1, y), _lkey(a2, y)), al)
                if terms:
                    comult[k] = terms
                dv: Vec = {}
                for a2, coeff in c.diff.get(a, {}).items():
                    vec_bump(F, dv, _lkey(a2, y), coeff)
                if dv:
                    diff[k] = dv
                h = c.curv.get(a)
                if h is not None:
                    curv[k] = h
            sgn_a = F.coerce(-1) if a[2] % 2 else F.one
            for b in pkeys:
                k = _bkey(a, b)
                terms = {}
                # a1 (x) a2 against the full coproduct of b; Koszul sign
                # (-1)^{|a2||b-left|} from moving a2 past the left cofactor
                for (a1, a2), al in red_a.items():
                    vec_bump(F, terms, (_lkey(a1, b[0]), _bkey(a2, b)), al)
                    s = F.coerce(-1) if (a2[2] * b[2]) % 2 else F.one
                    vec_bump(F, terms, (_bkey(a1, b), _lkey(a2, b[1])), F.mul(al, s))
                    for (b1, b2), bl in cp.comult.get(b, {}).items():
                        s = F.coerce(-1) if (a2[2] * b1[2]) % 2 else F.one
                        vec_bump(F, terms, (_bkey(a1, b1), _bkey(a2, b2)),
                                 F.mul(F.mul(al, bl), s))
                if terms:
                    comult[k] = terms
                dv = {}
                for a2, coeff in c.diff.get(a, {}).items():
                    vec_bump(F, dv, _bkey(a2, b), coeff)
                for b2, coeff in cp.diff.get(b, {}).items():
                    vec_bump(F, dv, _bkey(a, b2), F.mul(sgn_a, coeff))
                if dv:
                    diff[k] = dv
                # h_C (x) eps' kills the non-grouplike right leg; the reduced
                # left leg has no counit, so h' never contributes
        quiver = GradedQuiver(objects, slots)
        return cls(F, objects, False, quiver, comult, diff, curv)

def _row_system(c, counital: bool) -> RowSystem:
    if isinstance(c, RowSystem):
        if c.counital == counital:
            return c
        return RowSystem(c.field, c.objects, counital, c.rows,
                         c.comult, c.diff, c.curv)
    return RowSystem.from_coalgebra(c, counital=counital)


# ---------------------------------------------------------------------------
# the convolution category


class ConvolutionCategory:
    """{C, D} with the tables exposed per basis cochain.

    Objects are object maps, stored as tuples in coalgebra-object order.
    ``to_dg_category`` materializes the whole thing (counital side only --
    the reduced convolution has no units and stays a wrapper with its own
    validator).
    """

    def __init__(self, rows: RowSystem, cat: DgCategory,
                 object_maps: Optional[Sequence] = None, max_objects: int = 128):
        if rows.field is not cat.field:
            raise ValueError("convolution needs matching scalar fields")
        self.field = rows.field
        self.rows = rows
        self.cat = cat
        self.index = {x: i for i, x in enumerate(rows.objects)}
        targets = list(cat.quiver.objects)
        if object_maps is None:
            if not rows.objects:
                maps = [()]
            else:
                total = len(targets) ** len(rows.objects)
                if total > max_objects:
                    raise ValueError(
                        f"{total} object maps exceed the cap {max_objects}; "
                        "pass object_maps explicitly")
                maps = [tuple(p) for p in product(targets, repeat=len(rows.objects))]
        else:
            maps, seen = [], set()
            for m in object_maps:
                t = self._om_tuple(m)
                if t not in seen:
                    seen.add(t)
                    maps.append(t)
        self.object_maps = maps
        self._dT: Optional[Dict] = None
        self._deltaT: Optional[Dict] = None

    def _om_tuple(self, m) -> Tuple:
        if isinstance(m, dict):
            m = tuple(m[x] for x in self.rows.objects)
        m = tuple(m)
        if len(m) != len(self.rows.objects):
            raise ValueError("object map has the wrong length")
        for y in m:
            if y not in self.cat.quiver.objects:
                raise ValueError(f"object map hits unknown object {y!r}")
        return m

    def om_value(self, fk: Tuple, x):
        return fk[self.index[x]]

    # -- transposed coalgebra tables (d and Delta read backwards) ----------

    def _diff_transpose(self) -> Dict:
        if self._dT is None:
            t: Dict = {}
            for c, dv in self.rows.diff.items():
                for ck2, coeff in dv.items():
                    t.setdefault(ck2, []).append((c, coeff))
            self._dT = t
        return self._dT

    def _delta_transpose(self) -> Dict:
        if self._deltaT is None:
            t = {}
            for c, terms in self.rows.comult.items():
                for (a, b), coeff in terms.items():
                    t.setdefault((a, b), []).append((c, coeff))
            self._deltaT = t
        return self._deltaT

    # -- hom bases ---------------------------------------------------------

    def hom_keys(self, fk: Tuple, gk: Tuple) -> List[Key]:
        out = []
        dkeys = list(self.cat.quiver.keys())
        if self.rows.counital:
            for i, x in enumerate(self.rows.objects):
                fx, gx = fk[i], gk[i]
                for dk in dkeys:
                    if dk[0] == fx and dk[1] == gx:
                        out.append((fk, gk, dk[2], ("o", x, dk)))
        for ck in self.rows.rows.keys():
            fx = self.om_value(fk, ck[0])
            gy = self.om_value(gk, ck[1])
            for dk in dkeys:
                if dk[0] == fx and dk[1] == gy:
                    out.append((fk, gk, dk[2] - ck[2], ("r", ck, dk)))
        return out

    # -- structure tables per basis cochain --------------------------------

    def diff_vec(self, key: Key) -> Vec:
        fk, gk, n, name = key
        F = self.field
        out: Vec = {}
        dk = name[2]
        for dk2, c in self.cat.apply_d(self.cat.basis_vec(dk)).items():
            vec_bump(F, out, (fk, gk, n + 1, (name[0], name[1], dk2)), c)
        if name[0] == "r":
            # -(-1)^n phi(dc): rows whose differential hits this one
            ck = name[1]
            s = F.coerce(-1) if n % 2 == 0 else F.one
            for cprev, coeff in self._diff_transpose().get(ck, ()):
                vec_bump(F, out, (fk, gk, n + 1, ("r", cprev, dk)),
                         F.mul(s, coeff))
        return out

    def comp_vec(self, kpsi: Key, kphi: Key) -> Vec:
        """psi * phi on basis cochains; key order matches comp[(g, f)]."""
        fk, gmid, p, nphi = kphi
        gmid2, hk, q, npsi = kpsi
        if gmid2 != gmid:
            return {}
        F = self.field
        dphi, dpsi = nphi[2], npsi[2]
        if dphi[1] != dpsi[0]:
            return {}
        dd = self.cat.compose(self.cat.basis_vec(dpsi), self.cat.basis_vec(dphi))
        if not dd:
            return {}
        n = p + q
        out: Vec = {}
        if nphi[0] == "o" and npsi[0] == "o":
            if nphi[1] != npsi[1]:
                return {}
            for dk2, c in dd.items():
                vec_bump(F, out, (fk, hk, n, ("o", nphi[1], dk2)), c)
        elif nphi[0] == "o":
            # phi eats the canonical grouplike at the source of psi's row
            ck = npsi[1]
            if not self.rows.counital or nphi[1] != ck[0]:
                return {}
            neg = (p * ck[2]) % 2 == 1
            for dk2, c in dd.items():
                vec_bump(F, out, (fk, hk, n, ("r", ck, dk2)),
                         F.neg(c) if neg else c)
        elif npsi[0] == "o":
            ck = nphi[1]
            if not self.rows.counital or npsi[1] != ck[1]:
                return {}
            for dk2, c in dd.items():
                vec_bump(F, out, (fk, hk, n, ("r", ck, dk2)), c)
        else:
            a, b = nphi[1], npsi[1]
            for crow, lam in self._delta_transpose().get((a, b), ()):
                coeff = F.neg(lam) if ((p + a[2]) * b[2]) % 2 else lam
                for dk2, c in dd.items():
                    vec_bump(F, out, (fk, hk, n, ("r", crow, dk2)),
                             F.mul(coeff, c))
        return out

    def unit_vec(self, fk: Tuple) -> Vec:
        if not self.rows.counital:
            raise ValueError("the reduced convolution category has no units")
        F = self.field
        out: Vec = {}
        for i, x in enumerate(self.rows.objects):
            for dk, c in self.cat.unit_vec(fk[i]).items():
                vec_bump(F, out, (fk, fk, 0, ("o", x, dk)), c)
        return out

    def curvature_vec(self, fk: Tuple) -> Vec:
        F = self.field
        out: Vec = {}
        for ck, h in self.rows.curv.items():
            fx = self.om_value(fk, ck[0])
            for dk, c in self.cat.unit_vec(fx).items():
                vec_bump(F, out, (fk, fk, dk[2] - ck[2], ("r", ck, dk)),
                         F.mul(h, c))
        if self.rows.counital:
            for i, x in enumerate(self.rows.objects):
                for dk, c in self.cat.curvature_vec(fk[i]).items():
                    vec_bump(F, out, (fk, fk, dk[2], ("o", x, dk)), c)
        return out

    # -- bilinear wrappers -------------------------------------------------

    def apply_d(self, vec: Vec) -> Vec:
        F = self.field
        out: Vec = {}
        for k, c in vec.items():
            for k2, c2 in self.diff_vec(k).items():
                vec_bump(F, out, k2, F.mul(c, c2))
        return out

    def star(self, psi: Vec, phi: Vec) -> Vec:
        F = self.field
        out: Vec = {}
        for kp, cp in psi.items():
            for kf, cf in phi.items():
                for k2, c2 in self.comp_vec(kp, kf).items():
                    vec_bump(F, out, k2, F.mul(F.mul(cp, cf), c2))
        return out

    # -- materialization and validation ------------------------------------

    def to_dg_category(self) -> DgCategory:
        if not self.rows.counital:
            raise ValueError("the reduced convolution category has no units; "
                             "keep the wrapper and use its validator")
        slots: Dict = {}
        keyed: Dict[Tuple, List[Key]] = {}
        for fk in self.object_maps:
            for gk in self.object_maps:
                ks = self.hom_keys(fk, gk)
                keyed[(fk, gk)] = ks
                for k in ks:
                    slots.setdefault((fk, gk, k[2]), []).append(k[3])
        quiver = GradedQuiver(list(self.object_maps), slots)
        unit = {fk: self.unit_vec(fk) for fk in self.object_maps}
        diff = {}
        for ks in keyed.values():
            for k in ks:
                v = self.diff_vec(k)
                if v:
                    diff[k] = v
        comp = {}
        for fk in self.object_maps:
            for gk in self.object_maps:
                for hk in self.object_maps:
                    for kpsi in keyed[(gk, hk)]:
                        for kphi in keyed[(fk, gk)]:
                            v = self.comp_vec(kpsi, kphi)
                            if v:
                                comp[(kpsi, kphi)] = v
        curvature = {fk: self.curvature_vec(fk) for fk in self.object_maps}
        if not any(curvature.values()):
            curvature = None
        return DgCategory(self.field, quiver, unit, comp,
                          diff=diff or None, curvature=curvature)

    def validate(self, max_problems: int = 25) -> List[str]:
        if self.rows.counital:
            return self.to_dg_category().validate(max_problems=max_problems)
        return self._validate_reduced(max_problems)

    def _outer_curvature(self, vec: Vec, post: bool) -> Vec:
        # h_D o phi (post) / phi o h_D (pre), applied to the values
        F = self.field
        out: Vec = {}
        for (fk, gk, n, name), c in vec.items():
            dk = name[2]
            if post:
                dd = self.cat.compose(self.cat.curvature_vec(dk[1]),
                                      self.cat.basis_vec(dk))
            else:
                dd = self.cat.compose(self.cat.basis_vec(dk),
                                      self.cat.curvature_vec(dk[0]))
            for dk2, c2 in dd.items():
                vec_bump(F, out, (fk, gk, n + 2, (name[0], name[1], dk2)),
                         F.mul(c, c2))
        return out

    def _validate_reduced(self, max_problems: int) -> List[str]:
        """Reduced convolution over a possibly curved D is not itself a
        curved category: d^2 phi = [eta f h_C, phi]_* + h_D o phi - phi o h_D
        holds exactly, with the outer terms vanishing iff D is uncurved.
        Checks that identity plus associativity and the Leibniz rule.
        """
        F = self.field
        problems: List[str] = []
        keyed = {}
        for fk in self.object_maps:
            for gk in self.object_maps:
                keyed[(fk, gk)] = self.hom_keys(fk, gk)
        for (fk, gk), ks in keyed.items():
            hf = self.curvature_vec(fk)
            hg = self.curvature_vec(gk)
            for k in ks:
                one = {k: F.one}
                lhs = self.apply_d(self.apply_d(one))
                rhs = vec_sub(F, self.star(hg, one), self.star(one, hf))
                rhs = vec_addmul(F, rhs, F.one, self._outer_curvature(one, True))
                rhs = vec_addmul(F, rhs, F.coerce(-1),
                                 self._outer_curvature(one, False))
                if not vec_eq(lhs, rhs):
                    problems.append(f"d^2 identity fails on {k[3]}")
                    if len(problems) >= max_problems:
                        return problems
        for fk in self.object_maps:
            for gk in self.object_maps:
                for hk in self.object_maps:
                    for kpsi in keyed[(gk, hk)]:
                        vpsi = {kpsi: F.one}
                        for kphi in keyed[(fk, gk)]:
                            vphi = {kphi: F.one}
                            prod = self.comp_vec(kpsi, kphi)
                            lhs = self.apply_d(prod)
                            rhs = self.star(self.apply_d(vpsi), vphi)
                            s = F.coerce(-1) if kpsi[2] % 2 else F.one
                            rhs = vec_addmul(F, rhs, s,
                                             self.star(vpsi, self.apply_d(vphi)))
                            if not vec_eq(lhs, rhs):
                                problems.append(
                                    f"Leibniz fails on ({kpsi[3]}, {kphi[3]})")
                                if len(problems) >= max_problems:
                                    return problems
        for fk in self.object_maps:
            for gk in self.object_maps:
                for hk in self.object_maps:
                    for ik in self.object_maps:
                        for kchi in keyed[(hk, ik)]:
                            vchi = {kchi: F.one}
                            for kpsi in keyed[(gk, hk)]:
                                inner = self.comp_vec(kchi, kpsi)
                                vpsi = {kpsi: F.one}
                                for kphi in keyed[(fk, gk)]:
                                    vphi = {kphi: F.one}
                                    lhs = self.star(vchi, self.comp_vec(kpsi, kphi))
                                    rhs = self.star(inner, vphi)
                                    if not vec_eq(lhs, rhs):
                                        problems.append(
                                            "associativity fails on "
                                            f"({kchi[3]}, {kpsi[3]}, {kphi[3]})")
                                        if len(problems) >= max_problems:
                                            return problems
        return problems


def convolution_category(c, d: DgCategory, reduced: bool = False,
                         object_maps: Optional[Sequence] = None,
                         max_objects: int = 128) -> ConvolutionCategory:
    """{C, D}, or the reduced {C-bar, D} when ``reduced`` is set.

    ``c`` may be a pointed coalgebra or a prepared ``RowSystem`` (the latter
    is how the kernel-tensor leg of the interchange comes in).
    """
    rows = _row_system(c, counital=not reduced)
    return ConvolutionCategory(rows, d, object_maps=object_maps,
                               max_objects=max_objects)


# ---------------------------------------------------------------------------
# Maurer-Cartan elements


class MCElement:
    """Object map plus degree-1 twisting cochain on the reduced rows."""

    def __init__(self, object_map: Dict, xi: Dict[Key, Vec]):
        self.object_map = dict(object_map)
        self.xi = {k: dict(v) for k, v in xi.items() if v}

    def canonical(self) -> Tuple:
        om = tuple(sorted(self.object_map.items(), key=repr))
        xi = tuple(sorted(
            ((k, tuple(sorted(v.items(), key=repr))) for k, v in self.xi.items()),
            key=repr))
        return (om, xi)

    def __eq__(self, other) -> bool:
        return isinstance(other, MCElement) and self.canonical() == other.canonical()

    def __hash__(self) -> int:
        return hash(self.canonical())

    def __repr__(self) -> str:
        support = sorted({k[3] for k in self.xi}, key=repr)
        return f"MCElement({self.object_map!r}, xi on {support!r})"


def _mc_residual_row(rows: RowSystem, d: DgCategory, om: Dict,
                     xi: Dict[Key, Vec], ck: Key) -> Vec:
    """(d xi + xi * xi + h)(ck) in the reduced convolution."""
    F = rows.field
    r = d.apply_d(xi.get(ck, {}))
    for ck2, coeff in rows.diff.get(ck, {}).items():
        # -(-1)^{|xi|} xi(dc) with |xi| = 1
        r = vec_addmul(F, r, coeff, xi.get(ck2, {}))
    for (a, b), lam in rows.comult.get(ck, {}).items():
        va, vb = xi.get(a), xi.get(b)
        if not va or not vb:
            continue
        term = d.compose(vb, va)
        if not term:
            continue
        coeff = F.neg(lam) if ((1 + a[2]) * b[2]) % 2 else lam
        r = vec_addmul(F, r, coeff, term)
    h = rows.curv.get(ck)
    if h is not None:
        r = vec_addmul(F, r, h, d.unit_vec(om[ck[0]]))
    return r


def mc_check(c, d: DgCategory, cand: MCElement) -> Tuple[bool, Dict[Key, Vec]]:
    """Evaluate d xi + xi * xi + h row by row; returns (flag, residual).

    Raises if the candidate is not an honest degree-1 cochain (wrong slot
    or degree shift other than +1) -- that is malformed input, not a failed
    equation.
    """
    rows = _row_system(c, counital=False)
    F = rows.field
    om = dict(cand.object_map)
    for x in rows.objects:
        if om.get(x) not in d.quiver.objects:
            raise ValueError(f"object map misses a value on {x!r}")
    xi: Dict[Key, Vec] = {}
    for ck, v in cand.xi.items():
        if not rows.rows.has_key(ck):
            raise ValueError(f"unknown coalgebra key {ck}")
        for dk in v:
            if not d.quiver.has_key(dk):
                raise ValueError(f"unknown target arrow {dk}")
            if dk[0] != om[ck[0]] or dk[1] != om[ck[1]]:
                raise ValueError(f"value of {ck} leaves its slot")
            if dk[2] != ck[2] + 1:
                raise ValueError("twisting cochain must have degree 1")
        xi[ck] = dict(v)
    residual = {}
    for ck in rows.rows.keys():
        r = _mc_residual_row(rows, d, om, xi, ck)
        if r:
            residual[ck] = r
    return (not residual), residual


def _mc_object_maps(rows: RowSystem, d: DgCategory,
                    object_maps: Optional[Sequence]) -> List[Dict]:
    targets = list(d.quiver.objects)
    if object_maps is None:
        if not rows.objects:
            return [{}]
        return [dict(zip(rows.objects, p))
                for p in product(targets, repeat=len(rows.objects))]
    out = []
    for m in object_maps:
        out.append(dict(m) if isinstance(m, dict) else dict(zip(rows.objects, m)))
    return out


def _mc_coords(rows: RowSystem, d: DgCategory, om: Dict) -> List[Tuple[Key, Key]]:
    coords = []
    for ck in rows.rows.keys():
        fx, fy = om[ck[0]], om[ck[1]]
        for name in d.quiver.slot(fx, fy, ck[2] + 1):
            coords.append((ck, (fx, fy, ck[2] + 1, name)))
    return coords


def mc_enumerate(c, d: DgCategory, object_maps: Optional[Sequence] = None,
                 budget: int = 1 << 18) -> List[MCElement]:
    """All Maurer-Cartan elements by exhaustive search.

    Needs a finite scalar field as soon as there is a nonzero coordinate
    space; individual candidates over any field go through ``mc_check``.
    """
    rows = _row_system(c, counital=False)
    F = rows.field
    maps = _mc_object_maps(rows, d, object_maps)
    out: List[MCElement] = []
    seen = set()
    spent = 0
    for om in maps:
        for x, y in om.items():
            if y not in d.quiver.objects:
                raise ValueError(f"object map misses a value on {x!r}")
        coords = _mc_coords(rows, d, om)
        if coords and F.size is None:
            raise ValueError(
                "exhaustive Maurer-Cartan search needs a finite field")
        total = (F.size or 1) ** len(coords)
        spent += total
        if spent > budget:
            raise ValueError(
                f"{spent} candidates exceed the search budget {budget}")
        elems = list(F.elements()) if coords else []
        for assignment in product(elems, repeat=len(coords)):
            xi: Dict[Key, Vec] = {}
            for (ck, dk), val in zip(coords, assignment):
                if F.is_zero(val):
                    continue
                xi.setdefault(ck, {})[dk] = val
            ok = True
            for ck in rows.rows.keys():
                if _mc_residual_row(rows, d, om, xi, ck):
                    ok = False
                    break
            if ok:
                m = MCElement(om, xi)
                key = m.canonical()
                if key not in seen:
                    seen.add(key)
                    out.append(m)
    return out


def mc_enumerate_tensor(c: PointedCoalgebra, cp: PointedCoalgebra,
                        d: DgCategory, object_maps: Optional[Sequence] = None,
                        budget: int = 1 << 18) -> List[MCElement]:
    """Two-stage search on C (x) C'.

    The grouplike (x) C'-bar rows form a subcoalgebra whose Maurer-Cartan
    system never involves the other rows, so candidates are solved there
    first and extended over the rest.  Output matches ``mc_enumerate`` on
    the tensor coalgebra (cross-checked in tests).
    """
    t = tensor_coalgebras(c, cp)
    rows = _row_system(t, counital=False)
    F = rows.field
    if F.size is None and rows.rows.total_dim():
        raise ValueError("exhaustive Maurer-Cartan search needs a finite field")

    def is_second_factor_row(ck: Key) -> bool:
        return ck[3][0][0] == "G"

    arow = [ck for ck in rows.rows.keys() if is_second_factor_row(ck)]
    brow = [ck for ck in rows.rows.keys() if not is_second_factor_row(ck)]
    maps = _mc_object_maps(rows, d, object_maps)
    out: List[MCElement] = []
    seen = set()
    spent = 0
    elems = list(F.elements())
    for om in maps:
        coords = _mc_coords(rows, d, om)
        acoords = [cd for cd in coords if is_second_factor_row(cd[0])]
        bcoords = [cd for cd in coords if not is_second_factor_row(cd[0])]
        stage1 = (F.size or 1) ** len(acoords)
        spent += stage1
        if spent > budget:
            raise ValueError(
                f"{spent} candidates exceed the search budget {budget}")
        survivors = []
        for assignment in product(elems, repeat=len(acoords)):
            phi: Dict[Key, Vec] = {}
            for (ck, dk), val in zip(acoords, assignment):
                if not F.is_zero(val):
                    phi.setdefault(ck, {})[dk] = val
            if all(not _mc_residual_row(rows, d, om, phi, ck) for ck in arow):
                survivors.append(phi)
        stage2 = len(survivors) * (F.size or 1) ** len(bcoords)
        spent += stage2
        if spent > budget:
            raise ValueError(
                f"{spent} candidates exceed the search budget {budget}")
        for phi in survivors:
            for assignment in product(elems, repeat=len(bcoords)):
                xi = {k: dict(v) for k, v in phi.items()}
                for (ck, dk), val in zip(bcoords, assignment):
                    if not F.is_zero(val):
                        xi.setdefault(ck, {})[dk] = val
                if all(not _mc_residual_row(rows, d, om, xi, ck) for ck in brow):
                    m = MCElement(om, xi)
                    key = m.canonical()
                    if key not in seen:
                        seen.add(key)
                        out.append(m)
    return out


# ---------------------------------------------------------------------------
# the Maurer-Cartan category


class MCCategory:
    """MC elements as objects, unital convolution homs, twisted d."""

    def __init__(self, elements: List[MCElement], category: DgCategory,
                 convolution: ConvolutionCategory, object_maps: List[Tuple]):
        self.elements = elements
        self.category = category
        self.convolution = convolution
        self.object_maps = object_maps


def mc_category(c, d: DgCategory, elements: Optional[List[MCElement]] = None,
                budget: int = 1 << 18, max_objects: int = 128) -> MCCategory:
    """MC*(C, D): homs from {C, D}, differential d + xi' . - (-1)^| | . xi.

    The twisted differential squares to zero only when D brings no
    curvature of its own, so curved targets are refused.
    """
    for x in d.quiver.objects:
        if d.curvature_vec(x):
            raise ValueError("Maurer-Cartan category needs an uncurved target")
    rows_red = _row_system(c, counital=False)
    F = rows_red.field
    if elements is None:
        elements = mc_enumerate(c, d, budget=budget)
    else:
        for m in elements:
            ok, residual = mc_check(c, d, m)
            if not ok:
                bad = sorted(residual, key=repr)[0]
                raise ValueError(
                    f"supplied object fails the Maurer-Cartan equation at {bad}")
        elements = list(elements)
    oms = [tuple(m.object_map[x] for x in rows_red.objects) for m in elements]
    conv = ConvolutionCategory(_row_system(c, counital=True), d,
                               object_maps=oms, max_objects=max_objects)

    def xivec(i: int) -> Vec:
        fk = oms[i]
        return {(fk, fk, 1, ("r", ck, dk)): coeff
                for ck, v in elements[i].xi.items() for dk, coeff in v.items()}

    def translate(vec: Vec, i: int, j: int) -> Vec:
        return {(("mc", i), ("mc", j), k[2], k[3]): cc for k, cc in vec.items()}

    slots: Dict = {}
    keyed: Dict[Tuple[int, int], List[Key]] = {}
    for i in range(len(elements)):
        for j in range(len(elements)):
            ks = conv.hom_keys(oms[i], oms[j])
            keyed[(i, j)] = ks
            for k in ks:
                slots.setdefault((("mc", i), ("mc", j), k[2]), []).append(k[3])
    quiver = GradedQuiver([("mc", i) for i in range(len(elements))], slots)
    unit = {("mc", i): translate(conv.unit_vec(oms[i]), i, i)
            for i in range(len(elements))}
    diff = {}
    xvs = [xivec(i) for i in range(len(elements))]
    for (i, j), ks in keyed.items():
        for k in ks:
            one = {k: F.one}
            v = conv.apply_d(one)
            v = vec_addmul(F, v, F.one, conv.star(xvs[j], one))
            s = F.one if k[2] % 2 else F.coerce(-1)
            v = vec_addmul(F, v, s, conv.star(one, xvs[i]))
            if v:
                diff[(("mc", i), ("mc", j), k[2], k[3])] = translate(v, i, j)
    comp = {}
    for i in range(len(elements)):
        for j in range(len(elements)):
            for l in range(len(elements)):
                for kpsi in keyed[(j, l)]:
                    for kphi in keyed[(i, j)]:
                        v = conv.comp_vec(kpsi, kphi)
                        if v:
                            tp = (("mc", j), ("mc", l), kpsi[2], kpsi[3])
                            tf = (("mc", i), ("mc", j), kphi[2], kphi[3])
                            comp[(tp, tf)] = translate(v, i, l)
    cat = DgCategory(F, quiver, unit, comp, diff=diff or None, curvature=None)
    return MCCategory(list(elements), cat, conv, oms)


def internal_hom(c, d, weight_cap: int,
                 elements: Optional[List[MCElement]] = None,
                 budget: int = 1 << 18):
    """uHom(C, BD) = B MC*(C, D).

    ``d`` is the dg category whose bar construction is the hom target; pass
    the final coalgebra to mean the final target (= bar of the one-object
    category with zero unit).  The empty coalgebra and final/zero sentinels
    fall out of the construction itself: an empty C gives the one-point
    Maurer-Cartan category with zero homs, whose bar is final; an empty D
    gives no objects at all, whose bar is the zero coalgebra.
    """
    from .dgcat import zero_category
    if isinstance(d, FinalCoalgebra):
        field = d.field if not isinstance(c, FinalCoalgebra) else c.field
        d = zero_category(field)
    if isinstance(c, FinalCoalgebra):
        # absorbing source: morphisms out of the final coalgebra only reach
        # zero-unit objects, so the hom collapses to a sentinel
        bd_final = bool(d.quiver.objects) and d.quiver.total_dim() == 0 \
            and all(not d.unit_vec(x) for x in d.quiver.objects)
        return FinalCoalgebra(c.field) if bd_final else zero_coalgebra(c.field)
    mcc = mc_category(c, d, elements=elements, budget=budget)
    return bar_construction(mcc.category, weight_cap)


# ---------------------------------------------------------------------------
# transports along  Hom(Omega C, D)  =  MC{C, D}  =  Hom(C, BD)


def _theta(n: int) -> int:
    # suspension dressing; its square is 1, so both transport directions
    # use the same factor
    return -1 if ((n * (n - 1)) // 2) % 2 == 0 else 1


def _sign(field: Field, s: int):
    return field.one if s > 0 else field.coerce(-1)


def universal_cochain(c: PointedCoalgebra, length_cap: Optional[int] = None,
                      weight_cap: Optional[int] = None
                      ) -> Tuple[CobarResult, MCElement]:
    """The tautological element of MC{C, Omega C}.

    Each reduced row goes to its own one-letter word, dressed so that the
    Maurer-Cartan equation becomes the cobar differential of the letter.
    Returns the cobar materialization used alongside the element; the
    default caps are just deep enough for ``mc_check`` (residuals never
    reach past two-letter words).
    """
    if length_cap is None and weight_cap is None:
        length_cap = 2
    cobar = cobar_construction(c, length_cap=length_cap, weight_cap=weight_cap)
    F = c.field
    xi: Dict[Key, Vec] = {}
    for ck in c.reduced.keys():
        wk = (ck[0], ck[1], ck[2] + 1, (ck,))
        xi[ck] = {wk: _sign(F, _theta(ck[2]))}
    return cobar, MCElement({x: x for x in c.objects}, xi)


def _as_category(source) -> DgCategory:
    return source.category if isinstance(source, CobarResult) else source


def adjunction_functor_from_mc(cobar, d: DgCategory, m: MCElement) -> DgFunctor:
    """Extend a twisting cochain multiplicatively over cobar words.

    ``cobar`` may be a materialization result or its category.  One-letter
    words get the dressed cochain value, longer words the composite of
    their letters' values in path order, empty words the unit.
    """
    src = _as_category(cobar)
    F = src.field
    om = dict(m.object_map)
    dressed: Dict[Key, Vec] = {}
    for ck, v in m.xi.items():
        dressed[ck] = vec_scale(F, _sign(F, _theta(ck[2])), v)
    action: Dict[Key, Vec] = {}
    for k in src.quiver.keys():
        letters = k[3]
        if not letters:
            v = d.unit_vec(om[k[0]])
        else:
            v = dict(dressed.get(letters[0], {}))
            for ck in letters[1:]:
                if not v:
                    break
                v = d.compose(dressed.get(ck, {}), v)
        if v:
            action[k] = v
    return DgFunctor(src, d, {x: om[x] for x in src.quiver.objects}, action)


def adjunction_mc_from_functor(fun: DgFunctor, c: PointedCoalgebra) -> MCElement:
    """Read the twisting cochain back off a functor on a cobar category."""
    F = c.field
    xi: Dict[Key, Vec] = {}
    for ck in c.reduced.keys():
        v = fun.action.get((ck[0], ck[1], ck[2] + 1, (ck,)))
        if v:
            xi[ck] = vec_scale(F, _sign(F, _theta(ck[2])), v)
    return MCElement({x: fun.object_map[x] for x in c.objects}, xi)


def mc_from_morphism(mor: CoalgebraMorphism, splitting: Splitting) -> MCElement:
    """MC element of a morphism into a bar coalgebra.

    The one-letter component of the morphism is minus the suspended
    cochain; the twist functional supplies its unit-direction part, which
    the letters cannot see.
    """
    cat = splitting.cat
    F = cat.field
    om = dict(mor.object_map)
    xi: Dict[Key, Vec] = {}
    for ck in mor.source.reduced.keys():
        v: Vec = {}
        for wk, coeff in mor.action.get(ck, {}).items():
            if len(wk[3]) == 1:
                v = vec_addmul(F, v, F.neg(coeff),
                               splitting.letter_vec(wk[3][0]))
        a = mor.twist.get(ck)
        if a is not None:
            v = vec_addmul(F, v, a, cat.unit_vec(om[ck[0]]))
        if v:
            xi[ck] = v
    return MCElement(om, xi)


def _bar_words_from_p1(c: PointedCoalgebra, bar_coa: PointedCoalgebra,
                       p1: Dict[Key, Vec]) -> Dict[Key, Vec]:
    """Comultiplicative extension of a one-letter component.

    Weight w of the image is p1 tensored w times against the iterated
    deconcatenation -- sign-free, because the letter coordinates already
    carry the degree shifts the word keys expect.
    """
    F = c.field
    cap = c.reduced.total_dim() + 1
    action: Dict[Key, Vec] = {}
    for ck in c.reduced.keys():
        out: Vec = {}
        base = {ck: F.one}
        for w in range(1, cap + 2):
            parts = c.deconcat(base, w)
            if not parts:
                break
            if w > cap:
                raise ValueError(
                    "iterated coproducts do not terminate; no bar image")
            for chain, lam in parts.items():
                picks = [p1.get(k, {}) for k in chain]
                if any(not p for p in picks):
                    continue
                for combo in product(*(p.items() for p in picks)):
                    letters = tuple(l for l, _ in combo)
                    coeff = lam
                    for _, s in combo:
                        coeff = F.mul(coeff, s)
                    wk = (letters[0][0], letters[-1][1],
                          sum(k[2] - 1 for k in letters), letters)
                    vec_bump(F, out, wk, coeff)
        for wk in out:
            if not bar_coa.reduced.has_key(wk):
                raise ValueError(
                    "bar weight cap too small to hold the image; raise it")
        if out:
            action[ck] = out
    return action


def morphism_from_mc(m: MCElement, c: PointedCoalgebra,
                     bar_coa: PointedCoalgebra,
                     splitting: Splitting) -> CoalgebraMorphism:
    """Coalgebra morphism C -> BD of an MC element.

    Splits each value into unit part (the twist) and letter part (minus
    the one-letter component), then extends comultiplicatively.
    """
    F = c.field
    om = dict(m.object_map)
    twist: Dict[Key, object] = {}
    p1: Dict[Key, Vec] = {}
    for ck in c.reduced.keys():
        v = m.xi.get(ck)
        if not v:
            continue
        units, red = splitting.split(v)
        a = units.get(om[ck[0]])
        if a is not None and not F.is_zero(a):
            twist[ck] = a
        if red:
            p1[ck] = vec_scale(F, F.coerce(-1), red)
    action = _bar_words_from_p1(c, bar_coa, p1)
    return CoalgebraMorphism(c, bar_coa, om, action, twist)


# ---------------------------------------------------------------------------
# enumeration of the three hom sets


def _eval_word(d: DgCategory, om: Dict, images: Dict[Key, Vec],
               letters: Tuple, x) -> Vec:
    if not letters:
        return d.unit_vec(om[x])
    v = dict(images.get(letters[0], {}))
    for ck in letters[1:]:
        if not v:
            break
        v = d.compose(images.get(ck, {}), v)
    return v


def enumerate_dg_functors(cobar, d: DgCategory,
                          budget: int = 1 << 18) -> List[DgFunctor]:
    """All dg functors out of an exactly materialized cobar category.

    The category is free on its one-letter words, so a functor is any
    generator assignment commuting with d; multiplicativity does the rest.
    Truncated materializations are refused -- a dropped differential term
    would silently weaken the generator check.
    """
    if isinstance(cobar, CobarResult):
        if not cobar.exact:
            raise ValueError(
                "functor enumeration needs an exact cobar materialization")
        src = cobar.category
    else:
        src = cobar
    F = src.field
    gens = [k for k in src.quiver.keys() if len(k[3]) == 1]
    objs = list(src.quiver.objects)
    targets = list(d.quiver.objects)
    out: List[DgFunctor] = []
    spent = 0
    for pick in product(targets, repeat=len(objs)):
        om = dict(zip(objs, pick))
        # the source has zero curvature, so curved image objects are out
        if any(d.curvature_vec(om[x]) for x in objs):
            continue
        coords: List[Tuple[Key, Key]] = []
        for g in gens:
            fx, fy = om[g[0]], om[g[1]]
            for name in d.quiver.slot(fx, fy, g[2]):
                coords.append((g, (fx, fy, g[2], name)))
        if coords and F.size is None:
            raise ValueError("functor enumeration needs a finite field")
        spent += (F.size or 1) ** len(coords)
        if spent > budget:
            raise ValueError(
                f"{spent} candidates exceed the search budget {budget}")
        elems = list(F.elements()) if coords else []
        for assignment in product(elems, repeat=len(coords)):
            # keyed by the underlying row, the spelling _eval_word reads
            images: Dict[Key, Vec] = {}
            for (g, dk), val in zip(coords, assignment):
                if not F.is_zero(val):
                    images.setdefault(g[3][0], {})[dk] = val
            ok = True
            for g in gens:
                lhs: Vec = {}
                for wk, coeff in src.diff.get(g, {}).items():
                    lhs = vec_addmul(F, lhs, coeff,
                                     _eval_word(d, om, images, wk[3], wk[0]))
                if lhs != d.apply_d(images.get(g[3][0], {})):
                    ok = False
                    break
            if not ok:
                continue
            action: Dict[Key, Vec] = {}
            for k in src.quiver.keys():
                v = _eval_word(d, om, images, k[3], k[0])
                if v:
                    action[k] = v
            out.append(DgFunctor(src, d, om, action))
    return out


def enumerate_coalgebra_morphisms(c: PointedCoalgebra,
                                  bar_coa: PointedCoalgebra,
                                  weight_cap: Optional[int] = None,
                                  budget: int = 1 << 18
                                  ) -> List[CoalgebraMorphism]:
    """All pointed morphisms C -> BD, searching (objects, one-letter, twist).

    Comultiplicativity pins every higher weight down from the one-letter
    component, so the space is finite; the full validator has the last
    word on each candidate.  Pass the weight cap the bar was built with --
    images must provably fit under it, else the search refuses.
    """
    F = c.field
    maxw = 0
    slots: Dict[Tuple[object, object, int], List[Key]] = {}
    for wk in bar_coa.reduced.keys():
        maxw = max(maxw, len(wk[3]))
        if len(wk[3]) == 1:
            slots.setdefault((wk[0], wk[1], wk[2]), []).append(wk[3][0])
    limit = weight_cap if weight_cap is not None else maxw
    for ck in c.reduced.keys():
        if c.deconcat({ck: F.one}, limit + 1):
            raise ValueError(
                "bar weight cap too small to certify the enumeration; "
                "raise it")
    objs = list(c.objects)
    targets = list(bar_coa.objects)
    rows = list(c.reduced.keys())
    twist_rows = [ck for ck in rows if ck[2] == -1]
    out: List[CoalgebraMorphism] = []
    spent = 0
    for pick in product(targets, repeat=len(objs)):
        om = dict(zip(objs, pick))
        coords: List[Tuple[Key, Key]] = []
        for ck in rows:
            for letter in slots.get((om[ck[0]], om[ck[1]], ck[2]), []):
                coords.append((ck, letter))
        n = len(coords) + len(twist_rows)
        if n and F.size is None:
            raise ValueError("morphism enumeration needs a finite field")
        spent += (F.size or 1) ** n
        if spent > budget:
            raise ValueError(
                f"{spent} candidates exceed the search budget {budget}")
        elems = list(F.elements()) if n else []
        for assignment in product(elems, repeat=n):
            p1: Dict[Key, Vec] = {}
            for (ck, letter), val in zip(coords, assignment[:len(coords)]):
                if not F.is_zero(val):
                    p1.setdefault(ck, {})[letter] = val
            twist = {}
            for ck, val in zip(twist_rows, assignment[len(coords):]):
                if not F.is_zero(val):
                    twist[ck] = val
            cand = CoalgebraMorphism(
                c, bar_coa, om, _bar_words_from_p1(c, bar_coa, p1), twist)
            if not cand.validate():
                out.append(cand)
    return out


# ---------------------------------------------------------------------------
# the counit  Omega B D -> D


@dataclass
class CounitData:
    splitting: Splitting
    bar: PointedCoalgebra
    cobar: CobarResult
    mc: MCElement
    functor: DgFunctor


def counit_data(d: DgCategory, bar_weight_cap: int,
                length_cap: Optional[int] = None,
                weight_cap: Optional[int] = None) -> CounitData:
    """The identity of BD pushed through the adjunction.

    Its cochain projects one-letter words to minus their letter and kills
    everything longer, so the functor evaluates words of letters-of-words
    by composing in D.  Weight-capping the cobar keeps its differential
    complete, which makes windowed homology trustworthy even on a finite
    materialization.
    """
    sp = Splitting(d)
    bar = bar_construction(d, bar_weight_cap, splitting=sp)
    m = mc_from_morphism(identity_morphism(bar), sp)
    if length_cap is None and weight_cap is None:
        # same resolution depth both ways; weight capping keeps d complete
        weight_cap = bar_weight_cap
    cobar = cobar_construction(bar, length_cap=length_cap,
                               weight_cap=weight_cap)
    return CounitData(sp, bar, cobar, m,
                      adjunction_functor_from_mc(cobar, d, m))


def counit(d: DgCategory, bar_weight_cap: int,
           length_cap: Optional[int] = None,
           weight_cap: Optional[int] = None) -> DgFunctor:
    return counit_data(d, bar_weight_cap, length_cap, weight_cap).functor


# ---------------------------------------------------------------------------
# Eilenberg-Zilber comparison  Omega(C (x) C') -> Omega C (x) Omega C'


def _single_word(ck: Key) -> Key:
    return (ck[0], ck[1], ck[2] + 1, (ck,))


def _empty_word(x) -> Key:
    return (x, x, 0, ())


def _pair_key(k1: Key, k2: Key) -> Key:
    return ((k1[0], k2[0]), (k1[1], k2[1]), k1[2] + k2[2],
            ((k1[2], k1[3]), (k2[2], k2[3])))


@dataclass
class EZData:
    tensor: PointedCoalgebra
    source: CobarResult
    left: CobarResult
    right: CobarResult
    target: DgCategory
    mc: MCElement
    functor: DgFunctor


def ez_data(c: PointedCoalgebra, cp: PointedCoalgebra,
            length_cap: Optional[int] = None,
            weight_cap: Optional[int] = None,
            factor_length_cap: Optional[int] = None,
            factor_weight_cap: Optional[int] = None) -> EZData:
    """The comparison cochain on C (x) C' and its functor.

    Rows with a grouplike factor go to the matching one-letter word beside
    an identity; genuinely mixed rows go to zero.  That is a Maurer-Cartan
    element of {C (x) C', Omega C (x) Omega C'}, and its functor is the
    comparison.
    """
    t = tensor_coalgebras(c, cp)
    if factor_length_cap is None and factor_weight_cap is None:
        factor_length_cap = length_cap
        factor_weight_cap = weight_cap
    source = cobar_construction(t, length_cap=length_cap,
                                weight_cap=weight_cap)
    left = cobar_construction(c, length_cap=factor_length_cap,
                              weight_cap=factor_weight_cap)
    right = cobar_construction(cp, length_cap=factor_length_cap,
                               weight_cap=factor_weight_cap)
    target = tensor_dg(left.category, right.category)
    F = t.field
    xi: Dict[Key, Vec] = {}
    for tk in t.reduced.keys():
        na, nb = tk[3]
        s = _sign(F, _theta(tk[2]))
        if nb[0] == "G":
            ck = (tk[0][0], tk[1][0], tk[2], na[1])
            xi[tk] = {_pair_key(_single_word(ck), _empty_word(nb[1])): s}
        elif na[0] == "G":
            dk = (tk[0][1], tk[1][1], tk[2], nb[1])
            xi[tk] = {_pair_key(_empty_word(na[1]), _single_word(dk)): s}
    m = MCElement({x: x for x in t.objects}, xi)
    return EZData(t, source, left, right, target, m,
                  adjunction_functor_from_mc(source, target, m))


def ez_map(c: PointedCoalgebra, cp: PointedCoalgebra,
           length_cap: Optional[int] = None,
           weight_cap: Optional[int] = None,
           factor_length_cap: Optional[int] = None,
           factor_weight_cap: Optional[int] = None) -> DgFunctor:
    return ez_data(c, cp, length_cap, weight_cap,
                   factor_length_cap, factor_weight_cap).functor


def ez_generator_problems(ez: EZData) -> List[str]:
    """Exactness of the comparison on short words.

    One-letter words over pure rows land on their pair with coefficient
    one and mixed rows die; the two routes around a square of one-letter
    factors agree up to the Koszul sign of the crossing.
    """
    F = ez.tensor.field
    fun = ez.functor
    problems: List[str] = []
    crows = sorted({(tk[0][0], tk[1][0], tk[2], tk[3][0][1])
                    for tk in ez.tensor.reduced.keys()
                    if tk[3][1][0] == "G"}, key=repr)
    drows = sorted({(tk[0][1], tk[1][1], tk[2], tk[3][1][1])
                    for tk in ez.tensor.reduced.keys()
                    if tk[3][0][0] == "G"}, key=repr)
    for tk in ez.tensor.reduced.keys():
        na, nb = tk[3]
        if nb[0] == "G":
            ck = (tk[0][0], tk[1][0], tk[2], na[1])
            want = {_pair_key(_single_word(ck), _empty_word(nb[1])): F.one}
        elif na[0] == "G":
            dk = (tk[0][1], tk[1][1], tk[2], nb[1])
            want = {_pair_key(_empty_word(na[1]), _single_word(dk)): F.one}
        else:
            want = {}
        if fun.action.get(_single_word(tk), {}) != want:
            problems.append(f"one-letter image off at {tk[3]}")
    quiver = ez.source.category.quiver
    for ck in crows:
        for dk in drows:
            want_key = _pair_key(_single_word(ck), _single_word(dk))
            wk = _word_key((_rkey(ck[0], dk), _lkey(ck, dk[1])), 1)
            if quiver.has_key(wk) and \
                    fun.action.get(wk, {}) != {want_key: F.one}:
                problems.append(f"r-then-l shuffle off at {(ck, dk)}")
            wk = _word_key((_lkey(ck, dk[0]), _rkey(ck[1], dk)), 1)
            if quiver.has_key(wk):
                s = _sign(F, -1 if ((ck[2] + 1) * (dk[2] + 1)) % 2 else 1)
                if fun.action.get(wk, {}) != {want_key: s}:
                    problems.append(f"l-then-r shuffle off at {(ck, dk)}")
    return problems


@dataclass
class EZReport:
    window: Tuple[int, int]
    mode: str
    cap: int
    pairs: List[Tuple]
    equal: bool


def ez_compare(c: PointedCoalgebra, cp: PointedCoalgebra,
               window: Tuple[int, int], mode: str = "direct") -> EZReport:
    """Hom homology on a window, both sides of the comparison.

    Certifies finiteness first: with every cobar letter in degree >= 1 a
    word's length is at most its degree, with every letter in degree <= -1
    at most minus its degree; either bound turns the window into a length
    cap under which the materialized differential is the true one.  Mixed
    signs or degree-0 letters leave infinitely many words in the window,
    so the comparison refuses.  Curved inputs only make sense through the
    associated graded (``mode="graded"``).
    """
    if mode == "graded":
        c = associated_graded(c)
        cp = associated_graded(cp)
    elif mode != "direct":
        raise ValueError(f"unknown mode {mode!r}")
    if c.curv or cp.curv:
        raise ValueError("curved comparison only settles the associated "
                         "graded; rerun with mode='graded'")
    lo, hi = window
    degs = [k[2] for k in c.reduced.keys()] + [k[2] for k in cp.reduced.keys()]
    if all(n >= 0 for n in degs):
        cap = max(0, hi + 1)
    elif all(n <= -2 for n in degs):
        cap = max(0, 1 - lo)
    else:
        raise ValueError(
            "cobar letters of mixed sign; no finite cap certifies the window")
    data = ez_data(c, cp, length_cap=cap, factor_length_cap=cap)
    probs = ez_generator_problems(data)
    if probs:
        raise ValueError(f"comparison functor is off: {probs[0]}")
    src = data.source.category
    tgt = data.target
    pairs: List[Tuple] = []
    equal = True
    for x in src.quiver.objects:
        for y in src.quiver.objects:
            a = src.hom_homology(x, y, lo, hi)
            b = tgt.hom_homology(x, y, lo, hi)
            da = tuple(a.get(n, 0) for n in range(lo, hi + 1))
            db = tuple(b.get(n, 0) for n in range(lo, hi + 1))
            ok = da == db
            equal = equal and ok
            pairs.append((x, y, da, db, ok))
    return EZReport(window, mode, cap, pairs, equal)


# ---------------------------------------------------------------------------
# hom-tensor interchange  {C (x) C', D}  =  {C, {C', D}}


def interchange_problems(c: PointedCoalgebra, cp: PointedCoalgebra,
                         d: DgCategory, reduced_outer: bool = False,
                         max_objects: int = 256) -> List[str]:
    """Check the interchange is an equality of tables, not just an iso.

    Currying the basis names -- an outer cochain valued in inner cochains
    becomes one cochain on the tensor rows -- matches objects, bases,
    differentials, compositions, units and curvature with no signs at all.
    With ``reduced_outer`` both outer convolutions are reduced and the
    left side runs over the kernel-tensor rows.
    """
    problems: List[str] = []
    inner = convolution_category(cp, d,
                                 max_objects=max_objects).to_dg_category()
    if reduced_outer:
        lhs = ConvolutionCategory(RowSystem.reduced_tensor(c, cp), d,
                                  max_objects=max_objects)
        rhs = ConvolutionCategory(_row_system(c, counital=False), inner,
                                  max_objects=max_objects)
    else:
        lhs = ConvolutionCategory(
            _row_system(tensor_coalgebras(c, cp), counital=True), d,
            max_objects=max_objects)
        rhs = ConvolutionCategory(_row_system(c, counital=True), inner,
                                  max_objects=max_objects)

    def flat(om: Tuple) -> Tuple:
        # om: per c-object an inner object map (itself a tuple over cp)
        by_pair = {}
        for i, x in enumerate(rhs.rows.objects):
            for j, xp in enumerate(cp.objects):
                by_pair[(x, xp)] = om[i][j]
        return tuple(by_pair[p] for p in lhs.rows.objects)

    def curry_name(name):
        tag, payload, ik = name
        iname = ik[3]
        if tag == "o":
            if iname[0] == "o":
                return ("o", (payload, iname[1]), iname[2])
            return ("r", _rkey(payload, iname[1]), iname[2])
        if iname[0] == "o":
            return ("r", _lkey(payload, iname[1]), iname[2])
        return ("r", _bkey(payload, iname[1]), iname[2])

    omap = {om: flat(om) for om in rhs.object_maps}
    if sorted(omap.values(), key=repr) != sorted(lhs.object_maps, key=repr):
        problems.append("object maps do not correspond")
        return problems

    def curry_key(k: Key) -> Key:
        fk, gk, n, name = k
        return (omap[fk], omap[gk], n, curry_name(name))

    def curry_vec(v: Vec) -> Vec:
        return {curry_key(k): coeff for k, coeff in v.items()}

    keyed = {}
    for fk in rhs.object_maps:
        for gk in rhs.object_maps:
            ks = rhs.hom_keys(fk, gk)
            keyed[(fk, gk)] = ks
            want = lhs.hom_keys(omap[fk], omap[gk])
            if sorted((curry_key(k) for k in ks), key=repr) != \
                    sorted(want, key=repr):
                problems.append(f"hom bases differ at {(fk, gk)}")
                return problems
    for (fk, gk), ks in keyed.items():
        for k in ks:
            if not vec_eq(curry_vec(rhs.diff_vec(k)),
                          lhs.diff_vec(curry_key(k))):
                problems.append(f"differentials differ at {k[3]}")
                if len(problems) >= 25:
                    return problems
    for fk in rhs.object_maps:
        for gk in rhs.object_maps:
            for hk in rhs.object_maps:
                for kpsi in keyed[(gk, hk)]:
                    for kphi in keyed[(fk, gk)]:
                        if not vec_eq(
                                curry_vec(rhs.comp_vec(kpsi, kphi)),
                                lhs.comp_vec(curry_key(kpsi),
                                             curry_key(kphi))):
                            problems.append(
                                f"products differ at {(kpsi[3], kphi[3])}")
                            if len(problems) >= 25:
                                return problems
    for fk in rhs.object_maps:
        if not reduced_outer and not vec_eq(curry_vec(rhs.unit_vec(fk)),
                                            lhs.unit_vec(omap[fk])):
            problems.append(f"units differ at {fk}")
        if not vec_eq(curry_vec(rhs.curvature_vec(fk)),
                      lhs.curvature_vec(omap[fk])):
            problems.append(f"curvature differs at {fk}")
    return problems
