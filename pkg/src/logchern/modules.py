"""Graded free modules over Q[z_1..z_l]: Groebner bases, syzygies, free
resolutions, Hilbert functions and polynomials, Krull dimension, duals and
Ext^1 against the ring.

A module is presented as the cokernel of a map between graded free modules;
submodules enter through their generator lists.  The same machinery runs in
an ungraded mode (twists absent) for computations in affine charts, where
minimality of resolutions is not defined and is skipped.
"""

from fractions import Fraction
from itertools import combinations
from math import comb, gcd

from . import groebner as eng
from .errors import (EngineError, InputError, NotFiniteLengthError,
                     ResolutionLengthError)
from .groebner import EngineStats
from .orders import MonomialOrder, TOPOrder
from .rings import MultiPoly, UniPolyQ, binomial_poly, normalize_coeff

DEGREE_CAP = 200


class GradedFreeModule:
    """A free module ⊕_j S(-a_j); ``twists=None`` marks the ungraded mode."""

    __slots__ = ("arity", "twists", "rank")

    def __init__(self, arity, twists=None, rank=None):
        self.arity = arity
        if twists is not None:
            self.twists = tuple(twists)
            self.rank = len(self.twists)
            if rank is not None and rank != self.rank:
                raise InputError("rank does not match twist count")
        else:
            if rank is None:
                raise InputError("ungraded free module needs an explicit rank")
            self.twists = None
            self.rank = rank

    @property
    def graded(self):
        return self.twists is not None

    def element(self, components):
        return FreeModuleElement(self, components)

    def basis_element(self, j):
        comps = [MultiPoly.zero(self.arity) for _ in range(self.rank)]
        comps[j] = MultiPoly.one(self.arity)
        return FreeModuleElement(self, comps)

    def zero_element(self):
        return FreeModuleElement(
            self, [MultiPoly.zero(self.arity)] * self.rank)

    def dual(self):
        if not self.graded:
            return GradedFreeModule(self.arity, rank=self.rank)
        return GradedFreeModule(self.arity, [-a for a in self.twists])

    def twist_multiset(self):
        """Counter of S(n) arguments, n = -a, as used in resolution dumps."""
        out = {}
        for a in (self.twists or ()):
            out[-a] = out.get(-a, 0) + 1
        return dict(sorted(out.items(), reverse=True))

    def __eq__(self, other):
        return (isinstance(other, GradedFreeModule)
                and self.arity == other.arity and self.rank == other.rank
                and self.twists == other.twists)

    def __repr__(self):
        if self.graded:
            return (f"GradedFreeModule(arity={self.arity}, "
                    f"twists={list(self.twists)})")
        return f"GradedFreeModule(arity={self.arity}, rank={self.rank})"


class FreeModuleElement:
    """An element of a free module, stored as a vector of polynomials."""

    __slots__ = ("module", "components")

    def __init__(self, module, components):
        components = tuple(components)
        if len(components) != module.rank:
            raise InputError("component count does not match module rank")
        for p in components:
            if p.arity != module.arity:
                raise InputError("component arity does not match module")
        self.module = module
        self.components = components

    def is_zero(self):
        return all(p.is_zero() for p in self.components)

    def is_homogeneous(self):
        if not self.module.graded:
            return False
        degs = set()
        for p, a in zip(self.components, self.module.twists):
            if p.is_zero():
                continue
            if not p.is_homogeneous():
                return False
            degs.add(p.homogeneous_degree() + a)
        return len(degs) <= 1

    def degree(self):
        """Twisted degree of a homogeneous nonzero element."""
        if not self.module.graded:
            raise InputError("degree undefined for ungraded elements")
        degs = set()
        for p, a in zip(self.components, self.module.twists):
            if p.is_zero():
                continue
            degs.add(p.homogeneous_degree() + a)
        if len(degs) != 1:
            raise InputError("element is zero or inhomogeneous")
        return degs.pop()

    def __add__(self, other):
        return FreeModuleElement(
            self.module,
            [a + b for a, b in zip(self.components, other.components)])

    def __sub__(self, other):
        return FreeModuleElement(
            self.module,
            [a - b for a, b in zip(self.components, other.components)])

    def __neg__(self):
        return FreeModuleElement(self.module, [-a for a in self.components])

    def scale(self, c):
        return FreeModuleElement(self.module,
                                 [p * c for p in self.components])

    def poly_mul(self, p):
        return FreeModuleElement(self.module,
                                 [q * p for q in self.components])

    def dot(self, polys):
        """Pairing against a sequence of polynomials, sum comp_i * polys[i]."""
        out = MultiPoly.zero(self.module.arity)
        for p, q in zip(self.components, polys):
            out = out + p * q
        return out

    def __eq__(self, other):
        return (isinstance(other, FreeModuleElement)
                and self.module == other.module
                and self.components == other.components)

    def render(self, names=None):
        return "(" + ", ".join(p.render(names) for p in self.components) + ")"

    def __repr__(self):
        return f"FreeModuleElement{self.render()}"


# ----- conversions between the public and engine representations -----

def to_engine(elem):
    """FreeModuleElement -> content-free integer term dict."""
    return to_engine_scaled(elem)[0]


def to_engine_scaled(elem):
    """FreeModuleElement -> (dict, factor) with  dict == factor * elem.

    The factor matters wherever the element is a *column of a map* rather
    than a generator up to scale: kernels of the scaled map must be
    corrected by it.
    """
    den = 1
    for p in elem.components:
        for c in p.terms.values():
            if isinstance(c, Fraction):
                den = den * c.denominator // gcd(den, c.denominator)
    d = {}
    for pos, p in enumerate(elem.components):
        for exps, c in p.terms.items():
            d[(pos, exps)] = int(c * den)
    content = 0
    for c in d.values():
        content = gcd(content, c)
        if content == 1:
            break
    if content > 1:
        for k in d:
            d[k] //= content
    return d, Fraction(den, content if content else 1)


def from_engine(d, module, divisor=1):
    """Integer term dict -> FreeModuleElement, dividing by ``divisor``."""
    comps = [dict() for _ in range(module.rank)]
    for (pos, exps), c in d.items():
        comps[pos][exps] = normalize_coeff(Fraction(c, divisor))
    return FreeModuleElement(
        module, [MultiPoly(module.arity, t, _clean=True) for t in comps])


def _engine_degree(basis_elem, twists):
    pos, exps = basis_elem.lt
    return sum(exps) + twists[pos]


def default_order(module):
    return MonomialOrder("grevlex", "TOP", module.twists)


class GroebnerBasis:
    """Reduced Groebner basis of a submodule, with reusable engine state."""

    __slots__ = ("module", "order", "elements", "stats", "_engine_gb",
                 "_engine_order")

    def __init__(self, module, order, engine_gb, engine_order, stats):
        self.module = module
        self.order = order
        self._engine_gb = engine_gb
        self._engine_order = engine_order
        self.stats = stats
        self.elements = [from_engine(g.d, module, divisor=g.lc)
                         for g in engine_gb]

    def __len__(self):
        return len(self._engine_gb)

    def __iter__(self):
        return iter(self.elements)

    def lead_terms(self):
        return [g.lt for g in self._engine_gb]


def groebner_basis(gens, order=None, stats=None, module=None):
    """Reduced Groebner basis of the submodule generated by ``gens``.

    Empty input yields the empty basis; the ambient ``module`` must then
    be supplied explicitly.
    """
    if not gens:
        if module is None:
            raise InputError("empty generator list needs an explicit module")
        order = order or default_order(module)
        return GroebnerBasis(module, order, [], order.engine(),
                             stats if stats is not None else EngineStats())
    module = gens[0].module
    for g in gens:
        if g.module != module:
            raise InputError("generators live in different free modules")
    order = order or default_order(module)
    eorder = order.engine()
    stats = stats if stats is not None else EngineStats()
    engine_gb = eng.buchberger(
        [to_engine(g) for g in gens if not g.is_zero()], eorder, stats=stats)
    return GroebnerBasis(module, order, engine_gb, eorder, stats)


def normal_form(elem, gb):
    """The unique reduced normal form of ``elem`` modulo ``gb``."""
    if elem.module != gb.module:
        raise InputError("element and basis live in different free modules")
    d, scale = eng.normal_form_raw(to_engine(elem), gb._engine_gb,
                                   gb._engine_order)
    return from_engine(d, gb.module, divisor=scale)


def syzygies(gb):
    """Generators of the first syzygy module of the basis elements.

    Schreyer's construction: every same-position S-pair is reduced to zero
    and the tracked quotients are returned as elements of ⊕_i S(-deg g_i).
    """
    raw, sorder = eng.schreyer_syzygies(gb._engine_gb, gb._engine_order)
    if gb.module.graded:
        twists = [_engine_degree(g, gb.module.twists) for g in gb._engine_gb]
        src = GradedFreeModule(gb.module.arity, twists)
    else:
        src = GradedFreeModule(gb.module.arity, rank=len(gb._engine_gb))
    elems = eng.interreduce([eng.BasisElem(d, sorder) for d in raw], sorder)
    return [from_engine(g.d, src, divisor=g.lc) for g in elems]


def kernel_generators(columns, source_twists=None, stats=None):
    """Generators of the kernel of the map  ⊕_j S(-t_j) -> F,  e_j -> c_j.

    ``source_twists`` fixes the grading of the source; when omitted it is
    read off the column degrees (columns must then be nonzero in graded
    mode).  Returns elements of the source module.
    """
    if not columns:
        return []
    target = columns[0].module
    for c in columns:
        if c.module != target:
            raise InputError("columns live in different free modules")
    if target.graded:
        if source_twists is None:
            source_twists = [c.degree() for c in columns]
        source = GradedFreeModule(target.arity, source_twists)
    else:
        source = GradedFreeModule(target.arity, rank=len(columns))
    scaled = [to_engine_scaled(c) for c in columns]
    raw = eng.kernel_raw([d for d, _ in scaled], target.rank,
                         target.arity, stats=stats)
    factors = [f for _, f in scaled]
    order = TOPOrder("grevlex", source.twists)
    out = []
    for d in raw:
        b = eng.BasisElem(d, order)
        elem = from_engine(b.d, source, divisor=b.lc)
        # the raw vector annihilates the scaled columns; correct back
        if any(f != 1 for f in factors):
            elem = FreeModuleElement(
                source, [p * f for p, f in zip(elem.components, factors)])
        out.append(elem)
    return out


def syzygy_generators(gens, stats=None):
    """Syzygies of an arbitrary generator list, via the elimination kernel."""
    return kernel_generators(gens, stats=stats)


class GradedModulePresentation:
    """M = coker(relations: F_1 -> F_0) with F_0 = ``target``.

    ``shift`` twists the module at construction: M(shift) has its target
    twists lowered by ``shift``.
    """

    __slots__ = ("target", "relations", "_gb", "_minres", "stats")

    def __init__(self, target, relations, shift=0):
        if shift and target.graded:
            target = GradedFreeModule(target.arity,
                                      [a - shift for a in target.twists])
        self.target = target
        rels = []
        for r in relations:
            if r.module.rank != target.rank or r.module.arity != target.arity:
                raise InputError("relation does not match the target module")
            r = FreeModuleElement(target, r.components)
            if r.is_zero():
                continue
            if target.graded and not r.is_homogeneous():
                raise InputError("relations must be homogeneous")
            rels.append(r)
        self.relations = tuple(rels)
        self._gb = None
        self._minres = None
        self.stats = EngineStats()

    @property
    def arity(self):
        return self.target.arity

    @property
    def graded(self):
        return self.target.graded

    @classmethod
    def free(cls, module):
        return cls(module, [])

    @classmethod
    def zero(cls, arity, graded=True):
        if graded:
            return cls(GradedFreeModule(arity, []), [])
        return cls(GradedFreeModule(arity, rank=0), [])

    def twisted(self, s):
        """The twisted module M(s)."""
        return GradedModulePresentation(self.target, self.relations, shift=s)

    def relation_gb(self):
        """Groebner basis of the relation submodule; None when free."""
        if self._gb is None and self.relations:
            self._gb = groebner_basis(list(self.relations), stats=self.stats)
        return self._gb

    def lead_exponents(self):
        """Per position, minimal generators of the leading-term ideal."""
        out = [[] for _ in range(self.target.rank)]
        gb = self.relation_gb()
        if gb is None:
            return out
        for pos, exps in gb.lead_terms():
            out[pos].append(exps)
        for j in range(self.target.rank):
            kept = []
            for e in sorted(out[j]):
                if not any(eng.exps_divide(k, e) for k in kept):
                    kept.append(e)
            out[j] = kept
        return out

    def is_zero_module(self):
        if self.target.rank == 0:
            return True
        zero = (0,) * self.arity
        leads = self.lead_exponents()
        return all(zero in leads[j] for j in range(self.target.rank))

    def minimal_resolution(self, max_len=None):
        if self._minres is None:
            self._minres = free_resolution(self, max_len=max_len)
        return self._minres

    def __repr__(self):
        return (f"GradedModulePresentation(target={self.target!r}, "
                f"{len(self.relations)} relations)")


class ResolutionData:
    """A chain F_len -> ... -> F_1 -> F_0 with maps[k]: terms[k+1]->terms[k].

    Map columns are elements of terms[k]; consecutive maps compose to zero
    and the image of maps[k] equals the kernel of maps[k-1] by construction
    (iterated syzygies).
    """

    __slots__ = ("terms", "maps", "minimal")

    def __init__(self, terms, maps, minimal):
        self.terms = list(terms)
        self.maps = [list(cols) for cols in maps]
        self.minimal = minimal

    @property
    def length(self):
        return len(self.maps)

    def matrix(self, k):
        """Entry grid of maps[k]: rows over terms[k], cols over terms[k+1]."""
        cols = self.maps[k]
        nrows = self.terms[k].rank
        return [[col.components[i] for col in cols] for i in range(nrows)]

    def compose_is_zero(self):
        for k in range(len(self.maps) - 1):
            lower = self.maps[k]
            for col in self.maps[k + 1]:
                acc = self.terms[k].zero_element()
                for i, p in enumerate(col.components):
                    if not p.is_zero():
                        acc = acc + lower[i].poly_mul(p)
                if not acc.is_zero():
                    return False
        return True

    def has_unit_entry(self):
        for k in range(len(self.maps)):
            for col in self.maps[k]:
                for p in col.components:
                    if _is_unit_entry(p):
                        return True
        return False

    def dump(self):
        """Twist multisets plus rendered matrices (the golden-test format)."""
        out = {"minimal": self.minimal, "terms": [], "maps": []}
        for F in self.terms:
            out["terms"].append(F.twist_multiset() if F.graded
                                else {"rank": F.rank})
        for k in range(len(self.maps)):
            grid = self.matrix(k)
            out["maps"].append([[p.render() for p in row] for row in grid])
        return out


def _is_unit_entry(p):
    return bool(p.terms) and set(p.terms) == {(0,) * p.arity}


def free_resolution(pres, max_len=None, minimal=None, stats=None):
    """Free resolution of a presented module by iterated Schreyer syzygies.

    Graded presentations are minimalized (no unit entries remain); the
    ungraded mode returns the raw chain.  Raises ResolutionLengthError if
    the chain exceeds ``max_len`` steps (default: arity + 1, which suffices
    by the sorted-Schreyer bound).
    """
    arity = pres.arity
    graded = pres.graded
    if minimal is None:
        minimal = graded
    if minimal and not graded:
        raise InputError("minimal resolutions are only defined when graded")
    cap = max_len if max_len is not None else arity + 1
    stats = stats if stats is not None else pres.stats
    F0 = pres.target
    if not pres.relations or F0.rank == 0:
        return ResolutionData([F0], [], minimal=True)
    order0 = TOPOrder("grevlex", F0.twists)
    gb = eng.buchberger([to_engine(r) for r in pres.relations], order0,
                        stats=stats)
    if not gb:
        return ResolutionData([F0], [], minimal=True)
    terms = [F0]
    chain = []  # (engine elements, codomain index)
    current = eng.schreyer_sort(gb)
    corder = order0
    ctwists = F0.twists
    while True:
        if graded:
            Fk = GradedFreeModule(arity,
                                  [_engine_degree(g, ctwists) for g in current])
        else:
            Fk = GradedFreeModule(arity, rank=len(current))
        terms.append(Fk)
        chain.append(current)
        if len(chain) > cap:
            raise ResolutionLengthError(
                f"resolution exceeded {cap} steps; raise max_len")
        syz, sorder = eng.schreyer_syzygies(current, corder, stats=stats)
        syz = [d for d in syz if d]
        if not syz:
            break
        selems = eng.interreduce(
            [eng.BasisElem(d, sorder) for d in syz], sorder)
        if not selems:
            break
        current = eng.schreyer_sort(selems)
        corder = sorder
        ctwists = Fk.twists
    maps = []
    for k, elems in enumerate(chain):
        codomain = terms[k]
        # columns keep the content-free integer representatives: the next
        # level's syzygies pair against exactly these, so consecutive maps
        # compose to zero on the nose
        maps.append([from_engine(g.d, codomain) for g in elems])
    res = ResolutionData(terms, maps, minimal=False)
    if minimal:
        res = minimalize_resolution(res)
    return res


def minimalize_resolution(res):
    """Cancel unit entries by Gaussian elimination on the whole complex."""
    arity = res.terms[0].arity
    twists = [list(F.twists) for F in res.terms]
    mats = [[row[:] for row in res.matrix(k)] for k in range(res.length)]

    def find_unit():
        for k, B in enumerate(mats):
            for r, row in enumerate(B):
                for c, p in enumerate(row):
                    if _is_unit_entry(p):
                        return k, r, c, p.constant_term()
        return None

    while True:
        found = find_unit()
        if found is None:
            break
        k, r, c, u = found
        B = mats[k]
        nrows = len(B)
        ncols = len(B[0])
        inv_u = Fraction(1) / Fraction(u)
        row_r = [B[r][j] for j in range(ncols)]   # original row r
        col_c = [B[s][c] for s in range(nrows)]   # original column c
        # column ops: col_j -= (B[r][j]/u) col_c, clearing row r off c
        for j in range(ncols):
            if j == c or row_r[j].is_zero():
                continue
            q = row_r[j] * inv_u
            for s in range(nrows):
                B[s][j] = B[s][j] - col_c[s] * q
        # mirror on the next map: row_c += sum_j (B[r][j]/u) row_j
        if k + 1 < len(mats):
            A = mats[k + 1]
            width = len(A[0]) if A else 0
            for j in range(ncols):
                if j == c or row_r[j].is_zero():
                    continue
                q = row_r[j] * inv_u
                for t in range(width):
                    A[c][t] = A[c][t] + q * A[j][t]
        # mirror of the row ops on the previous map:
        # col_r += sum_s (B[s][c]/u) col_s
        if k - 1 >= 0:
            C = mats[k - 1]
            for s in range(nrows):
                if s == r or col_c[s].is_zero():
                    continue
                q = col_c[s] * inv_u
                for t in range(len(C)):
                    C[t][r] = C[t][r] + C[t][s] * q
        # delete the cancelled generator pair
        del B[r]
        for row in B:
            del row[c]
        if k + 1 < len(mats):
            del mats[k + 1][c]
        if k - 1 >= 0:
            for row in mats[k - 1]:
                del row[r]
        del twists[k][r]
        del twists[k + 1][c]
    # trim trailing zero-rank terms
    while len(twists) > 1 and not twists[-1]:
        twists.pop()
        mats.pop()
    if len(twists) > 2:
        for tw in twists[1:-1]:
            if not tw:
                raise EngineError(
                    "intermediate zero term after minimalization")
    terms = [GradedFreeModule(arity, tw) for tw in twists]
    maps = []
    for k, B in enumerate(mats):
        ncols = len(B[0]) if B else 0
        cols = [FreeModuleElement(terms[k], [B[i][j] for i in range(len(B))])
                for j in range(ncols)]
        maps.append(cols)
    return ResolutionData(terms, maps, minimal=True)


# ----- Hilbert data -----

def _compositions(total, parts):
    """Yield exponent tuples of the given total degree."""
    if parts == 1:
        yield (total,)
        return
    for first in range(total + 1):
        for rest in _compositions(total - first, parts - 1):
            yield (first,) + rest


def _count_standard(arity, n, lead_gens):
    if n < 0:
        return 0
    if any(sum(e) == 0 for e in lead_gens):
        return 0
    if not lead_gens:
        return comb(n + arity - 1, arity - 1)
    count = 0
    for m in _compositions(n, arity):
        if not any(eng.exps_divide(g, m) for g in lead_gens):
            count += 1
    return count


def hilbert_function(pres, degree):
    """dim_Q of the degree-d graded piece of the presented module."""
    if not pres.graded:
        raise InputError("Hilbert function needs a graded presentation")
    leads = pres.lead_exponents()
    total = 0
    for j, a in enumerate(pres.target.twists):
        total += _count_standard(pres.arity, degree - a, leads[j])
    return total


def total_dimension(pres, degree_cap=DEGREE_CAP):
    """Q-dimension over all degrees; requires a finite staircase."""
    leads = pres.lead_exponents()
    arity = pres.arity
    total = 0
    for j in range(pres.target.rank):
        gens = leads[j]
        n = 0
        while True:
            c = _count_standard(arity, n, gens)
            if c == 0:
                break
            total += c
            n += 1
            if n > degree_cap:
                raise NotFiniteLengthError(
                    f"degree cap {degree_cap} exceeded while counting "
                    "standard monomials")
    return total


def hilbert_polynomial(pres):
    """Hilbert polynomial from the minimal free resolution:
    sum_i (-1)^i sum_j binom(t - a_ij + l - 1, l - 1)."""
    if not pres.graded:
        raise InputError("Hilbert polynomial needs a graded presentation")
    res = pres.minimal_resolution()
    k = pres.arity - 1
    out = UniPolyQ.zero()
    sign = 1
    for F in res.terms:
        for a in F.twists:
            term = binomial_poly(a, k)
            out = out + (term if sign > 0 else -term)
        sign = -sign
    return out


def krull_dim(pres):
    """Krull dimension of the module; -1 for the zero module."""
    if pres.target.rank == 0:
        return -1
    leads = pres.lead_exponents()
    arity = pres.arity
    zero = (0,) * arity
    best = -1
    for j in range(pres.target.rank):
        gens = leads[j]
        if zero in gens:
            continue  # this position presents the zero summand
        supports = [frozenset(i for i, e in enumerate(g) if e) for g in gens]
        dim_j = 0
        for size in range(arity, -1, -1):
            hit = False
            for T in combinations(range(arity), size):
                Tset = set(T)
                if not any(s <= Tset for s in supports):
                    dim_j = size
                    hit = True
                    break
            if hit:
                break
        best = max(best, dim_j)
    return best


def finite_length(pres, degree_cap=DEGREE_CAP):
    """Total Q-dimension of a module of Krull dimension <= 0."""
    if krull_dim(pres) > 0:
        raise NotFiniteLengthError("module is not finite length")
    return total_dimension(pres, degree_cap=degree_cap)


# ----- duals and Ext -----

def _transpose_columns(cols, source, target_dual):
    """Columns of the transposed map (one per generator of ``source``)."""
    out = []
    for i in range(source.rank):
        comps = [col.components[i] for col in cols]
        out.append(FreeModuleElement(target_dual, comps))
    return out


def presentation_of_submodule(gens, stats=None):
    """Presentation of the submodule generated by ``gens`` of a free module."""
    gens = [g for g in gens if not g.is_zero()]
    if not gens:
        raise InputError("cannot present a submodule from zero generators")
    ambient = gens[0].module
    if ambient.graded:
        target = GradedFreeModule(ambient.arity, [g.degree() for g in gens])
    else:
        target = GradedFreeModule(ambient.arity, rank=len(gens))
    rels = kernel_generators(gens, stats=stats)
    rels = [FreeModuleElement(target, r.components) for r in rels]
    return GradedModulePresentation(target, rels)


def module_dual(pres):
    """Hom_S(M, S): kernel of the transposed presentation map, presented
    through its own syzygies."""
    F0 = pres.target
    F0_dual = F0.dual()
    if not pres.relations:
        return GradedModulePresentation(F0_dual, [])
    rels = list(pres.relations)
    if F0.graded:
        F1 = GradedFreeModule(F0.arity, [r.degree() for r in rels])
    else:
        F1 = GradedFreeModule(F0.arity, rank=len(rels))
    F1_dual = F1.dual()
    cols_T = _transpose_columns(rels, F0, F1_dual)
    kernel = kernel_generators(cols_T, source_twists=F0_dual.twists,
                               stats=pres.stats)
    kernel = [k for k in kernel if not k.is_zero()]
    if not kernel:
        return GradedModulePresentation.zero(pres.arity, graded=F0.graded)
    gens = [FreeModuleElement(F0_dual, k.components) for k in kernel]
    return presentation_of_submodule(gens, stats=pres.stats)


def ext1_against_ring(pres, stats=None):
    """Ext^1_S(M, S) as homology of the dualized resolution at step 1."""
    graded = pres.graded
    if graded:
        res = pres.minimal_resolution()
    else:
        res = free_resolution(pres, minimal=False)
    if res.length == 0:
        return GradedModulePresentation.zero(pres.arity, graded=graded)
    F0, F1 = res.terms[0], res.terms[1]
    F0d, F1d = F0.dual(), F1.dual()
    phi1_T = _transpose_columns(res.maps[0], F0, F1d)
    if res.length == 1:
        return GradedModulePresentation(F1d, phi1_T)
    F2 = res.terms[2]
    F2d = F2.dual()
    phi2_T = _transpose_columns(res.maps[1], F1, F2d)
    kernel = kernel_generators(phi2_T, source_twists=F1d.twists,
                               stats=stats if stats is not None else pres.stats)
    kernel = [k for k in kernel if not k.is_zero()]
    if not kernel:
        return GradedModulePresentation.zero(pres.arity, graded=graded)
    k_elems = [FreeModuleElement(F1d, k.components) for k in kernel]
    m = len(k_elems)
    combined = k_elems + phi1_T
    if graded:
        src_twists = [k.degree() for k in k_elems] + list(F0d.twists)
    else:
        src_twists = None
    syz = kernel_generators(combined, source_twists=src_twists,
                            stats=stats if stats is not None else pres.stats)
    if graded:
        target = GradedFreeModule(pres.arity, [k.degree() for k in k_elems])
    else:
        target = GradedFreeModule(pres.arity, rank=m)
    rels = [FreeModuleElement(target, s.components[:m]) for s in syz]
    return GradedModulePresentation(target, rels)
