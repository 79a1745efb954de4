"""Logarithmic derivations and forms of an arrangement, freeness tests,
and the non-freeness number N.

Conventions (for a central arrangement with defining polynomial f of
degree d = n):

* derivations theta = sum a_i d/dz_i are graded by deg(a_i); the Euler
  derivation chi has degree 1;
* a logarithmic 1-form omega is graded so that f*omega is homogeneous of
  degree d + deg(omega); its numerator vector lives in (S(d-1))^l;
* D_0 is the syzygy module of the partials of f, the kernel of the Euler
  contraction on derivations; Omega^1_0 is the kernel of the Euler
  contraction <chi, -> on Omega^1.

The pairing between derivations and forms identifies Hom(Omega^1_0, S)
with D_0(1), so Hilbert data of duals match up to that twist.
"""

import os
from concurrent.futures import ThreadPoolExecutor
from itertools import combinations, product

from .arrangements import Arrangement, build_lattice, localize
from .errors import EngineError, HypothesisError, InputError
from .modules import (DEGREE_CAP, FreeModuleElement, GradedFreeModule,
                      GradedModulePresentation, ext1_against_ring,
                      finite_length, groebner_basis, hilbert_function,
                      hilbert_polynomial, kernel_generators, krull_dim,
                      normal_form, presentation_of_submodule)
from .rings import MultiPoly, poly_product


class DefiningData:
    """Defining polynomial of an arrangement with its partials."""

    __slots__ = ("arrangement", "f", "degree", "partials")

    def __init__(self, arrangement, f, partials):
        self.arrangement = arrangement
        self.f = f
        self.degree = f.total_degree()
        self.partials = tuple(partials)

    @property
    def arity(self):
        return self.arrangement.dim

    @property
    def graded(self):
        return self.arrangement.is_central

    def euler_coefficients(self):
        """The coefficient vector (z_1, ..., z_l) of the Euler derivation."""
        return [MultiPoly.variable(self.arity, i) for i in range(self.arity)]


def hyperplane_form(arr, i):
    """The linear (or affine) form vanishing on hyperplane i."""
    form = MultiPoly.linear_form(arr.normals[i])
    if arr.constants is not None and arr.constants[i]:
        form = form - MultiPoly.constant(arr.dim, arr.constants[i])
    return form


def defining_data(arr):
    """f = product of the hyperplane forms, with partials; verifies the
    Euler identity  sum z_i f_i = d f  in the central case."""
    if arr.n < 1:
        raise InputError("defining polynomial needs at least one hyperplane")
    f = poly_product([hyperplane_form(arr, i) for i in range(arr.n)],
                     arity=arr.dim)
    partials = [f.partial(i) for i in range(arr.dim)]
    dd = DefiningData(arr, f, partials)
    if arr.is_central:
        zs = dd.euler_coefficients()
        acc = MultiPoly.zero(arr.dim)
        for z, fi in zip(zs, partials):
            acc = acc + z * fi
        if acc != f * dd.degree:
            raise EngineError("Euler identity failed (internal error)")
    return dd


class LogModule:
    """One of D, D_0, Omega^1, Omega^1_0 as a concrete presented module.

    ``generators`` are the ambient coordinates of the module generators
    (coefficient vectors of derivations, numerator vectors of forms).
    """

    __slots__ = ("kind", "presentation", "ambient", "generators", "defining")

    def __init__(self, kind, presentation, ambient, generators, defining):
        self.kind = kind
        self.presentation = presentation
        self.ambient = ambient
        self.generators = tuple(generators)
        self.defining = defining

    @property
    def graded(self):
        return self.presentation.graded

    def minimal_resolution(self):
        return self.presentation.minimal_resolution()

    def report(self):
        """Summary dict: kind, generator degrees, resolution twists, pdim."""
        out = {"kind": self.kind,
               "ambient_rank": self.ambient.rank if self.ambient else 0}
        if self.graded:
            res = self.minimal_resolution()
            out["generator_degrees"] = sorted(res.terms[0].twists)
            out["resolution_twists"] = [F.twist_multiset() for F in res.terms]
            out["pdim"] = res.length
        else:
            out["generator_count"] = len(self.generators)
        return out


def _zero_log_module(kind, dd, ambient):
    pres = GradedModulePresentation.zero(dd.arity, graded=dd.graded)
    return LogModule(kind, pres, ambient, [], dd)


def derivation_module_d0(dd):
    """D_0 = syzygies of the partials: theta(f) = 0.

    Generators are coefficient vectors in S^l graded by coefficient degree.
    """
    if not dd.graded:
        raise InputError("D_0 is computed for central arrangements")
    arity = dd.arity
    S1 = GradedFreeModule(arity, [0])
    cols = [S1.element([p]) for p in dd.partials]
    kernel = kernel_generators(cols,
                               source_twists=[dd.degree - 1] * arity,
                               stats=None)
    ambient = GradedFreeModule(arity, [0] * arity)
    gens = [ambient.element(list(k.components)) for k in kernel
            if not k.is_zero()]
    if not gens:
        return _zero_log_module("D0", dd, ambient)
    for g in gens:
        if not g.dot(dd.partials).is_zero():
            raise EngineError("alleged syzygy does not annihilate f")
    pres = presentation_of_submodule(gens)
    return LogModule("D0", pres, ambient, gens, dd)


def log_derivations(dd, d0=None):
    """D = S*chi + D_0, presented as a direct sum (the central splitting)."""
    if not dd.graded:
        raise InputError("D is computed for central arrangements")
    d0 = d0 or derivation_module_d0(dd)
    arity = dd.arity
    ambient = d0.ambient
    chi = ambient.element(dd.euler_coefficients())
    gens = [chi] + list(d0.generators)
    d0_pres = d0.presentation
    target = GradedFreeModule(arity, (1,) + tuple(d0_pres.target.twists))
    rels = []
    for r in d0_pres.relations:
        comps = [MultiPoly.zero(arity)] + list(r.components)
        rels.append(FreeModuleElement(target, comps))
    pres = GradedModulePresentation(target, rels)
    return LogModule("D", pres, ambient, gens, dd)


def log_forms(dd):
    """Omega^1 via the wedge congruences: numerator vectors g in S^l with
    f | f_i g_j - f_j g_i for all i < j."""
    arity = dd.arity
    zero = MultiPoly.zero(arity)
    pairs = list(combinations(range(arity), 2))
    m = len(pairs)
    graded = dd.graded
    if graded:
        H = GradedFreeModule(arity, [0] * m)
        src_twists = [dd.degree - 1] * arity + [dd.degree] * m
    else:
        H = GradedFreeModule(arity, rank=m)
        src_twists = None
    cols = []
    for k in range(arity):
        comps = []
        for (i, j) in pairs:
            if k == j:
                comps.append(dd.partials[i])
            elif k == i:
                comps.append(-dd.partials[j])
            else:
                comps.append(zero)
        cols.append(H.element(comps))
    for r in range(m):
        comps = [zero] * m
        comps[r] = dd.f
        cols.append(H.element(comps))
    kernel = kernel_generators(cols, source_twists=src_twists)
    if graded:
        ambient = GradedFreeModule(arity, [1 - dd.degree] * arity)
    else:
        ambient = GradedFreeModule(arity, rank=arity)
    gens = []
    seen = set()
    for k in kernel:
        comps = list(k.components[:arity])
        g = ambient.element(comps)
        if g.is_zero():
            continue
        key = tuple(tuple(sorted(p.terms.items())) for p in comps)
        if key in seen:
            continue
        seen.add(key)
        gens.append(g)
    if not gens:
        raise EngineError("Omega^1 computation produced no generators")
    pres = presentation_of_submodule(gens)
    lm = LogModule("Omega1", pres, ambient, gens, dd)
    if graded:
        df = ambient.element(list(dd.partials))
        gb = groebner_basis(list(gens))
        if not normal_form(df, gb).is_zero():
            raise EngineError("df/f is missing from Omega^1")
    return lm


def euler_contraction(lm, g):
    """<chi, omega> = (sum z_i g_i)/f for a numerator vector g in Omega^1."""
    dd = lm.defining
    num = g.dot(dd.euler_coefficients())
    if num.is_zero():
        return MultiPoly.zero(dd.arity)
    return num.divide_exact(dd.f)


def relative_log_forms(lm, check_split=True):
    """Omega^1_0 = kernel of the Euler contraction on Omega^1.

    Verifies the splitting Omega^1 = Omega^1_0 + S*(df/f) through Hilbert
    function additivity in low degrees.
    """
    if lm.kind != "Omega1":
        raise InputError("relative forms are computed from Omega^1")
    if not lm.graded:
        raise InputError("Omega^1_0 is defined for central arrangements")
    dd = lm.defining
    arity = dd.arity
    values = [euler_contraction(lm, g) for g in lm.generators]
    S1 = GradedFreeModule(arity, [0])
    cols = [S1.element([v]) for v in values]
    combos = kernel_generators(
        cols, source_twists=[g.degree() for g in lm.generators])
    gens = []
    for s in combos:
        acc = lm.ambient.zero_element()
        for i, c in enumerate(s.components):
            if not c.is_zero():
                acc = acc + lm.generators[i].poly_mul(c)
        if not acc.is_zero():
            gens.append(acc)
    if not gens:
        out = _zero_log_module("Omega1_0", dd, lm.ambient)
    else:
        for g in gens:
            if not euler_contraction(lm, g).is_zero():
                raise EngineError("Omega^1_0 generator fails <chi, -> = 0")
        pres = presentation_of_submodule(gens)
        out = LogModule("Omega1_0", pres, lm.ambient, gens, dd)
    if check_split:
        l = arity
        from math import comb
        for k in range(0, 5):
            lhs = hilbert_function(lm.presentation, k)
            rhs = hilbert_function(out.presentation, k) \
                + comb(k + l - 1, l - 1)
            if lhs != rhs:
                raise EngineError(
                    f"Euler splitting fails Hilbert additivity in degree {k}")
    return out


class FreenessReport:
    """Outcome of a freeness test on a logarithmic module."""

    __slots__ = ("kind", "is_free", "exponents", "pdim", "saito_checked")

    def __init__(self, kind, is_free, exponents, pdim, saito_checked=False):
        self.kind = kind
        self.is_free = is_free
        self.exponents = tuple(exponents) if exponents is not None else None
        self.pdim = pdim
        self.saito_checked = saito_checked

    def to_dict(self):
        return {"kind": self.kind, "is_free": self.is_free,
                "exponents": list(self.exponents)
                if self.exponents is not None else None,
                "pdim": self.pdim, "saito_checked": self.saito_checked}

    def __repr__(self):
        return (f"FreenessReport(kind={self.kind}, free={self.is_free}, "
                f"exponents={self.exponents}, pdim={self.pdim})")


def _det(rows):
    n = len(rows)
    if n == 1:
        return rows[0][0]
    arity = rows[0][0].arity
    out = MultiPoly.zero(arity)
    sign = 1
    for i in range(n):
        if not rows[i][0].is_zero():
            minor = [r[1:] for j, r in enumerate(rows) if j != i]
            out = out + rows[i][0] * _det(minor) * sign
        sign = -sign
    return out


def _saito_check(dd, derivation_rows):
    """det of the coefficient matrix equals a nonzero scalar times f."""
    det = _det([list(r.components) for r in derivation_rows])
    if det.is_zero():
        return False
    if det.total_degree() != dd.degree:
        return False
    try:
        q = det.divide_exact(dd.f)
    except InputError:
        return False
    return not q.is_zero() and set(q.terms) == {(0,) * dd.arity}


def saito_basis_search(dd, d0, exponents, cap=500):
    """Search D_0 generators for a basis certifying Saito's criterion.

    ``exponents`` is the degree multiset of a free D_0 (without the Euler
    exponent).  Returns True if some choice of generators with those
    degrees, together with the Euler derivation, has determinant c*f.
    """
    by_degree = {}
    for g in d0.generators:
        by_degree.setdefault(g.degree(), []).append(g)
    need = {}
    for e in exponents:
        need[e] = need.get(e, 0) + 1
    pools = []
    for e, count in sorted(need.items()):
        have = by_degree.get(e, [])
        if len(have) < count:
            return False
        pools.append(list(combinations(have, count)))
    chi = d0.ambient.element(dd.euler_coefficients())
    tried = 0
    for choice in product(*pools):
        rows = [chi]
        for group in choice:
            rows.extend(group)
        tried += 1
        if tried > cap:
            raise EngineError("Saito basis search exceeded its cap")
        if _saito_check(dd, rows):
            return True
    return False


def freeness_test(lm):
    """pdim from the minimal resolution; exponents and a Saito determinant
    check in the free case."""
    if not lm.graded:
        raise InputError("freeness is tested on graded (central) modules")
    res = lm.minimal_resolution()
    pdim = res.length
    is_free = pdim == 0
    exponents = sorted(res.terms[0].twists) if is_free else None
    saito = False
    if is_free and lm.kind == "D0" and lm.defining.arrangement.is_central:
        dd = lm.defining
        if lm.generators:
            saito = saito_basis_search(dd, lm, exponents)
        else:
            saito = dd.arity == 1  # D_0 = 0, chi alone spans D
        if not saito and dd.arity > 1:
            raise EngineError("free D_0 failed the Saito determinant check")
    return FreenessReport(lm.kind, is_free, exponents, pdim,
                          saito_checked=saito)


class NonFreeLocusReport:
    """Ext^1 data of Omega^1_0: cone dimension, N, optional per-flat sums."""

    __slots__ = ("ext1", "cone_dim", "n_projective", "per_flat")

    def __init__(self, ext1, cone_dim, n_projective, per_flat=None):
        self.ext1 = ext1
        self.cone_dim = cone_dim
        self.n_projective = n_projective
        self.per_flat = per_flat

    def to_dict(self):
        out = {"cone_dim": self.cone_dim, "N": self.n_projective}
        if self.per_flat is not None:
            out["per_flat"] = {
                "-".join(str(i) for i in sorted(flat.indices)): v
                for flat, v in self.per_flat.items()}
            out["per_flat_sum"] = sum(self.per_flat.values())
        return out


def nonfree_locus(lm, per_flat=False, chart=None, degree_cap=DEGREE_CAP):
    """N(PA) from the graded Ext^1 of Omega^1_0 over the cone.

    The Hilbert polynomial of Ext^1 is constant once the support is a cone
    over finitely many projective points (cone dimension <= 1); that
    constant is N.  With ``per_flat`` the chart-by-chart affine route of
    the localization formula is computed and compared.
    """
    if lm.kind != "Omega1_0":
        raise InputError("the non-free locus is read off Omega^1_0")
    ext1 = ext1_against_ring(lm.presentation)
    cone_dim = krull_dim(ext1)
    if cone_dim > 1:
        raise HypothesisError(
            f"non-free locus is not zero-dimensional (Ext^1 support has "
            f"cone dimension {cone_dim}); N is undefined")
    hp = hilbert_polynomial(ext1)
    if hp.is_zero():
        n_proj = 0
    else:
        if hp.degree() != 0:
            raise EngineError("Ext^1 Hilbert polynomial is non-constant "
                              "despite low-dimensional support")
        value = hp.coeffs[0]
        if value != int(value):
            raise EngineError("Ext^1 multiplicity is not an integer")
        n_proj = int(value)
    per = None
    if per_flat:
        per = per_flat_n_values(lm.defining.arrangement, chart=chart,
                                degree_cap=degree_cap)
        if sum(per.values()) != n_proj:
            raise EngineError(
                f"per-flat N sum {sum(per.values())} disagrees with the "
                f"graded Ext route {n_proj}")
    return NonFreeLocusReport(ext1, cone_dim, n_proj, per)


def affine_n_value(arr, degree_cap=DEGREE_CAP):
    """N of an affine arrangement: length of Ext^1(Omega^1, S) in the chart."""
    if arr.is_central:
        raise InputError("affine_n_value expects an affine arrangement")
    dd = defining_data(arr)
    om1 = log_forms(dd)
    ext1 = ext1_against_ring(om1.presentation)
    if krull_dim(ext1) > 0:
        raise HypothesisError("affine non-free locus is not zero-dimensional")
    return finite_length(ext1, degree_cap=degree_cap)


def chart_arrangement(arr, flat, chart=None):
    """The localization at a rank-(l-1) flat, dehomogenized on a coordinate
    chart of PV that contains the flat's projective point."""
    sub = localize(arr, flat)
    direction = flat.subspace_basis()
    if len(direction) != 1:
        raise InputError("chart construction needs a codimension l-1 flat")
    v = direction[0]
    if chart is not None:
        if not 0 <= chart < arr.dim or v[chart] == 0:
            raise InputError(
                f"chart {chart} does not contain the point of this flat")
        c = chart
    else:
        c = next(i for i, x in enumerate(v) if x != 0)
    normals = []
    consts = []
    for alpha in sub.normals:
        normals.append([a for i, a in enumerate(alpha) if i != c])
        consts.append(-alpha[c])
    return Arrangement(arr.dim - 1, normals, constants=consts)


def per_flat_n_values(arr, lattice=None, chart=None, degree_cap=DEGREE_CAP):
    """N(A_X) per codimension-(l-1) flat, per the localization formula."""
    if not arr.is_central:
        raise InputError("per-flat N values need a central arrangement")
    lat = lattice or build_lattice(arr)
    flats = lat.flats_of_codim(arr.dim - 1)

    def one(flat):
        aff = chart_arrangement(arr, flat, chart=chart)
        return flat, affine_n_value(aff, degree_cap=degree_cap)

    threads = 0
    raw = os.environ.get("LOGCHERN_THREADS", "0")
    try:
        threads = max(0, int(raw))
    except ValueError:
        threads = 0
    if threads > 1 and len(flats) > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            results = list(pool.map(one, flats))
    else:
        results = [one(flat) for flat in flats]
    return dict(results)
