"""Central and affine hyperplane arrangements: validation, intersection
lattices, Moebius functions, Poincare polynomials, deconing, localization
and essentialization.

A central arrangement in C^l is a list of pairwise non-proportional
primitive integer normal vectors.  Affine arrangements (deconed ones) carry
an integer constant per hyperplane, the equation being <normal, x> = const;
their lattices follow the semilattice convention (empty intersections are
dropped).
"""

import json
from fractions import Fraction

from .errors import InputError
from .rings import UniPolyQ, render_univariate, vec_primitive, \
    rational_vec_primitive


def rref(rows):
    """Reduced row echelon form over Q; returns a tuple of pivot rows.

    Zero rows are dropped, pivots are 1, pivot columns are cleared, rows
    are ordered by pivot column, so the output is a canonical form of the
    row span.
    """
    mat = [list(map(Fraction, r)) for r in rows]
    ncols = len(mat[0]) if mat else 0
    out = []
    pivot_cols = []
    row_idx = 0
    for col in range(ncols):
        pivot = None
        for r in range(row_idx, len(mat)):
            if mat[r][col] != 0:
                pivot = r
                break
        if pivot is None:
            continue
        mat[row_idx], mat[pivot] = mat[pivot], mat[row_idx]
        pv = mat[row_idx][col]
        mat[row_idx] = [v / pv for v in mat[row_idx]]
        for r in range(len(mat)):
            if r != row_idx and mat[r][col] != 0:
                factor = mat[r][col]
                mat[r] = [a - factor * b for a, b in zip(mat[r], mat[row_idx])]
        pivot_cols.append(col)
        row_idx += 1
        if row_idx == len(mat):
            break
    return tuple(tuple(mat[i]) for i in range(row_idx))


def in_row_span(vec, rref_rows):
    """Membership of a rational vector in the span of canonical rref rows."""
    v = list(map(Fraction, vec))
    for row in rref_rows:
        pc = next(i for i, x in enumerate(row) if x != 0)
        if v[pc] != 0:
            c = v[pc]
            v = [a - c * b for a, b in zip(v, row)]
    return all(x == 0 for x in v)


def nullspace(rref_rows, ncols):
    """Basis of the solution space of the homogeneous system, from rref."""
    pivots = []
    for row in rref_rows:
        pivots.append(next(i for i, x in enumerate(row) if x != 0))
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        v = [Fraction(0)] * ncols
        v[fc] = Fraction(1)
        for row, pc in zip(rref_rows, pivots):
            v[pc] = -row[fc]
        basis.append(tuple(v))
    return basis


class Arrangement:
    """A hyperplane arrangement with primitive integer data.

    ``constants is None`` marks the central case; otherwise hyperplane i is
    the affine set  <normals[i], x> = constants[i].
    """

    __slots__ = ("dim", "normals", "constants", "labels")

    def __init__(self, dim, normals, constants=None, labels=None):
        if dim < 1:
            raise InputError("ambient dimension must be >= 1")
        self.dim = dim
        norm = []
        seen = {}
        consts = list(constants) if constants is not None else None
        for idx, vec in enumerate(normals):
            vec = tuple(vec)
            if len(vec) != dim:
                raise InputError(
                    f"normal {vec} has length {len(vec)}, expected {dim}")
            if all(v == 0 for v in vec):
                raise InputError("zero normal vector")
            if constants is None:
                nv = vec_primitive(vec)
                key = nv
            else:
                nv, c = _normalize_affine(vec, consts[idx])
                consts[idx] = c
                key = (nv, c)
            if key in seen:
                raise InputError(
                    f"duplicate hyperplane at positions {seen[key]} and {idx}"
                    " (the divisor must be reduced)")
            seen[key] = idx
            norm.append(nv)
        self.normals = tuple(norm)
        self.constants = tuple(consts) if consts is not None else None
        if labels is not None and len(labels) != len(norm):
            raise InputError("label count does not match hyperplane count")
        self.labels = tuple(labels) if labels is not None else None

    @property
    def n(self):
        return len(self.normals)

    @property
    def is_central(self):
        return self.constants is None

    def rank(self):
        return len(rref(self.normals)) if self.normals else 0

    def is_essential(self):
        return self.rank() == self.dim

    def hyperplane_label(self, i):
        if self.labels:
            return self.labels[i]
        return f"H{i}"

    def to_dict(self):
        out = {"l": self.dim, "hyperplanes": [list(v) for v in self.normals]}
        if self.constants is not None:
            out["constants"] = list(self.constants)
        if self.labels is not None:
            out["labels"] = list(self.labels)
        return out

    def __repr__(self):
        kind = "central" if self.is_central else "affine"
        return f"Arrangement({kind}, l={self.dim}, n={self.n})"


def _normalize_affine(vec, const):
    joint = rational_vec_primitive(tuple(vec) + (const,))
    nv, c = joint[:-1], joint[-1]
    if all(v == 0 for v in nv):
        raise InputError("zero normal vector")
    # sign convention lives on the normal part
    for v in nv:
        if v < 0:
            return tuple(-x for x in nv), -c
        if v > 0:
            break
    return nv, c


def parse_arrangement(source):
    """Arrangement from the JSON input format.

    ``source`` may be a dict, a JSON string, or a path to a JSON file with
    fields  {"l": int, "hyperplanes": [[int, ...], ...],
    "labels": [...]?, "constants": [...]?}.  Input order is preserved.
    """
    if isinstance(source, dict):
        data = source
    else:
        text = str(source)
        if "{" not in text:
            with open(text, "r", encoding="utf-8") as fh:
                data = json.load(fh)
        else:
            data = json.loads(text)
    if not isinstance(data, dict) or "l" not in data or "hyperplanes" not in data:
        raise InputError('input must provide "l" and "hyperplanes"')
    dim = data["l"]
    if not isinstance(dim, int):
        raise InputError('"l" must be an integer')
    hyps = data["hyperplanes"]
    if not isinstance(hyps, list):
        raise InputError('"hyperplanes" must be a list of integer vectors')
    for v in hyps:
        if not isinstance(v, list) or not all(isinstance(x, int) for x in v):
            raise InputError(f"hyperplane {v!r} is not an integer vector")
    return Arrangement(dim, hyps, constants=data.get("constants"),
                       labels=data.get("labels"))


class Flat:
    """A flat of the intersection lattice.

    Identified by its closed hyperplane index set; carries the canonical
    reduced row echelon form of its defining equations (augmented with the
    constants column in the affine case).
    """

    __slots__ = ("indices", "equations", "codim", "ambient_dim", "affine")

    def __init__(self, indices, equations, codim, ambient_dim, affine):
        self.indices = frozenset(indices)
        self.equations = equations
        self.codim = codim
        self.ambient_dim = ambient_dim
        self.affine = affine

    def subspace_basis(self):
        """Basis of the linear part (directions) of the flat."""
        if not self.equations:
            basis = []
            for i in range(self.ambient_dim):
                v = [Fraction(0)] * self.ambient_dim
                v[i] = Fraction(1)
                basis.append(tuple(v))
            return basis
        rows = self.equations
        if self.affine:
            rows = tuple(r[:-1] for r in rows)
            rows = rref(rows)
        return nullspace(rows, self.ambient_dim)

    def sort_key(self):
        return (self.codim, tuple(sorted(self.indices)))

    def __eq__(self, other):
        return isinstance(other, Flat) and self.indices == other.indices \
            and self.equations == other.equations

    def __hash__(self):
        return hash((self.indices, self.equations))

    def __repr__(self):
        return f"Flat(codim={self.codim}, indices={sorted(self.indices)})"


class IntersectionLattice:
    """Flats grouped by codimension, with Moebius values.

    The order is reverse inclusion of subspaces, which on closed index sets
    is plain containment: Y <= X iff Y.indices <= X.indices.
    """

    __slots__ = ("arrangement", "levels", "mobius_values")

    def __init__(self, arrangement, levels):
        self.arrangement = arrangement
        self.levels = [sorted(lv, key=Flat.sort_key) for lv in levels]
        self.mobius_values = None

    @property
    def rank(self):
        return len(self.levels) - 1

    def all_flats(self):
        for lv in self.levels:
            yield from lv

    def flats_of_codim(self, c):
        if c < 0 or c >= len(self.levels):
            return []
        return list(self.levels[c])

    @property
    def bottom(self):
        return self.levels[0][0]

    def contains_flat(self, flat):
        return any(flat == g for g in self.flats_of_codim(flat.codim))

    def mobius(self, flat):
        if self.mobius_values is None:
            compute_mobius(self)
        return self.mobius_values[flat.indices]

    def report(self):
        """Deterministic lattice summary: flats by codim with mu values."""
        if self.mobius_values is None:
            compute_mobius(self)
        out = []
        for c, lv in enumerate(self.levels):
            out.append({
                "codim": c,
                "flats": [{"hyperplanes": sorted(f.indices),
                           "mu": self.mobius_values[f.indices]}
                          for f in lv],
            })
        return out


def build_lattice(arr):
    """All flats by breadth-first intersection, deduplicated by canonical
    echelon form.  Affine mode drops empty intersections."""
    dim = arr.dim
    affine = not arr.is_central
    if affine:
        eqrows = [tuple(arr.normals[i]) + (arr.constants[i],)
                  for i in range(arr.n)]
    else:
        eqrows = [tuple(arr.normals[i]) for i in range(arr.n)]

    def closure(eqs):
        idx = [i for i in range(arr.n) if in_row_span(eqrows[i], eqs)]
        return frozenset(idx)

    def consistent(eqs):
        if not affine:
            return True
        for row in eqs:
            if all(x == 0 for x in row[:-1]) and row[-1] != 0:
                return False
        return True

    bottom = Flat(closure(()), (), 0, dim, affine)
    levels = [[bottom]]
    current = {bottom.indices: bottom}
    seen = {bottom.indices}
    while True:
        nxt = {}
        for flat in current.values():
            for h in range(arr.n):
                if h in flat.indices:
                    continue
                eqs = rref(flat.equations + (eqrows[h],))
                if not consistent(eqs):
                    continue
                if len(eqs) != flat.codim + 1:
                    continue
                idx = closure(eqs)
                if idx not in nxt and idx not in seen:
                    nxt[idx] = Flat(idx, eqs, flat.codim + 1, dim, affine)
        if not nxt:
            break
        levels.append(list(nxt.values()))
        seen |= set(nxt)
        current = nxt
    return IntersectionLattice(arr, levels)


def compute_mobius(lat):
    """Annotate the lattice with Moebius values via the defining recursion
    mu(V) = 1,  sum_{Y <= X} mu(Y) = 0 for X > V."""
    values = {}
    for c, lv in enumerate(lat.levels):
        for flat in lv:
            if c == 0:
                values[flat.indices] = 1
                continue
            acc = 0
            for c2 in range(c):
                for below in lat.levels[c2]:
                    if below.indices <= flat.indices:
                        acc += values[below.indices]
            values[flat.indices] = -acc
    lat.mobius_values = values
    return lat


def mobius(lat):
    """Spec-facing alias: annotate and return the lattice."""
    return compute_mobius(lat)


class PoincarePoly:
    """Integer polynomial pi(A, t) with b_0 = 1."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs):
        cs = list(coeffs)
        while cs and cs[-1] == 0:
            cs.pop()
        if not cs or cs[0] != 1:
            raise InputError("Poincare polynomial must have constant term 1")
        self.coeffs = tuple(cs)

    def coefficient(self, i):
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else 0

    def degree(self):
        return len(self.coeffs) - 1

    def evaluate(self, x):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def as_unipoly(self):
        return UniPolyQ(list(self.coeffs))

    def divide_by_one_plus_t(self):
        """Exact quotient by (1 + t); raises if the division is inexact."""
        out = []
        rem = 0
        for c in self.coeffs:
            v = c - rem
            out.append(v)
            rem = v
        if out and out[-1] != 0:
            # the final carry must cancel the top coefficient exactly
            raise InputError("Poincare polynomial is not divisible by 1+t")
        out.pop()
        return PoincarePoly(out)

    def __eq__(self, other):
        return isinstance(other, PoincarePoly) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def render(self):
        return render_univariate(self.coeffs, "t", ascending=True)

    def __repr__(self):
        return f"PoincarePoly({self.render()})"


def poincare_affine(arr, lattice=None):
    """pi(A, t) = sum_X mu(X) (-t)^rank(X) over the intersection lattice."""
    lat = lattice or build_lattice(arr)
    if lat.mobius_values is None:
        compute_mobius(lat)
    coeffs = [0] * (lat.rank + 1)
    for c, lv in enumerate(lat.levels):
        s = sum(lat.mobius_values[f.indices] for f in lv)
        coeffs[c] = s * (-1) ** c
    return PoincarePoly(coeffs)


def poincare_projective(arr, lattice=None):
    """pi(PA, t) = pi(A, t) / (1 + t); central arrangements, n >= 1."""
    if not arr.is_central:
        raise InputError("projective Poincare polynomial needs a central "
                         "arrangement")
    if arr.n < 1:
        raise InputError("projective formulas need at least one hyperplane")
    return poincare_affine(arr, lattice).divide_by_one_plus_t()


def decone(arr, h_index):
    """Affine arrangement on the chart {alpha_H = 1} of the chosen
    hyperplane; satisfies pi(A, t) = (1 + t) pi(dA, t)."""
    if not arr.is_central:
        raise InputError("deconing is defined for central arrangements")
    if not 0 <= h_index < arr.n:
        raise InputError(f"hyperplane index {h_index} out of range")
    if arr.dim < 2:
        raise InputError("deconing needs ambient dimension >= 2")
    alpha = arr.normals[h_index]
    pivot = next(i for i, v in enumerate(alpha) if v != 0)
    point = [Fraction(0)] * arr.dim
    point[pivot] = Fraction(1, alpha[pivot])
    basis = []
    for j in range(arr.dim):
        if j == pivot:
            continue
        v = [Fraction(0)] * arr.dim
        v[j] = Fraction(1)
        v[pivot] = Fraction(-alpha[j], alpha[pivot])
        basis.append(v)
    normals = []
    consts = []
    labels = [] if arr.labels else None
    for i, beta in enumerate(arr.normals):
        if i == h_index:
            continue
        coeffs = [sum(Fraction(b) * vb for b, vb in zip(beta, v))
                  for v in basis]
        const = -sum(Fraction(b) * p for b, p in zip(beta, point))
        joint = rational_vec_primitive(tuple(coeffs) + (const,))
        normals.append(list(joint[:-1]))
        consts.append(joint[-1])
        if labels is not None:
            labels.append(arr.labels[i])
    return Arrangement(arr.dim - 1, normals, constants=consts, labels=labels)


def localize(arr, flat):
    """Sub-arrangement of the hyperplanes containing the flat."""
    if not arr.is_central:
        raise InputError("localization implemented for central arrangements")
    lat_idx = sorted(flat.indices)
    if any(i < 0 or i >= arr.n for i in lat_idx):
        raise InputError("flat does not belong to this arrangement")
    for i in lat_idx:
        if not in_row_span(arr.normals[i], flat.equations):
            raise InputError("flat index set is not closed for this "
                             "arrangement")
    labels = [arr.hyperplane_label(i) for i in lat_idx] if arr.labels else None
    return Arrangement(arr.dim, [arr.normals[i] for i in lat_idx],
                       labels=labels)


def essentialize(arr):
    """Rewrite the arrangement on a complement of its center.

    The normals are re-expressed in the canonical basis of their span, an
    invertible change that preserves the intersection lattice and hence the
    Poincare polynomial.
    """
    if not arr.is_central:
        raise InputError("essentialization is defined for central "
                         "arrangements")
    if arr.n == 0 or arr.is_essential():
        return arr
    basis = rref(arr.normals)
    r = len(basis)
    pivots = [next(i for i, x in enumerate(row) if x != 0) for row in basis]
    normals = []
    for alpha in arr.normals:
        coords = [Fraction(alpha[pc]) for pc in pivots]
        check = [sum(c * row[j] for c, row in zip(coords, basis))
                 for j in range(arr.dim)]
        if any(check[j] != alpha[j] for j in range(arr.dim)):
            raise InputError("normal escaped its own span (internal error)")
        normals.append(list(rational_vec_primitive(coords)))
    return Arrangement(r, normals, labels=arr.labels)
