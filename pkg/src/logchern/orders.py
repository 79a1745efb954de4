"""Monomial orders on free modules.

A module term is a pair ``(pos, exps)``: a monomial (exponent tuple) sitting
in component ``pos`` of a free module.  An order object turns a term into a
sort key; larger key means larger term.  Keys are memoized per order
instance, so repeated comparisons during reduction are cheap.

Layouts:

* TOP ("term over position"): compare by twisted total degree, then grevlex
  (or lex) on the monomial, then prefer the smaller position.  Degree
  compatible, the default for Groebner runs on graded modules.
* POT ("position over term"): smaller position dominates outright; used as
  an elimination order for kernel/graph computations.
* Schreyer: the order induced on a syzygy module by the leading terms of a
  Groebner basis; compares images in the parent module, ties broken by
  preferring the smaller index.
"""

from .errors import InputError


def grevlex_tail(exps):
    return tuple(-e for e in reversed(exps))


class ModuleOrder:
    """Base: memoized key machinery shared by all concrete orders."""

    __slots__ = ("_cache",)

    def __init__(self):
        self._cache = {}

    def key(self, term):
        k = self._cache.get(term)
        if k is None:
            k = self._key(term)
            self._cache[term] = k
        return k

    def _key(self, term):  # pragma: no cover - abstract
        raise NotImplementedError


class TOPOrder(ModuleOrder):
    """Degree-first order: (deg + twist, monomial key, -pos)."""

    __slots__ = ("kind", "twists")

    def __init__(self, kind="grevlex", twists=None):
        super().__init__()
        if kind not in ("grevlex", "lex"):
            raise InputError(f"unknown monomial order kind {kind!r}")
        self.kind = kind
        self.twists = tuple(twists) if twists is not None else None

    def _key(self, term):
        pos, exps = term
        tw = self.twists[pos] if self.twists is not None else 0
        if self.kind == "grevlex":
            return (sum(exps) + tw, grevlex_tail(exps), -pos)
        return (sum(exps) + tw, exps, -pos)


class POTOrder(ModuleOrder):
    """Elimination order: position dominates, then graded monomial order."""

    __slots__ = ("kind",)

    def __init__(self, kind="grevlex"):
        super().__init__()
        if kind not in ("grevlex", "lex"):
            raise InputError(f"unknown monomial order kind {kind!r}")
        self.kind = kind

    def _key(self, term):
        pos, exps = term
        if self.kind == "grevlex":
            return (-pos, sum(exps), grevlex_tail(exps))
        return (-pos, exps)


class SchreyerOrder(ModuleOrder):
    """Order induced on S^m by a Groebner basis g_1..g_m in the parent:
    (mon, i) > (mon', j) iff mon*lt(g_i) > mon'*lt(g_j) in the parent order,
    with ties won by the smaller index."""

    __slots__ = ("parent", "lead_terms")

    def __init__(self, parent, lead_terms):
        super().__init__()
        self.parent = parent
        self.lead_terms = tuple(lead_terms)  # terms (pos, exps) in the parent

    def _key(self, term):
        pos, exps = term
        lpos, lexps = self.lead_terms[pos]
        image = (lpos, tuple(a + b for a, b in zip(exps, lexps)))
        return (self.parent.key(image), -pos)


class MonomialOrder:
    """User-facing order description (kind + position policy + twists).

    ``engine()`` materializes the corresponding internal order object.
    """

    __slots__ = ("kind", "position", "twists")

    def __init__(self, kind="grevlex", position="TOP", twists=None):
        if kind not in ("grevlex", "lex"):
            raise InputError(f"unknown monomial order kind {kind!r}")
        if position not in ("TOP", "POT"):
            raise InputError(f"unknown position policy {position!r}")
        self.kind = kind
        self.position = position
        self.twists = tuple(twists) if twists is not None else None

    def engine(self):
        if self.position == "TOP":
            return TOPOrder(self.kind, self.twists)
        return POTOrder(self.kind)

    def __repr__(self):
        return (f"MonomialOrder(kind={self.kind!r}, position={self.position!r}, "
                f"twists={self.twists!r})")


GREVLEX = MonomialOrder("grevlex", "TOP")
