"""Named instances and seeded random generators.

Within each small gadget the two vertices of a class are ``x`` (index 0)
and ``y`` (index 1), and the truncated Fano plane F is the even-parity
half of the 2x2x2 cube: xxx, xyy, yxy, yyx.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from math import ceil

from t3lab.errors import InputError
from t3lab.hypercore import (
    Tripartite3Graph,
    disjoint_union,
    is_regular,
    nu_exact,
)
from t3lab.reports import BoundReport
from t3lab.structure import find_fano_components, has_fano_subcopy

FANO_SHAPES = ((0, 0, 0), (0, 1, 1), (1, 0, 1), (1, 1, 0))
REMOVED_SHAPE = (1, 1, 0)  # y1 y2 x3, dropped once in the even gadget
DOUBLED_SHAPE = (0, 0, 0)  # x1 x2 x3, added once in the odd gadget

FAMILIES = (
    "fano",
    "scaled-fano",
    "extremal",
    "thm53-even",
    "thm53-odd",
    "parallel-triple",
    "random-regular",
    "mixture",
)
RANDOM_MODELS = ("stubs", "matchings")


@dataclass(frozen=True)
class GadgetSpec:
    """A named family plus its parameters.

    ``params`` keys by family: scaled-fano ``s``; extremal ``r, n``;
    thm53-even / thm53-odd / parallel-triple ``r``; random-regular
    ``r, n, seed`` and optional ``model``; mixture ``parts`` (GadgetSpecs).
    """

    family: str
    params: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise InputError(f"unknown family {self.family!r}; choose from {', '.join(FAMILIES)}")
        p = dict(self.params)
        object.__setattr__(self, "params", p)
        need = {
            "fano": (),
            "scaled-fano": ("s",),
            "extremal": ("r", "n"),
            "thm53-even": ("r",),
            "thm53-odd": ("r",),
            "parallel-triple": ("r",),
            "random-regular": ("r", "n", "seed"),
            "mixture": ("parts",),
        }[self.family]
        missing = [k for k in need if k not in p]
        if missing:
            raise InputError(f"{self.family}: missing parameter(s) {', '.join(missing)}")
        if self.family == "mixture":
            p["parts"] = tuple(
                part if isinstance(part, GadgetSpec) else GadgetSpec.from_json(part) for part in p["parts"]
            )
        else:
            for k, v in p.items():
                if k != "model" and (isinstance(v, bool) or not isinstance(v, int)):
                    raise InputError(f"{self.family}: parameter {k} must be an integer")
        self._check_domain(p)

    def _check_domain(self, p):
        fam = self.family
        if fam == "scaled-fano" and p["s"] < 1:
            raise InputError("scaled-fano needs s >= 1")
        if fam == "extremal" and (p["r"] < 2 or p["r"] % 2 or p["n"] < 0 or p["n"] % 2):
            raise InputError("extremal needs even r >= 2 and even n >= 0")
        if fam == "thm53-even" and (p["r"] < 2 or p["r"] % 2):
            raise InputError("thm53-even needs even r >= 2")
        if fam == "thm53-odd" and (p["r"] < 3 or p["r"] % 2 == 0):
            raise InputError("thm53-odd needs odd r >= 3")
        if fam == "parallel-triple" and p["r"] < 1:
            raise InputError("parallel-triple needs r >= 1")
        if fam == "random-regular":
            if p["r"] < 1 or p["n"] < 1:
                raise InputError("random-regular needs r >= 1 and n >= 1")
            if p.setdefault("model", "stubs") not in RANDOM_MODELS:
                raise InputError(f"random-regular model must be one of {RANDOM_MODELS}")
        if fam == "mixture" and not p["parts"]:
            raise InputError("mixture needs at least one part")

    def to_json(self) -> dict:
        params = dict(self.params)
        if "parts" in params:
            params["parts"] = [part.to_json() for part in params["parts"]]
        return {"family": self.family, "params": params}

    @classmethod
    def from_json(cls, obj) -> "GadgetSpec":
        if not isinstance(obj, dict) or "family" not in obj:
            raise InputError("gadget spec must be an object with a 'family' key")
        return cls(obj["family"], obj.get("params", {}))

    @property
    def r(self) -> int | None:
        if self.family in ("fano",):
            return 2
        if self.family == "scaled-fano":
            return 2 * self.params["s"]
        return self.params.get("r")


def fano() -> Tripartite3Graph:
    return Tripartite3Graph.from_triples((2, 2, 2), FANO_SHAPES)


def extremal(r: int, n: int) -> Tripartite3Graph:
    """n/2 disjoint copies of (r/2)·F."""
    if n == 0:
        return Tripartite3Graph((0, 0, 0))
    return disjoint_union(*[fano().scaled(r // 2)] * (n // 2))


def _shift(shape, k):
    return tuple(2 * k + x for x in shape)


def thm53_even(r: int) -> Tripartite3Graph:
    """r/2 copies of (r/2)·F with one yyx copy removed, plus hubs a, b, c
    (index r in each class) joined to each copy's degree r-1 vertices."""
    half, hub = r // 2, r
    triples = []
    for k in range(half):
        for s in FANO_SHAPES:
            m = half - 1 if s == REMOVED_SHAPE else half
            if m:
                triples.append(_shift(s, k) + (m,))
        x, y = 2 * k, 2 * k + 1
        triples += [(y, hub, hub), (hub, y, hub), (hub, hub, x)]
    return Tripartite3Graph.from_triples((r + 1,) * 3, triples)


def thm53_odd(r: int) -> Tripartite3Graph:
    """(r-1)/2 copies of ((r-1)/2)·F with xxx doubled, plus hubs at index
    r-1, the three hub edges per copy on its y vertices, and the hub edge."""
    half, hub = (r - 1) // 2, r - 1
    triples = []
    for k in range(half):
        for s in FANO_SHAPES:
            m = half + 1 if s == DOUBLED_SHAPE else half
            triples.append(_shift(s, k) + (m,))
        y = 2 * k + 1
        triples += [(y, hub, hub), (hub, y, hub), (hub, hub, y)]
    triples.append((hub, hub, hub))
    return Tripartite3Graph.from_triples((r,) * 3, triples)


def random_regular(r: int, n: int, seed: int, model: str = "stubs") -> Tripartite3Graph:
    """Seeded r-regular instance with n vertices per class.

    ``stubs``: r stubs per vertex; the k-th A stub is joined to the k-th
    stub of independently shuffled B and C stub lists.  ``matchings``:
    union of r perfect matchings, each a pair of random permutations.
    """
    rng = random.Random(seed)
    triples = []
    if model == "stubs":
        a = [v for v in range(n) for _ in range(r)]
        b, c = a[:], a[:]
        rng.shuffle(b)
        rng.shuffle(c)
        triples = list(zip(a, b, c))
    else:
        for _ in range(r):
            pb, pc = list(range(n)), list(range(n))
            rng.shuffle(pb)
            rng.shuffle(pc)
            triples += [(i, pb[i], pc[i]) for i in range(n)]
    return Tripartite3Graph.from_triples((n, n, n), triples)


def build(spec: GadgetSpec) -> Tripartite3Graph:
    p = spec.params
    match spec.family:
        case "fano":
            return fano()
        case "scaled-fano":
            return fano().scaled(p["s"])
        case "extremal":
            return extremal(p["r"], p["n"])
        case "thm53-even":
            return thm53_even(p["r"])
        case "thm53-odd":
            return thm53_odd(p["r"])
        case "parallel-triple":
            return Tripartite3Graph.from_triples((1, 1, 1), [(0, 0, 0, p["r"])])
        case "random-regular":
            return random_regular(p["r"], p["n"], p["seed"], p["model"])
        case "mixture":
            return disjoint_union(*[build(part) for part in p["parts"]])
    raise InputError(f"unknown family {spec.family!r}")  # pragma: no cover


def expected_class_sizes(spec: GadgetSpec) -> tuple[int, int, int] | None:
    p = spec.params
    match spec.family:
        case "fano" | "scaled-fano":
            return (2, 2, 2)
        case "extremal" | "random-regular":
            return (p["n"],) * 3
        case "thm53-even":
            return (p["r"] + 1,) * 3
        case "thm53-odd":
            return (p["r"],) * 3
        case "parallel-triple":
            return (1, 1, 1)
    return None


def _flag(name: str, ok: bool, context=None) -> BoundReport:
    return BoundReport(name, Fraction(int(ok)), Fraction(1), ok, {}, context or {})


def validate(spec: GadgetSpec, h: Tripartite3Graph) -> list[BoundReport]:
    """Family-specific checks, one report each."""
    out = []
    sizes = expected_class_sizes(spec)
    if sizes is not None:
        out.append(_flag("class-sizes", h.class_sizes == sizes, {"expected": list(sizes), "got": list(h.class_sizes)}))
    r = spec.r
    if r is not None and spec.family != "mixture":
        out.append(_flag("regular", is_regular(h, r), {"r": r}))
    fam = spec.family
    if fam == "mixture":
        return out
    n = h.class_sizes[0]
    nu = nu_exact(h).size
    if n:
        out.append(BoundReport.check("thm-1.2", Fraction(nu), Fraction(ceil(n / 2)), {}, {"r": r, "n": n, "nu": nu}))
    if fam in ("thm53-even", "thm53-odd"):
        # (r/2)·F only exists for even r
        fano_free = r % 2 == 1 or (not find_fano_components(h, r) and has_fano_subcopy(h, r) is None)
        out.append(_flag("fano-free", fano_free, {"r": r}))
        ceiling = r // 2 + 1 if fam == "thm53-even" else (r - 1) // 2 + 1
        out.append(BoundReport.check("nu-upper", Fraction(ceiling), Fraction(nu), {}, {"r": r, "nu": nu}))
        rhs = (1 + 1 / (22 * r - Fraction(77, 3))) * Fraction(n, 2)
        out.append(BoundReport.check("cor-5.1", Fraction(nu), rhs, {}, {"r": r, "n": n, "nu": nu}))
    if fam == "extremal":
        count = len(find_fano_components(h, r))
        out.append(BoundReport.check("fano-count", Fraction(count), Fraction(n, 2), {}, {"count": count}))
        out.append(_flag("nu-half", nu * 2 == n, {"nu": nu, "n": n}))
    if fam == "fano":
        out.append(_flag("nu-one", nu == 1, {"nu": nu}))
    return out
