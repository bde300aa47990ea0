"""Weight bookkeeping for the isotropy representations at the singular orbits.

Everything here is finite combinatorics over integer weights: decompose
symmetric powers of torus and SU(2) modules, count equivariant maps between
them, and derive the collapsing-circle normalization constants from first
return times of one-parameter subgroups.
"""
from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction


@dataclass(frozen=True)
class AloffWallach:
    """Principal-orbit parameters (k, l), coprime and not both zero."""

    k: int
    l: int

    def __post_init__(self):
        if (self.k, self.l) == (0, 0):
            raise ValueError("(k, l) = (0, 0) is not an orbit parameter")
        if math.gcd(self.k, self.l) != 1:
            raise ValueError(f"(k, l) = ({self.k}, {self.l}) must be coprime")

    @property
    def delta(self) -> int:
        return self.k * self.k + self.k * self.l + self.l * self.l

    def is_exceptional(self) -> bool:
        """True for the two orbit types with extra equivalent submodules."""
        triple = sorted((self.k, self.l, -self.k - self.l))
        return triple in ([-1, 0, 1], [-2, 1, 1], [-1, -1, 2])

    def __str__(self):
        return f"N^{{{self.k},{self.l}}}"


def canon_weight(r: int, s: int) -> tuple[int, int]:
    """Canonical representative of the conjugation pair {(r,s), (-r,-s)}."""
    return (r, s) if (r, s) >= (-r, -s) else (-r, -s)


@dataclass
class TorusModuleSum:
    """Multiset of nontrivial canonical torus weights plus trivial summands."""

    weights: Counter = field(default_factory=Counter)
    trivial: int = 0

    def add(self, r: int, s: int, mult: int = 1) -> None:
        if (r, s) == (0, 0):
            self.trivial += mult
        else:
            self.weights[canon_weight(r, s)] += mult

    @property
    def total_dim(self) -> int:
        return 2 * sum(self.weights.values()) + self.trivial

    def to_json(self) -> dict:
        rows = [
            {"r": r, "s": s, "mult": m}
            for (r, s), m in sorted(self.weights.items())
        ]
        return {"weights": rows, "trivial": self.trivial}


def isotropy_modules(aw: AloffWallach) -> dict[str, tuple[int, int]]:
    """Torus weights of the three 2-dim tangent modules and the normal disc."""
    k, l = aw.k, aw.l
    return {
        "V1": canon_weight(3 * k + 3 * l, k - l),
        "V2": canon_weight(3 * l, 2 * k + l),
        "V3": canon_weight(-3 * k, k + 2 * l),
        "pperp": canon_weight(2 * aw.delta, 0),
    }


def torus_sym_power(w: tuple[int, int], m: int) -> TorusModuleSum:
    """S^m of a single 2-dim torus module of weight w."""
    if w == (0, 0):
        raise ValueError("weight (0, 0) is trivial; symmetric powers are degenerate")
    if m < 0:
        raise ValueError("m must be >= 0")
    out = TorusModuleSum()
    r, s = w
    for p in range(m // 2 + 1):
        j = m - 2 * p
        out.add(j * r, j * s)
    return out


def decompose_S2_p(aw: AloffWallach) -> TorusModuleSum:
    """S^2 of the 6-dim tangent space of the flag singular orbit."""
    k, l = aw.k, aw.l
    out = TorusModuleSum()
    out.trivial = 3
    for r, s in [
        (6 * k + 6 * l, 2 * k - 2 * l),
        (6 * l, 4 * k + 2 * l),
        (-6 * k, 2 * k + 4 * l),
        (3 * k + 6 * l, 3 * k),
        (3 * k, -k - 2 * l),
        (3 * l, 2 * k + l),
        (6 * k + 3 * l, -3 * l),
        (-3 * k + 3 * l, 3 * k + 3 * l),
        (3 * k + 3 * l, k - l),
    ]:
        out.add(r, s)
    return out


def dim_hom_torus(src: TorusModuleSum, dst: TorusModuleSum) -> int:
    """Real dimension of the space of equivariant maps src -> dst.

    A matched nontrivial pair contributes 2 (the maps between equivalent
    complex-type modules form a complex line); trivial pairs contribute 1.
    """
    dim = src.trivial * dst.trivial
    for w, m in src.weights.items():
        dim += 2 * m * dst.weights.get(w, 0)
    return dim


#: Orbit tokens accepted by dim_W.  "u12" is the flag orbit with the principal
#: orbit unquotiented; "u12-z2" is the same orbit under the order-two quotient
#: of the exceptional principal orbit.
TORUS_ORBITS = ("u12", "u12-z2")


def dim_W(aw: AloffWallach, orbit: str, m: int, part: str) -> int:
    """dim of the equivariant-map space S^m(normal) -> S^2(tangent or normal)."""
    if orbit == "s5":
        raise ValueError("use dim_W_s5")
    if orbit not in TORUS_ORBITS:
        raise ValueError(f"unknown orbit {orbit!r}; expected one of {TORUS_ORBITS + ('s5',)}")
    if orbit == "u12-z2":
        if (aw.k, aw.l) != (1, 1):
            raise ValueError("the order-two quotient exists only for (k, l) = (1, 1)")
        pperp = canon_weight(4 * aw.delta, 0)
    else:
        pperp = canon_weight(2 * aw.delta, 0)
    src = torus_sym_power(pperp, m)
    if part == "h":
        dst = decompose_S2_p(aw)
    elif part == "v":
        dst = torus_sym_power(pperp, 2)
    else:
        raise ValueError("part must be 'h' or 'v'")
    return dim_hom_torus(src, dst)


# -- SU(2) side (five-sphere singular orbit) -----------------------------------


@dataclass
class Su2ModuleSum:
    """Multiset of SU(2) irreducibles as real modules.

    Entries are (weight, kind): kind "R" for the real irreducible of even
    weight (dim weight+1), kind "C" for a complex irreducible taken as a real
    module (odd weight, dim 2(weight+1)).
    """

    entries: Counter = field(default_factory=Counter)

    def add(self, weight: int, kind: str | None = None, mult: int = 1) -> None:
        if kind is None:
            kind = "R" if weight % 2 == 0 else "C"
        if kind == "R" and weight % 2 != 0:
            raise ValueError("real-type entries have even weight")
        if kind == "C" and weight % 2 == 0:
            raise ValueError("complex-type entries have odd weight")
        self.entries[(weight, kind)] += mult

    @property
    def total_dim(self) -> int:
        return sum(
            ((w + 1) if kind == "R" else 2 * (w + 1)) * m
            for (w, kind), m in self.entries.items()
        )

    def to_json(self) -> dict:
        rows = [
            {"weight": w, "type": kind, "mult": m}
            for (w, kind), m in sorted(self.entries.items())
        ]
        return {"entries": rows}


def su2_sym_power(m: int) -> Su2ModuleSum:
    """S^m of the 3-dim real module (the normal space of the five-sphere)."""
    if m < 0:
        raise ValueError("m must be >= 0")
    out = Su2ModuleSum()
    for p in range(m // 2 + 1):
        out.add(2 * m - 4 * p, "R")
    return out


def _s5_S2_tangent() -> Su2ModuleSum:
    out = Su2ModuleSum()
    out.add(2, "R", 3)
    out.add(1, "C", 1)
    out.add(0, "R", 2)
    return out


def _s5_S2_normal() -> Su2ModuleSum:
    out = Su2ModuleSum()
    out.add(4, "R", 1)
    out.add(0, "R", 1)
    return out


def dim_W_s5(m: int, part: str) -> int:
    """Equivariant-map dimensions at the five-sphere singular orbit."""
    src = su2_sym_power(m)
    if part == "h":
        dst = _s5_S2_tangent()
    elif part == "v":
        dst = _s5_S2_normal()
    else:
        raise ValueError("part must be 'h' or 'v'")
    dim = 0
    for (w, kind), ms in src.entries.items():
        if kind != "R":
            continue
        dim += ms * dst.entries.get((w, "R"), 0)
    return dim


# -- first return times and collapsing-circle normalization ---------------------


def first_return_time(aw: AloffWallach, quotient_by_h: bool = False) -> Fraction:
    """Smallest t > 0 with exp(t e7) in the isotropy group, as a multiple of pi.

    With quotient_by_h the isotropy group is enlarged by the order-two element
    diag(i, -i, 1); returns r such that t = r * pi.  Brute-force search over
    the finite congruence lattice.
    """
    k, l = aw.k, aw.l
    delta = aw.delta
    v_den = 24 * delta * (abs(k) + abs(l) + 1)
    eps_branch = (0, 1) if quotient_by_h else (0,)

    def admissible(u: Fraction, eps: int) -> bool:
        e = Fraction(eps, 4)
        for j in range(v_den):
            v = Fraction(j, v_den)
            c1 = (2 * l + k) * u - k * v - e
            c2 = -(2 * k + l) * u - l * v + e
            c3 = (k - l) * u + (k + l) * v
            if c1.denominator == 1 and c2.denominator == 1 and c3.denominator == 1:
                return True
        return False

    best: Fraction | None = None
    for eps in eps_branch:
        # the commensurability condition forces 2*delta*u - (k+l)*eps/4 integral
        for n in range(0, 8 * delta + 2):
            u = (Fraction(n) + Fraction((k + l) * eps, 4)) / (2 * delta)
            if u <= 0:
                continue
            if admissible(u, eps):
                if best is None or u < best:
                    best = u
                break
    if best is None:
        raise RuntimeError(f"no return time found for {aw} (search bound too small)")
    return 2 * best  # t = 2*pi*u = (2u)*pi


def circle_normalization(aw: AloffWallach, quotient_by_h: bool = False) -> Fraction:
    """|f'(0)| forced by the collapsing circle: 2*pi / (first return time)."""
    return Fraction(2) / first_return_time(aw, quotient_by_h)
