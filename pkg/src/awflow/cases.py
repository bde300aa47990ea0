"""Catalog of the eight singular-orbit initial value problems.

Each case pins: which system applies, which functions vanish at t=0, the
initial data the caller supplies, the first-derivative values forced by the
collapsing-sphere geometry, the free higher-order slots, and the parity /
mirror structure used by the smoothness checks.  The catalog is data; tests
pin every entry.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .exact import rat
from .reptheory import AloffWallach
from .systems import SystemId


class ConstraintError(ValueError):
    """Caller-supplied parameters violate a case constraint (exit code 3)."""


class MissingSlotValue(ConstraintError):
    """A required free-slot parameter was not supplied."""

    def __init__(self, function: str, order: int, param: str):
        super().__init__(
            f"free slot ({function}, {order}) needs a value: pass --param {param}=<rational>"
        )
        self.slot = (function, order)
        self.param = param


@dataclass(frozen=True)
class SlotSpec:
    """A free coefficient: series coefficient (function, order) = scale * param."""

    param: str
    function: str
    order: int

    def scale(self, case: "OrbitCase", params: dict[str, Fraction]) -> Fraction:
        return case.slot_scale(self, params)


@dataclass(frozen=True)
class MirrorSpec:
    """Coefficient identity fn1(t) = sign * fn2(t_sign * t)."""

    fn1: str
    fn2: str
    sign: int = 1
    t_sign: int = -1


@dataclass(frozen=True)
class EinsteinSpec:
    """Diagonal Einstein solve data: order-1 seeding and free slots."""

    combo_slots: tuple[tuple[str, str, int], ...]  # (param, label, order)
    coeff_slots: tuple[SlotSpec, ...]
    f1_default: str  # "2delta" | "12" | "0"


@dataclass(frozen=True)
class OrbitCase:
    id: str
    long_id: str
    system_kind: str
    fixed_kl: tuple[int, int] | None
    excluded_kl: tuple[tuple[int, int], ...]
    vanishing: frozenset[str]
    required_params: tuple[str, ...]
    slots: tuple[SlotSpec, ...]
    parity: dict[str, str]
    mirror: tuple[MirrorSpec, ...]
    einstein: EinsteinSpec | None
    holonomy: str
    description: str
    seed_first_order: bool = False
    equal_pairs: tuple[tuple[str, str], ...] = ()

    # -- orbit / system ---------------------------------------------------------

    def resolve_aw(self, k: int | None = None, l: int | None = None) -> AloffWallach:
        if self.fixed_kl is not None:
            if k is not None and (k, l) != self.fixed_kl:
                raise ConstraintError(
                    f"case {self.id} is pinned to (k, l) = {self.fixed_kl}"
                )
            return AloffWallach(*self.fixed_kl)
        if k is None or l is None:
            raise ConstraintError(f"case {self.id} needs --k and --l")
        if (k, l) in self.excluded_kl:
            raise ConstraintError(
                f"(k, l) = ({k}, {l}) is excluded for case {self.id}"
            )
        aw = AloffWallach(k, l)
        if self.id in ("A", "B") and (k, l) == (1, 1):
            raise ConstraintError("the (1, 1) flag case is case C")
        if self.id == "E" and k + l == 0:
            raise ConstraintError("case E needs k + l != 0")
        return aw

    def system(self, aw: AloffWallach) -> SystemId:
        return SystemId(self.system_kind, aw)

    # -- caller parameters -------------------------------------------------------

    def check_params(self, params: dict[str, Fraction]) -> dict[str, Fraction]:
        params = {name: rat(value) for name, value in params.items()}
        for name in self.required_params:
            if name not in params:
                raise ConstraintError(f"case {self.id} requires parameter {name!r}")
            if params[name] == 0:
                raise ConstraintError(f"parameter {name!r} must be nonzero")
        return params

    def initial_values(self, aw: AloffWallach, params: dict[str, Fraction]) -> dict[str, Fraction]:
        p = self.check_params(params)
        get = p.get
        if self.id in ("A", "B"):
            vals = {"a": p["a0"], "b": p["b0"], "c": p["c0"], "f": Fraction(0)}
        elif self.id == "C":
            vals = {"a1": p["a0"], "a2": -p["a0"], "b": p["b0"], "c": p["c0"],
                    "f": Fraction(0)}
            self._check_opt(p, "a10", p["a0"])
            self._check_opt(p, "a20", -p["a0"])
        elif self.id == "D":
            vals = {"a": Fraction(0), "b": p["b0"], "c": p["b0"], "f": p["f0"]}
            self._check_opt(p, "c0", p["b0"])
        elif self.id == "E":
            vals = {"a": Fraction(0), "b": p["b0"], "c": p["b0"], "f": Fraction(0)}
            self._check_opt(p, "c0", p["b0"])
        elif self.id == "F":
            vals = {"a1": Fraction(0), "a2": Fraction(0), "b": p["b0"], "c": p["b0"],
                    "f": Fraction(0)}
            self._check_opt(p, "c0", p["b0"])
        elif self.id == "G":
            vals = {"a1": p["a0"], "a2": p["a0"], "b": Fraction(0), "c": p["a0"],
                    "f": Fraction(0)}
            self._check_opt(p, "c0", p["a0"])
            self._check_opt(p, "a10", p["a0"])
            self._check_opt(p, "a20", p["a0"])
        elif self.id == "H":
            vals = {"a1": p["a0"], "a2": -p["a0"], "b": Fraction(0), "c": p["a0"],
                    "f": Fraction(0)}
            self._check_opt(p, "c0", p["a0"])
            self._check_opt(p, "a10", p["a0"])
            self._check_opt(p, "a20", -p["a0"])
        else:  # pragma: no cover
            raise AssertionError(self.id)
        return vals

    def _check_opt(self, params, name, expected):
        if name in params and params[name] != expected:
            raise ConstraintError(
                f"case {self.id} forces {name} = {expected}, got {params[name]}"
            )

    def first_order_seed(self, aw: AloffWallach, params: dict[str, Fraction]) -> dict[str, Fraction]:
        """Forced first derivatives where the order-by-order step is quadratic."""
        if not self.seed_first_order:
            return {}
        p = params
        if self.id == "D":
            return {"a": Fraction(2), "b": -p["f0"] / (6 * p["b0"]),
                    "c": p["f0"] / (6 * p["b0"]), "f": Fraction(0)}
        if self.id == "E":
            return {"a": Fraction(1), "b": Fraction(0), "c": Fraction(0),
                    "f": Fraction(2 * aw.delta, aw.k + aw.l)}
        if self.id == "F":
            return {"a1": Fraction(1), "a2": Fraction(1), "b": Fraction(0),
                    "c": Fraction(0), "f": Fraction(3)}
        if self.id == "G":
            return {"a1": Fraction(0), "a2": Fraction(0), "b": Fraction(1),
                    "c": Fraction(0), "f": Fraction(-6)}
        if self.id == "H":
            return {"a1": Fraction(0), "a2": Fraction(0), "b": Fraction(1),
                    "c": Fraction(0), "f": Fraction(6)}
        raise AssertionError(self.id)  # pragma: no cover

    def slot_scale(self, slot: SlotSpec, params: dict[str, Fraction]) -> Fraction:
        if self.id == "E" and slot.param == "q":
            return 1 / (6 * params["b0"] ** 2)
        if self.id == "F":
            return 1 / (6 * params["b0"] ** 2)
        if self.id == "G":
            return 1 / (6 * params["a0"] ** 2)
        if self.id == "H":
            return 1 / (2 * params["a0"])
        raise AssertionError((self.id, slot))  # pragma: no cover

    def normalization(self, aw: AloffWallach) -> dict[str, Fraction]:
        """|first derivative| at t=0 of each collapsing function."""
        if self.id in ("A", "B"):
            return {}
        if self.id == "C":
            return {"f": Fraction(12)}
        if self.id == "D":
            return {"a": Fraction(2)}
        if self.id == "E":
            return {"a": Fraction(1), "f": abs(Fraction(2 * aw.delta, aw.k + aw.l))}
        if self.id == "F":
            return {"a1": Fraction(1), "a2": Fraction(1), "f": Fraction(3)}
        return {"b": Fraction(1), "f": Fraction(6)}

    def to_json(self, aw: AloffWallach | None = None) -> dict:
        if aw is None and self.fixed_kl is not None:
            aw = AloffWallach(*self.fixed_kl)
        data = {
            "id": self.id,
            "long_id": self.long_id,
            "system": self.system_kind,
            "kl": list(self.fixed_kl) if self.fixed_kl else None,
            "vanishing": sorted(self.vanishing),
            "params": list(self.required_params),
            "free_slots": [[s.function, s.order, s.param] for s in self.slots],
            "parity": dict(self.parity),
            "mirror": [[m.fn1, m.fn2, m.sign, m.t_sign] for m in self.mirror],
            "holonomy": self.holonomy,
            "description": self.description,
        }
        if aw is not None:
            data["normalization"] = {
                fn: str(v) for fn, v in self.normalization(aw).items()
            }
        return data


CASES: dict[str, OrbitCase] = {}


def _register(case: OrbitCase) -> OrbitCase:
    CASES[case.id] = case
    return case


_register(OrbitCase(
    id="A", long_id="A_generic_flag", system_kind="S1",
    fixed_kl=None, excluded_kl=((1, 1),),
    vanishing=frozenset({"f"}),
    required_params=("a0", "b0", "c0"),
    slots=(),
    # the degenerate branch is not a smooth-collapse metric: only the forced
    # f-parity is checkable (the even parities belong to the Einstein family)
    parity={"f": "odd"},
    mirror=(),
    einstein=EinsteinSpec(combo_slots=(), coeff_slots=(SlotSpec("f3", "f", 3),),
                          f1_default="2delta"),
    holonomy="degenerate: f == 0 forces a product branch with holonomy in G2",
    description="flag singular orbit, generic principal orbit; the first-order "
                "system forces f to vanish identically",
))

_register(OrbitCase(
    id="B", long_id="B_N10_flag", system_kind="S1",
    fixed_kl=(1, 0), excluded_kl=(),
    vanishing=frozenset({"f"}),
    required_params=("a0", "b0", "c0"),
    slots=(),
    parity={"f": "odd"},
    mirror=(),
    einstein=EinsteinSpec(combo_slots=(), coeff_slots=(SlotSpec("f3", "f", 3),),
                          f1_default="2delta"),
    holonomy="degenerate: f == 0 forces a product branch with holonomy in G2",
    description="flag singular orbit, (1,0) principal orbit (diagonal metrics)",
))

_register(OrbitCase(
    id="C", long_id="C_N11Z2_flag", system_kind="S2",
    fixed_kl=(1, 1), excluded_kl=(),
    vanishing=frozenset({"f"}),
    required_params=("a0", "b0", "c0"),
    slots=(),
    parity={"b": "even", "c": "even", "f": "odd"},
    mirror=(MirrorSpec("a1", "a2", sign=-1, t_sign=-1),),
    einstein=EinsteinSpec(
        combo_slots=(("asum1", "a1+a2", 1),),
        coeff_slots=(SlotSpec("f3", "f", 3),),
        f1_default="12"),
    holonomy="subgroup of Spin(7); SU(4) exactly on the family a0^2 = b0^2 + c0^2",
    description="flag singular orbit, order-two quotient of the (1,1) principal "
                "orbit; unique solution from (a0, b0, c0)",
))

_register(OrbitCase(
    id="D", long_id="D_N1m1_S5", system_kind="S1",
    fixed_kl=(1, -1), excluded_kl=(),
    vanishing=frozenset({"a"}),
    required_params=("b0", "f0"),
    slots=(),
    parity={"a": "odd", "f": "even"},
    mirror=(MirrorSpec("b", "c", sign=1, t_sign=-1),),
    einstein=EinsteinSpec(
        combo_slots=(("bdiff1", "b-c", 1),),
        coeff_slots=(SlotSpec("a3", "a", 3),),
        f1_default="0"),
    holonomy="Spin(7)",
    description="five-sphere singular orbit; a collapses with |a'(0)| = 2",
    seed_first_order=True,
))

_register(OrbitCase(
    id="E", long_id="E_generic_CP2", system_kind="S1",
    fixed_kl=None, excluded_kl=((1, -1), (1, 1), (1, -2), (2, -1)),
    vanishing=frozenset({"a", "f"}),
    required_params=("b0",),
    slots=(SlotSpec("q", "f", 3),),
    parity={"a": "odd", "b": "even", "c": "even", "f": "odd"},
    mirror=(),
    einstein=None,
    holonomy="Spin(7)",
    description="complex projective plane singular orbit, generic principal "
                "orbit; third-order parameter q with f'''(0) = q/b0^2",
    seed_first_order=True,
))

_register(OrbitCase(
    id="F", long_id="F_N11_CP2_aa", system_kind="S2",
    fixed_kl=(1, 1), excluded_kl=(),
    vanishing=frozenset({"a1", "a2", "f"}),
    required_params=("b0",),
    slots=(SlotSpec("q1", "a1", 3), SlotSpec("q2", "a2", 3)),
    parity={"a1": "odd", "a2": "odd", "b": "even", "c": "even", "f": "odd"},
    mirror=(MirrorSpec("b", "c", sign=1, t_sign=1),),
    einstein=None,
    holonomy="subgroup of Spin(7)",
    description="complex projective plane singular orbit with a1, a2, f "
                "collapsing; b = c holds identically",
    seed_first_order=True,
    equal_pairs=(("b", "c"),),
))

_register(OrbitCase(
    id="G", long_id="G_N11_CP2_bplus", system_kind="S2",
    fixed_kl=(1, 1), excluded_kl=(),
    vanishing=frozenset({"b", "f"}),
    required_params=("a0",),
    slots=(SlotSpec("q", "b", 3),),
    parity={"a1": "even", "a2": "even", "b": "odd", "c": "even", "f": "odd"},
    mirror=(MirrorSpec("a1", "a2", sign=1, t_sign=1),),
    einstein=None,
    holonomy="subgroup of Spin(7)",
    description="complex projective plane singular orbit with b, f collapsing "
                "and a1(0) = a2(0); a1 = a2 holds identically",
    seed_first_order=True,
    equal_pairs=(("a1", "a2"),),
))

_register(OrbitCase(
    id="H", long_id="H_N11_CP2_bminus", system_kind="S2",
    fixed_kl=(1, 1), excluded_kl=(),
    vanishing=frozenset({"b", "f"}),
    required_params=("a0",),
    slots=(SlotSpec("q", "c", 2),),
    parity={"a1": "even", "a2": "even", "b": "odd", "c": "even", "f": "odd"},
    mirror=(),
    einstein=None,
    holonomy="subgroup of Spin(7)",
    description="complex projective plane singular orbit with b, f collapsing "
                "and a1(0) = -a2(0); second-order parameter c''(0) = q/a0",
    seed_first_order=True,
))


def get_case(case_id: str) -> OrbitCase:
    cid = case_id.strip().upper()
    if cid not in CASES:
        raise KeyError(f"unknown case {case_id!r}; catalog: {sorted(CASES)}")
    return CASES[cid]


def catalog_json() -> list[dict]:
    return [CASES[cid].to_json() for cid in sorted(CASES)]
