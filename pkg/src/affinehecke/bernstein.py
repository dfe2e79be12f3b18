"""
Descriptor-level Bernstein decomposition for GL_N over a division algebra.

An inertial class is described by a Levi partition ``(n_1, ..., n_k)`` of N and
one cuspidal factor per block: an opaque inertial label plus its torsion
number ``n`` and reducibility number ``s``.  From that data we compute

* the grouping of blocks into classes (same block size and same label);
* the tensor decomposition ``(x)_i H(r_i, q^{f_i})`` with ``r_i`` the class
  size and ``f_i = n * s``;
* for N = 2, the cusp / non-equivalent / equivalent trichotomy and the
  normalized presentation of each case;
* a Morita tag per class: parameters of rank-1 and rank-2 factors are erased,
  rank >= 3 factors keep ``z`` up to ``z <-> 1/z``.

Multiplicities are infinite and never enumerated; reports carry the constant
:data:`MULTIPLICITY`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterable, Sequence, Union

import gmpy2

from .coeff import Rat, format_rat, to_rat
from .errors import (InconsistentLabels, InvalidDescriptor, InvalidParameter, NotRankTwo,
                     UnsupportedShape)

__all__ = [
    "MULTIPLICITY", "DivisionAlgebra", "CuspidalFactor", "InertialClassDescriptor",
    "QPower", "SSClass", "SSDecomposition", "LaurentPoly", "DihedralQuotient", "TensorAffine",
    "FactorTag", "MoritaTag", "ClassShape", "CensusReport",
    "group_factors", "ss_decompose", "gl2_classify", "presentation_of", "morita_tag",
    "tag_of_factors", "census_compare", "gl2_shape_grid", "cuspidal_shapes",
    "descriptor_from_json", "decompose_report",
]

MULTIPLICITY = "countably-infinite"


def _is_prime_power(q: int) -> bool:
    if q < 2:
        return False
    p = next(d for d in range(2, q + 1) if q % d == 0)
    while q % p == 0:
        q //= p
    return q == 1


@dataclass(frozen=True)
class DivisionAlgebra:
    q: int  # residue field cardinality
    d: int  # index; the algebra has dimension d^2 over its centre

    def __post_init__(self):
        if not isinstance(self.q, int) or not _is_prime_power(self.q):
            raise InvalidDescriptor(f"q = {self.q!r} is not a prime power")
        if not isinstance(self.d, int) or self.d < 1:
            raise InvalidDescriptor(f"d = {self.d!r} must be a positive integer")

    def to_json(self) -> dict:
        return {"q": self.q, "d": self.d}


@dataclass(frozen=True)
class CuspidalFactor:
    label: str
    m: int
    torsion: int
    reducibility: Rat

    def __post_init__(self):
        object.__setattr__(self, "reducibility", to_rat(self.reducibility))
        if self.m < 1:
            raise InvalidDescriptor(f"factor {self.label!r}: m must be >= 1")
        if self.torsion < 1:
            raise InvalidDescriptor(f"factor {self.label!r}: torsion number must be >= 1")
        if self.reducibility <= 0:
            raise InvalidDescriptor(f"factor {self.label!r}: reducibility number must be positive")

    @property
    def f(self) -> Rat:
        return self.torsion * self.reducibility

    @property
    def invariants(self) -> tuple:
        return (self.m, self.torsion, self.reducibility)

    def to_json(self) -> dict:
        return {"label": self.label, "m": self.m, "torsion": self.torsion,
                "reducibility": format_rat(self.reducibility)}


@dataclass(frozen=True)
class InertialClassDescriptor:
    algebra: DivisionAlgebra
    N: int
    levi: tuple[int, ...]
    factors: tuple[CuspidalFactor, ...]
    allow_nonintegral_f: bool = False

    def __post_init__(self):
        object.__setattr__(self, "levi", tuple(self.levi))
        object.__setattr__(self, "factors", tuple(self.factors))
        if self.N < 1:
            raise InvalidDescriptor("N must be >= 1")
        if any(n < 1 for n in self.levi) or sum(self.levi) != self.N:
            raise InvalidDescriptor(f"levi {self.levi} is not a partition of N = {self.N}")
        if len(self.factors) != len(self.levi):
            raise InvalidDescriptor(f"{len(self.factors)} factors for {len(self.levi)} Levi blocks")
        for n, fac in zip(self.levi, self.factors):
            if fac.m != n:
                raise InvalidDescriptor(f"factor {fac.label!r} has m = {fac.m}, block size is {n}")
        seen: dict[str, tuple] = {}
        for fac in self.factors:
            if seen.setdefault(fac.label, fac.invariants) != fac.invariants:
                raise InconsistentLabels(f"label {fac.label!r} carries unequal invariants")
            if not self.allow_nonintegral_f and fac.f.denominator != 1:
                raise InvalidDescriptor(
                    f"factor {fac.label!r}: n*s = {format_rat(fac.f)} is not an integer "
                    "(it is a residue degree); pass allow_nonintegral_f to override")

    @property
    def is_cuspidal(self) -> bool:
        return self.levi == (self.N,)


# -- parameter values ---------------------------------------------------------

def _primitive_root(q: int) -> tuple[int, int]:
    """(b, e) with b**e == q and b not a perfect power."""
    best = (q, 1)
    for e in range(2, q.bit_length() + 1):
        root, exact = gmpy2.iroot(q, e)
        if exact:
            best = (int(root), e)
    if best[1] > 1:
        b, e2 = _primitive_root(best[0])
        return b, best[1] * e2
    return best


@dataclass(frozen=True)
class QPower:
    """``base ** exponent`` with a non-integral exponent and ``base`` not a perfect power."""
    base: int
    exponent: Rat

    def inverse(self) -> "QPower":
        return QPower(self.base, -self.exponent)

    def __float__(self):
        return math.exp(float(self.exponent) * math.log(self.base))

    def __str__(self):
        return f"{self.base}^({format_rat(self.exponent)})"


ZValue = Union[Rat, QPower]


def q_power(q: int, f: Rat) -> ZValue:
    """``q ** f`` exactly: a rational when ``f`` is an integer, else a :class:`QPower`."""
    f = to_rat(f)
    if f.denominator == 1:
        return gmpy2.mpq(q) ** int(f)
    b, e = _primitive_root(q)
    x = e * f
    if x.denominator == 1:
        return gmpy2.mpq(b) ** int(x)
    return QPower(b, x)


def _z_inverse(z: ZValue) -> ZValue:
    return z.inverse() if isinstance(z, QPower) else 1 / z


def _z_key(z: ZValue) -> tuple:
    return (float(z), str(z) if isinstance(z, QPower) else format_rat(z))


def _z_text(z: ZValue) -> str:
    return str(z) if isinstance(z, QPower) else format_rat(z)


def _z_min(z: ZValue) -> ZValue:
    zi = _z_inverse(z)
    if isinstance(z, QPower):
        return z if z.exponent < 0 else zi
    return min(z, zi)


# -- class data ---------------------------------------------------------------

@dataclass(frozen=True)
class SSClass:
    indices: tuple[int, ...]  # 1-based block indices
    r: int
    f: Rat
    z: ZValue
    label: str

    def to_json(self) -> dict:
        return {"indices": list(self.indices), "label": self.label, "r": self.r,
                "f": format_rat(self.f), "z": _z_text(self.z)}


@dataclass(frozen=True)
class SSDecomposition:
    classes: tuple[SSClass, ...]

    @property
    def ell(self) -> int:
        return len(self.classes)


def group_factors(desc: InertialClassDescriptor) -> SSDecomposition:
    """Partition the Levi blocks: i ~ j iff equal block size and equal inertial label."""
    groups: dict[tuple, list[int]] = {}
    for idx, (n, fac) in enumerate(zip(desc.levi, desc.factors), start=1):
        groups.setdefault((n, fac.label), []).append(idx)
    classes = []
    for (n, label), idxs in groups.items():
        fac = desc.factors[idxs[0] - 1]
        classes.append(SSClass(tuple(idxs), len(idxs), fac.f, q_power(desc.algebra.q, fac.f), label))
    return SSDecomposition(tuple(classes))


# -- presentations ------------------------------------------------------------

@dataclass(frozen=True)
class LaurentPoly:
    num_vars: int

    def to_json(self) -> dict:
        text = "C[x,x^-1]" if self.num_vars == 1 else "C[y,z,y^-1,z^-1]"
        return {"kind": "LaurentPoly", "num_vars": self.num_vars, "algebra": text}


@dataclass(frozen=True)
class DihedralQuotient:
    def to_json(self) -> dict:
        return {"kind": "DihedralQuotient", "algebra": "C~[s,t,t^-1]/<s^2-1, t^2*s-s*t^2>"}


@dataclass(frozen=True)
class TensorAffine:
    factors: tuple[tuple[int, ZValue], ...]
    normalized: bool = True

    def to_json(self) -> dict:
        out = {"kind": "TensorAffine",
               "factors": [{"r": r, "z": _z_text(z)} for r, z in self.factors],
               "algebra": " (x) ".join(f"H({r},{_z_text(z)})" for r, z in self.factors)}
        if not self.normalized:
            out["note"] = "no normalized presentation"
        return out


Presentation = Union[LaurentPoly, DihedralQuotient, TensorAffine]


def ss_decompose(desc: InertialClassDescriptor) -> TensorAffine:
    ss = group_factors(desc)
    factors = sorted(((c.r, c.z) for c in ss.classes), key=lambda rz: (rz[0], _z_key(rz[1])))
    return TensorAffine(tuple(factors))


def gl2_classify(desc: InertialClassDescriptor) -> str:
    """``"Cusp"``, ``"Neqv"`` or ``"Eqv"`` for an inertial class of GL_2."""
    if desc.N != 2:
        raise NotRankTwo(f"trichotomy is defined for N = 2, got N = {desc.N}")
    if desc.is_cuspidal:
        return "Cusp"
    a, b = desc.factors
    return "Eqv" if a.label == b.label else "Neqv"


def presentation_of(desc: InertialClassDescriptor) -> Presentation:
    """
    Normalized presentation of the spherical Hecke algebra of the class.

    Cuspidal classes (any N) give one-variable Laurent polynomials; for N = 2
    the non-equivalent case gives two variables and the equivalent case the
    quotient ``C~[s,t,t^-1]/<s^2-1, t^2 s - s t^2>``.  Other classes have no
    normalized form and come back as an unnormalized tensor product.
    """
    if desc.is_cuspidal:
        return LaurentPoly(1)
    if desc.N == 2:
        kind = gl2_classify(desc)
        return LaurentPoly(2) if kind == "Neqv" else DihedralQuotient()
    ss = ss_decompose(desc)
    return TensorAffine(ss.factors, normalized=False)


# -- Morita tags --------------------------------------------------------------

@dataclass(frozen=True)
class FactorTag:
    r: int
    zclass: ZValue | None = None  # kept only for r >= 3

    @property
    def kind(self) -> str:
        return {1: "A1", 2: "A2generic"}.get(self.r, "Ar")

    def sort_key(self) -> tuple:
        return (self.r, _z_key(self.zclass) if self.zclass is not None else ())

    def __str__(self):
        if self.r <= 2:
            return self.kind
        return f"Ar({self.r},{_z_text(self.zclass)})"


@dataclass(frozen=True)
class MoritaTag:
    factors: tuple[FactorTag, ...]

    def to_json(self) -> list[str]:
        return [str(f) for f in self.factors]

    def __str__(self):
        return "{" + ", ".join(self.to_json()) + "}"


def tag_of_factors(factors: Iterable[tuple[int, ZValue]]) -> MoritaTag:
    """Morita tag of ``(x) H(r_i, z_i)``; z must be positive (so never -1)."""
    tags = []
    for r, z in factors:
        if r < 1:
            raise InvalidParameter(f"rank {r} must be >= 1")
        if not isinstance(z, QPower):
            z = to_rat(z)
            if z <= 0:
                raise InvalidParameter(f"parameter z = {format_rat(z)} must be positive")
        tags.append(FactorTag(r) if r <= 2 else FactorTag(r, _z_min(z)))
    return MoritaTag(tuple(sorted(tags, key=FactorTag.sort_key)))


def morita_tag(desc: InertialClassDescriptor) -> MoritaTag:
    return tag_of_factors(ss_decompose(desc).factors)


# -- shapes and census --------------------------------------------------------

@dataclass(frozen=True)
class ClassShape:
    """An inertial class with the algebra left open: Levi partition, labels, per-label (n, s)."""
    name: str
    levi: tuple[int, ...]
    labels: tuple[str, ...]
    invariants: tuple[tuple[str, int, Rat], ...]  # (label, torsion, reducibility)

    @property
    def N(self) -> int:
        return sum(self.levi)

    @property
    def is_cuspidal(self) -> bool:
        return len(self.levi) == 1

    def instantiate(self, algebra: DivisionAlgebra,
                    allow_nonintegral_f: bool = False) -> InertialClassDescriptor:
        inv = {label: (n, s) for label, n, s in self.invariants}
        factors = [CuspidalFactor(label, m, *inv[label]) for m, label in zip(self.levi, self.labels)]
        return InertialClassDescriptor(algebra, self.N, self.levi, tuple(factors), allow_nonintegral_f)


def gl2_shape_grid(values: Sequence[int] = (1, 2, 3)) -> list[ClassShape]:
    """Cusp, Neqv, Eqv crossed with (torsion, reducibility) in ``values`` x ``values``."""
    out = []
    for n in values:
        for s in values:
            s = to_rat(s)
            tag = f"n={n},s={format_rat(s)}"
            out.append(ClassShape(f"Cusp[{tag}]", (2,), ("A",), (("A", n, s),)))
            out.append(ClassShape(f"Neqv[{tag}]", (1, 1), ("A", "B"), (("A", n, s), ("B", n, s))))
            out.append(ClassShape(f"Eqv[{tag}]", (1, 1), ("A", "A"), (("A", n, s),)))
    return out


def cuspidal_shapes(Ns: Iterable[int], values: Sequence[int] = (1, 2, 3)) -> list[ClassShape]:
    return [ClassShape(f"Cusp[N={N},n={n},s={s}]", (N,), ("A",), (("A", n, to_rat(s)),))
            for N in Ns for n in values for s in values]


@dataclass
class CensusReport:
    algebra_a: DivisionAlgebra
    algebra_b: DivisionAlgebra
    rows: list[dict] = field(default_factory=list)
    unsupported: list[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(row["equal"] for row in self.rows)

    def tag_set(self, which: str) -> set[str]:
        return {str(row[which]) for row in self.rows}

    def to_json(self) -> dict:
        return {
            "algebra_a": self.algebra_a.to_json(),
            "algebra_b": self.algebra_b.to_json(),
            "shapes": [{"shape": r["shape"], "tag_a": r["tag_a"].to_json(),
                        "tag_b": r["tag_b"].to_json(), "equal": r["equal"]} for r in self.rows],
            "tag_set_a": sorted(self.tag_set("tag_a")),
            "tag_set_b": sorted(self.tag_set("tag_b")),
            "unsupported": [{"shape": s, "warning": "UnsupportedShape"} for s in self.unsupported],
            "multiplicity": MULTIPLICITY,
            "verdict": "PASS" if self.passed else "FAIL",
        }


def census_compare(shapes: Iterable[ClassShape], alg_a: DivisionAlgebra, alg_b: DivisionAlgebra,
                   allow_nonintegral_f: bool = False) -> CensusReport:
    """
    Compare Morita tags shape by shape under two division algebras.

    Non-cuspidal shapes with N >= 3 have no parameter-free normal form; they are
    listed under ``unsupported`` and left out of the verdict.
    """
    report = CensusReport(alg_a, alg_b)
    for shape in shapes:
        if shape.N >= 3 and not shape.is_cuspidal:
            report.unsupported.append(shape.name)
            continue
        ta = morita_tag(shape.instantiate(alg_a, allow_nonintegral_f))
        tb = morita_tag(shape.instantiate(alg_b, allow_nonintegral_f))
        report.rows.append({"shape": shape.name, "tag_a": ta, "tag_b": tb, "equal": ta == tb})
    return report


def check_supported(shape: ClassShape) -> None:
    if shape.N >= 3 and not shape.is_cuspidal:
        raise UnsupportedShape(f"{shape.name}: no Morita normal form for non-cuspidal N >= 3")


# -- JSON surface -------------------------------------------------------------

DESCRIPTOR_SCHEMA = {
    "type": "object",
    "required": ["algebra", "N", "levi", "factors"],
    "additionalProperties": False,
    "properties": {
        "algebra": {
            "type": "object", "required": ["q", "d"], "additionalProperties": False,
            "properties": {"q": {"type": "integer", "minimum": 2},
                           "d": {"type": "integer", "minimum": 1}},
        },
        "N": {"type": "integer", "minimum": 1},
        "levi": {"type": "array", "minItems": 1, "items": {"type": "integer", "minimum": 1}},
        "factors": {
            "type": "array", "minItems": 1,
            "items": {
                "type": "object", "required": ["label", "m", "torsion", "reducibility"],
                "additionalProperties": False,
                "properties": {
                    "label": {"type": "string"},
                    "m": {"type": "integer", "minimum": 1},
                    "torsion": {"type": "integer", "minimum": 1},
                    "reducibility": {"type": ["string", "integer"]},
                },
            },
        },
    },
}


def descriptor_from_json(data: dict, allow_nonintegral_f: bool = False) -> InertialClassDescriptor:
    import jsonschema

    try:
        jsonschema.validate(data, DESCRIPTOR_SCHEMA)
    except jsonschema.ValidationError as exc:
        raise InvalidDescriptor(f"schema violation: {exc.message}") from exc
    alg = DivisionAlgebra(data["algebra"]["q"], data["algebra"]["d"])
    try:
        factors = tuple(CuspidalFactor(f["label"], f["m"], f["torsion"], to_rat(f["reducibility"]))
                        for f in data["factors"])
    except ValueError as exc:
        raise InvalidDescriptor(str(exc)) from exc
    return InertialClassDescriptor(alg, data["N"], tuple(data["levi"]), factors, allow_nonintegral_f)


def decompose_report(desc: InertialClassDescriptor) -> dict:
    ss = group_factors(desc)
    return {
        "trichotomy": gl2_classify(desc) if desc.N == 2 else None,
        "ss": [c.to_json() for c in ss.classes],
        "tensor": ss_decompose(desc).to_json(),
        "presentation": presentation_of(desc).to_json(),
        "morita_tag": morita_tag(desc).to_json(),
        "multiplicity": MULTIPLICITY,
    }
