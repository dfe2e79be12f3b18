"""
Reducibility and kinds of irreducible representations of GL_2(D).

A cuspidal representation of GL_1(D) is described up to twist by an opaque
label, its segment length ``a`` and torsion number ``n``.  An unramified twist
is split into a real exponent ``twist_r`` (the twist ``|.|^{twist_r/d}``) and
an angle ``twist_theta`` in [0, 1).  Twisting by a character of order dividing
``n`` fixes the representation, so angles are compared modulo ``1/n``.

``sigma1 x sigma2`` is reducible exactly when ``sigma2`` is equivalent to
``sigma1`` twisted by ``+a`` or ``-a``; its two constituents are then labelled
St and Sp of the midpoint twist.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from typing import Optional, Union

from .coeff import Rat, format_rat, to_rat
from .errors import AmbiguousConstituent, InconsistentLabels, InvalidDescriptor, NotReducible

__all__ = [
    "TwistedCuspidalD", "Cuspidal", "Induced", "OneDimensional", "Constituents",
    "equivalent", "twist", "reducibility", "reducing_branch", "constituents",
    "classify_kind", "check_reducibility_consistency", "rep_from_json", "classify_report",
]


@dataclass(frozen=True)
class TwistedCuspidalD:
    label: str
    a: int
    torsion: int
    twist_r: Rat = to_rat(0)
    twist_theta: Rat = to_rat(0)

    def __post_init__(self):
        if self.a < 1:
            raise InvalidDescriptor(f"segment length a = {self.a} must be >= 1")
        if self.torsion < 1:
            raise InvalidDescriptor(f"torsion number {self.torsion} must be >= 1")
        object.__setattr__(self, "twist_r", to_rat(self.twist_r))
        theta = to_rat(self.twist_theta)
        # angles live in R/Z; store the representative in [0, 1)
        object.__setattr__(self, "twist_theta", theta - (theta.numerator // theta.denominator))

    def to_json(self) -> dict:
        return {"label": self.label, "a": self.a, "torsion": self.torsion,
                "r": format_rat(self.twist_r), "theta": format_rat(self.twist_theta)}


@dataclass(frozen=True)
class Cuspidal:
    label: str


@dataclass(frozen=True)
class Induced:
    sigma1: TwistedCuspidalD
    sigma2: TwistedCuspidalD
    d: int = 1


@dataclass(frozen=True)
class OneDimensional:
    character_label: str


Gl2RepDescriptor = Union[Cuspidal, Induced, OneDimensional]


def _check_labels(s1: TwistedCuspidalD, s2: TwistedCuspidalD) -> None:
    if s1.label == s2.label and (s1.a, s1.torsion) != (s2.a, s2.torsion):
        raise InconsistentLabels(f"label {s1.label!r} carries unequal (a, torsion)")


def equivalent(s1: TwistedCuspidalD, s2: TwistedCuspidalD) -> bool:
    if s1.label != s2.label or s1.twist_r != s2.twist_r:
        return False
    _check_labels(s1, s2)
    return ((s1.twist_theta - s2.twist_theta) * s1.torsion).denominator == 1


def twist(s: TwistedCuspidalD, x) -> TwistedCuspidalD:
    return replace(s, twist_r=s.twist_r + to_rat(x))


def reducing_branch(s1: TwistedCuspidalD, s2: TwistedCuspidalD) -> Optional[str]:
    """``"+"`` or ``"-"`` for the sign of the twist carrying ``s1`` to ``s2``, else None."""
    if equivalent(s2, twist(s1, s1.a)):
        return "+"
    if equivalent(s2, twist(s1, -s1.a)):
        return "-"
    return None


def reducibility(s1: TwistedCuspidalD, s2: TwistedCuspidalD) -> bool:
    return reducing_branch(s1, s2) is not None


@dataclass(frozen=True)
class Constituents:
    """St and Sp of the midpoint ``sigma0``; ``branch`` records which sign reduced."""
    sigma0: TwistedCuspidalD
    branch: str

    def to_json(self) -> dict:
        mid = self.sigma0.to_json()
        return {"St": {"kind": "St", "sigma0": mid}, "Sp": {"kind": "Sp", "sigma0": mid},
                "branch": self.branch}


def constituents(s1: TwistedCuspidalD, s2: TwistedCuspidalD) -> Constituents:
    branch = reducing_branch(s1, s2)
    if branch is None:
        raise NotReducible("the induced representation is irreducible")
    half = to_rat(s1.a) / 2
    return Constituents(twist(s1, half if branch == "+" else -half), branch)


def classify_kind(rep: Gl2RepDescriptor, constituent: Optional[str] = None) -> str:
    """
    ``"I"``, ``"II"``, ``"III"``, ``"IV-St"`` or ``"IV-Sp"``.

    For a reducible induced pair, ``constituent`` picks the piece: ``"quotient"``
    is the unique irreducible quotient of ``s1 x s2`` and ``"sub"`` the unique
    subrepresentation.  On the ``+`` branch (``s2 = s1 |.|^{a/d}``) the quotient
    is St; on the ``-`` branch the order is reversed, so the quotient is Sp.
    """
    if isinstance(rep, Cuspidal):
        return "I"
    if isinstance(rep, OneDimensional):
        return "III"
    if not isinstance(rep, Induced):
        raise InvalidDescriptor(f"unknown representation descriptor {rep!r}")
    branch = reducing_branch(rep.sigma1, rep.sigma2)
    if branch is None:
        return "II"
    if constituent is None:
        raise AmbiguousConstituent("reducible pair: choose 'quotient' or 'sub', or call constituents")
    if constituent not in ("quotient", "sub"):
        raise InvalidDescriptor(f"constituent must be 'quotient' or 'sub', got {constituent!r}")
    is_st = (constituent == "quotient") == (branch == "+")
    return "IV-St" if is_st else "IV-Sp"


def check_reducibility_consistency(reducibility_number, sigma: TwistedCuspidalD) -> None:
    """Strict-mode check that a reducibility number recorded elsewhere equals ``a``."""
    if to_rat(reducibility_number) != sigma.a:
        raise InconsistentLabels(
            f"label {sigma.label!r}: reducibility number {format_rat(to_rat(reducibility_number))} "
            f"differs from segment length {sigma.a}")


# -- JSON surface -------------------------------------------------------------

_SIGMA = {
    "type": "object",
    "required": ["label", "a", "torsion"],
    "additionalProperties": False,
    "properties": {
        "label": {"type": "string"},
        "a": {"type": "integer", "minimum": 1},
        "torsion": {"type": "integer", "minimum": 1},
        "r": {"type": ["string", "integer"]},
        "theta": {"type": ["string", "integer"]},
    },
}

REP_SCHEMA = {
    "oneOf": [
        {"type": "object", "required": ["d", "sigma1", "sigma2"], "additionalProperties": False,
         "properties": {"d": {"type": "integer", "minimum": 1}, "sigma1": _SIGMA, "sigma2": _SIGMA,
                        "constituent": {"enum": ["quotient", "sub"]}}},
        {"type": "object", "required": ["cuspidal"], "additionalProperties": False,
         "properties": {"d": {"type": "integer", "minimum": 1},
                        "cuspidal": {"type": "object", "required": ["label"],
                                     "properties": {"label": {"type": "string"}}}}},
        {"type": "object", "required": ["one_dimensional"], "additionalProperties": False,
         "properties": {"d": {"type": "integer", "minimum": 1},
                        "one_dimensional": {"type": "object", "required": ["character"],
                                            "properties": {"character": {"type": "string"}}}}},
    ]
}


def _sigma_from_json(d: dict) -> TwistedCuspidalD:
    try:
        return TwistedCuspidalD(d["label"], d["a"], d["torsion"],
                                to_rat(d.get("r", 0)), to_rat(d.get("theta", 0)))
    except (ValueError, ZeroDivisionError) as exc:
        raise InvalidDescriptor(str(exc)) from exc


def rep_from_json(data: dict) -> tuple[Gl2RepDescriptor, Optional[str]]:
    import jsonschema

    try:
        jsonschema.validate(data, REP_SCHEMA)
    except jsonschema.ValidationError as exc:
        raise InvalidDescriptor(f"schema violation: {exc.message}") from exc
    if "cuspidal" in data:
        return Cuspidal(data["cuspidal"]["label"]), None
    if "one_dimensional" in data:
        return OneDimensional(data["one_dimensional"]["character"]), None
    rep = Induced(_sigma_from_json(data["sigma1"]), _sigma_from_json(data["sigma2"]), data["d"])
    _check_labels(rep.sigma1, rep.sigma2)
    return rep, data.get("constituent")


def classify_report(rep: Gl2RepDescriptor, constituent: Optional[str] = None) -> dict:
    if not isinstance(rep, Induced):
        return {"reducible": False, "kind": classify_kind(rep)}
    if not reducibility(rep.sigma1, rep.sigma2):
        return {"reducible": False, "kind": "II"}
    out = {"reducible": True,
           "kind": classify_kind(rep, constituent) if constituent else "IV",
           "constituents": constituents(rep.sigma1, rep.sigma2).to_json()}
    return out
