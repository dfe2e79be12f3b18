"""
The rank-two isomorphism H(2, z) ~ H(2, 1) for z != -1.

``phi`` sends H(2, z) to H(2, 1) by

    T_s  ->  (z+1)/2 * T_s + (z-1)/2,        T_t -> T_t,

and ``psi`` is its inverse H(2, 1) -> H(2, z),

    T_s  ->  (2 T_s - (z-1)) / (z+1),        T_t -> T_t.

Expanding with ``T_s^2 = 1`` shows the image of ``T_s`` under ``phi``
satisfies the z-quadratic relation, so the displayed formula naturally defines
a map *into* H(2, 1).  Both directions are built and checked here; the report
header records which is which.

A map is extended from generators to the whole algebra along reduced
decompositions (``T_{s_0}`` is routed through ``T_t T_{s_1} T_t^{-1}``).
Multiplicativity of the extension is checked, not assumed.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from . import weyl
from .coeff import CoeffMode, RatFunc, format_rat
from .errors import ConfigMismatch, InvalidParameter
from .hecke import (HeckeConfig, HeckeElement, _basis_product, basis, gen, invert_monomial,
                    mul, scalar, unit)

__all__ = ["GeneratorAssignment", "IsoReport", "phi", "psi", "apply", "verify_isomorphism",
           "DIRECTION_NOTE"]

DIRECTION_NOTE = (
    "phi: H(2,z) -> H(2,1), T_s -> ((z+1)/2) T_s + (z-1)/2; "
    "psi: H(2,1) -> H(2,z), T_s -> (2 T_s - (z-1))/(z+1). "
    "The formula s -> ((z+1)/2) s + (z-1)/2 satisfies the z-quadratic only inside H(2,1), "
    "so it is implemented as phi; psi is its inverse. Both are verified."
)


@dataclass(eq=False)
class GeneratorAssignment:
    source: HeckeConfig
    target: HeckeConfig
    image_of_s: HeckeElement
    image_of_t: HeckeElement
    _cache: dict = field(default_factory=dict, repr=False)

    def __post_init__(self):
        if self.source.rank != 2 or self.target.rank != 2:
            raise InvalidParameter("generator assignments are defined for rank 2")
        if not self.source.same_ring(self.target):
            raise ConfigMismatch("source and target must share a coefficient ring")
        if self.image_of_s.config != self.target or self.image_of_t.config != self.target:
            raise ConfigMismatch("generator images must lie in the target algebra")
        if len(self.image_of_t.terms) != 1:
            raise InvalidParameter("image of t must be a single-term unit")
        (w, _), = self.image_of_t.terms.items()
        if weyl.length(w) != 0:
            raise InvalidParameter("image of t must be a length-zero basis element")
        z = self.target.coerce(self.source.param)
        s = self.image_of_s
        if mul(s, s) != s.scale(z - 1) + scalar(self.target, z):
            raise InvalidParameter("image of s violates the source quadratic relation")
        self._t_inv = invert_monomial(self.image_of_t)
        t_s1 = mul(self.image_of_t, s)
        self._s0 = mul(t_s1, self._t_inv)

    def image_of_basis(self, w: weyl.Window) -> HeckeElement:
        """Image of ``T_w``, memoized; built by peeling the last letter of a reduced word."""
        hit = self._cache.get(w)
        if hit is not None:
            return hit
        ds = weyl.right_descents(w)
        if ds:
            i = ds[0]
            prev = self.image_of_basis(weyl.right_mul_s(w, i))
            out = mul(prev, self._s0 if i == 0 else self.image_of_s)
        else:
            k = -weyl.omega_degree(w)
            out = unit(self.target)
            step = self.image_of_t if k > 0 else self._t_inv
            for _ in range(abs(k)):
                out = mul(out, step)
        self._cache[w] = out
        return out


def _check_mode(mode: CoeffMode) -> None:
    if not mode.symbolic and mode.value == -1:
        raise InvalidParameter("the isomorphism requires z + 1 != 0 (got z = -1)")


def _rank_two_pair(mode: CoeffMode) -> tuple[HeckeConfig, HeckeConfig]:
    """(H(2, z), H(2, 1)) over the ring matching ``mode``."""
    if mode.symbolic:
        return HeckeConfig.symbolic(2), HeckeConfig.symbolic(2, 1)
    return HeckeConfig.numeric(2, mode.value), HeckeConfig.numeric(2, 1)


def phi(mode: CoeffMode) -> GeneratorAssignment:
    """H(2, z) -> H(2, 1)."""
    _check_mode(mode)
    hz, h1 = _rank_two_pair(mode)
    z = hz.param
    image_s = gen(h1, 1).scale((z + 1) / 2) + scalar(h1, (z - 1) / 2)
    return GeneratorAssignment(hz, h1, image_s, gen(h1, "T"))


def psi(mode: CoeffMode) -> GeneratorAssignment:
    """H(2, 1) -> H(2, z)."""
    _check_mode(mode)
    hz, h1 = _rank_two_pair(mode)
    z = hz.param
    inv = 1 / (z + 1)
    image_s = gen(hz, 1).scale(2 * inv) - scalar(hz, (z - 1) * inv)
    return GeneratorAssignment(h1, hz, image_s, gen(hz, "T"))


def apply(assign: GeneratorAssignment, x: HeckeElement) -> HeckeElement:
    if x.config != assign.source:
        raise ConfigMismatch(f"element of {x.config} given to a map from {assign.source}")
    target = assign.target
    out = HeckeElement._raw(target, {})
    for w, c in x.terms.items():
        out = out + assign.image_of_basis(w).scale(target.coerce(c))
    return out


def _apply_basis_product(assign: GeneratorAssignment, x, y) -> HeckeElement:
    target = assign.target
    acc: dict = {}
    for w, c, _ in _basis_product(assign.source, x, y):
        c = target.coerce(c)
        for u, cu in assign.image_of_basis(w).terms.items():
            prev = acc.get(u)
            s = c * cu if prev is None else prev + c * cu
            if s:
                acc[u] = s
            else:
                acc.pop(u, None)
    return HeckeElement._raw(target, acc)


def _ball_tree(ball) -> list[tuple]:
    """(y, parent, step) with ``T_y = T_parent * T_step`` and ``parent`` listed before ``y``."""
    out = []
    for y in sorted(ball, key=lambda w: (weyl.length(w), abs(weyl.omega_degree(w)), w)):
        ds = weyl.right_descents(y)
        if ds:
            out.append((y, weyl.right_mul_s(y, ds[0]), ds[0]))
            continue
        k = -weyl.omega_degree(y)
        if k > 0:
            out.append((y, weyl.omega_element(2, k - 1), "t"))
        elif k < 0:
            out.append((y, weyl.omega_element(2, k + 1), "tinv"))
    return out


@dataclass
class IsoReport:
    param: str
    max_len: int
    ball_size: int
    checked_pairs: int = 0
    failures: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures

    def to_json(self) -> dict:
        return {
            "header": DIRECTION_NOTE,
            "param": self.param,
            "max_len": self.max_len,
            "ball_size": self.ball_size,
            "checked_pairs": self.checked_pairs,
            "passed": self.passed,
            "failures": self.failures,
        }


def verify_isomorphism(mode: CoeffMode, max_len: int) -> IsoReport:
    """
    Check both maps on the rank-2 ball of radius ``max_len``.

    Covers multiplicativity of ``phi`` and ``psi`` on every ordered pair of ball
    elements and the two round trips on every ball element.  The quadratic
    checks on the generator images run when the assignments are built.
    """
    _check_mode(mode)
    weyl.check_guard(2, max_len)
    f, g = phi(mode), psi(mode)
    ball = sorted(weyl.bfs_ball(2, max_len))
    report = IsoReport(str(mode), max_len, len(ball))

    tree = _ball_tree(ball)
    for name, assign in (("phi", f), ("psi", g)):
        steps = {"t": assign.image_of_t, "tinv": assign._t_inv, 0: assign._s0}
        steps.update({i: assign.image_of_s for i in range(1, 2)})
        for x in ball:
            # image(x) * image(y), extended one generator at a time along the ball tree
            row = {weyl.identity(2): assign.image_of_basis(x)}
            for y, parent, step in tree:
                row[y] = mul(row[parent], steps[step])
            for y in ball:
                lhs = _apply_basis_product(assign, x, y)
                report.checked_pairs += 1
                if lhs != row[y]:
                    report.failures.append({"check": f"{name} multiplicative",
                                            "x": list(x), "y": list(y)})

    for name, first, second in (("psi.phi", f, g), ("phi.psi", g, f)):
        for w in ball:
            back = apply(second, first.image_of_basis(w))
            if back != basis(first.source, w):
                report.failures.append({"check": f"{name} round trip", "x": list(w)})
    return report
