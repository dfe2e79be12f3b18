"""
The affine Hecke algebra H(r, z) in its T-basis realization.

H(r, z) has basis ``T_w`` indexed by the extended affine Weyl group (see
:mod:`affinehecke.weyl`).  Right multiplication by a generator is

* ``T_x T_t = T_{x t}``;
* ``T_x T_{s_i} = T_{x s_i}`` when ``x s_i > x``;
* ``T_x T_{s_i} = z T_{x s_i} + (z - 1) T_x`` when ``x s_i < x``,

and a general product ``T_x T_y`` walks the reduced decomposition of ``y``.
The last rule is the quadratic relation ``T_s^2 = (z - 1) T_s + z``.

Coefficients live in one of two exact rings, fixed by the type of the
parameter: ``Rat`` (numeric mode) or
:class:`~affinehecke.coeff.RatFunc` (symbolic mode).  The symbolic ring may
carry any nonzero parameter, including the constant 1; that is how
``H(2, 1)`` is built over Q(v) for the isomorphism checks.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import product
from typing import Iterable, Iterator, Mapping, Union

from . import weyl
from .coeff import CoeffMode, Rat, RatFunc, format_rat, is_rat, to_rat
from .errors import ConfigMismatch, IndexOutOfRange, InvalidParameter, ModeMismatch, RankMismatch, ResourceLimit
from .weyl import Window

__all__ = [
    "HeckeConfig", "HeckeElement", "TensorElement", "RelationResult", "RelationReport",
    "unit", "zero", "gen", "basis", "scalar", "mul", "relation_check", "laurent_form",
    "from_laurent", "laurent_convolve", "specialize", "invert_monomial",
    "tensor_unit", "tensor_mul", "pure_tensor", "embed",
]

Coeff = Union[Rat, RatFunc]


@dataclass(frozen=True)
class HeckeConfig:
    rank: int
    param: Coeff

    def __post_init__(self):
        if not isinstance(self.rank, int) or self.rank < 1:
            raise InvalidParameter(f"rank must be a positive integer, got {self.rank!r}")
        param = self.param
        if is_rat(param):
            param = to_rat(param)
            object.__setattr__(self, "param", param)
        elif not isinstance(param, RatFunc):
            raise InvalidParameter(f"unsupported parameter {param!r}")
        if not param:
            raise InvalidParameter("the Hecke parameter must be nonzero")

    @classmethod
    def symbolic(cls, rank: int, param: Coeff | None = None) -> "HeckeConfig":
        """Coefficients in Q(v); the parameter defaults to ``v`` itself."""
        if param is None:
            param = RatFunc.v()
        elif not isinstance(param, RatFunc):
            param = RatFunc.const(param)
        return cls(rank, param)

    @classmethod
    def numeric(cls, rank: int, z) -> "HeckeConfig":
        return cls(rank, to_rat(z))

    @classmethod
    def from_mode(cls, rank: int, mode: CoeffMode) -> "HeckeConfig":
        return cls.symbolic(rank) if mode.symbolic else cls.numeric(rank, mode.value)

    @property
    def is_symbolic(self) -> bool:
        return isinstance(self.param, RatFunc)

    def coerce(self, c) -> Coeff:
        """Bring a scalar into this config's coefficient ring."""
        if self.is_symbolic:
            if isinstance(c, RatFunc):
                return c
            if is_rat(c):
                return RatFunc.const(c)
        else:
            if is_rat(c):
                return to_rat(c)
            if isinstance(c, RatFunc):
                if c.is_constant():
                    return c.constant_value()
                raise ModeMismatch(f"symbolic scalar {c} in numeric-mode algebra")
        raise TypeError(f"cannot use {c!r} as a coefficient")

    def same_ring(self, other: "HeckeConfig") -> bool:
        return self.is_symbolic == other.is_symbolic

    def __str__(self):
        p = str(self.param) if self.is_symbolic else format_rat(self.param)
        return f"H({self.rank}, {p})"


def _require_same(a: HeckeConfig, b: HeckeConfig) -> None:
    if a != b:
        raise ConfigMismatch(f"{a} and {b} differ")


class HeckeElement:
    """A finite linear combination of T-basis elements; immutable."""

    __slots__ = ("config", "terms", "_hash")

    def __init__(self, config: HeckeConfig, terms: Mapping[Window, Coeff] = ()):
        self.config = config
        clean = {}
        items = terms.items() if isinstance(terms, Mapping) else terms
        for w, c in items:
            w = tuple(w)
            if len(w) != config.rank:
                raise RankMismatch(f"window {w} has rank {len(w)}, expected {config.rank}")
            c = config.coerce(c)
            if c:
                clean[w] = clean[w] + c if w in clean else c
                if not clean[w]:
                    del clean[w]
        self.terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, config: HeckeConfig, terms: dict) -> "HeckeElement":
        # caller guarantees coerced, nonzero coefficients
        obj = cls.__new__(cls)
        obj.config = config
        obj.terms = terms
        obj._hash = None
        return obj

    def __iter__(self) -> Iterator[tuple[Window, Coeff]]:
        return iter(sorted(self.terms.items()))

    def __len__(self):
        return len(self.terms)

    def coeff(self, w: Window) -> Coeff:
        return self.terms.get(tuple(w), self.config.coerce(0))

    def is_zero(self) -> bool:
        return not self.terms

    def support(self) -> list[Window]:
        return sorted(self.terms)

    def max_length(self) -> int:
        return max((weyl.length(w) for w in self.terms), default=0)

    def __eq__(self, other):
        if not isinstance(other, HeckeElement):
            return NotImplemented
        return self.config == other.config and self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.config, frozenset(self.terms.items())))
        return self._hash

    def _scalar_or_element(self, other) -> "HeckeElement":
        if isinstance(other, HeckeElement):
            _require_same(self.config, other.config)
            return other
        return scalar(self.config, other)

    def __add__(self, other):
        other = self._scalar_or_element(other)
        out = dict(self.terms)
        for w, c in other.terms.items():
            if w in out:
                s = out[w] + c
                if s:
                    out[w] = s
                else:
                    del out[w]
            else:
                out[w] = c
        return HeckeElement._raw(self.config, out)

    __radd__ = __add__

    def __neg__(self):
        return HeckeElement._raw(self.config, {w: -c for w, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._scalar_or_element(other))

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c) -> "HeckeElement":
        c = self.config.coerce(c)
        if not c:
            return zero(self.config)
        return HeckeElement._raw(self.config, {w: c * x for w, x in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, HeckeElement):
            return mul(self, other)
        return self.scale(other)

    def __rmul__(self, other):
        return self.scale(other)

    def __pow__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        base = self
        if k < 0:
            base = invert_monomial(self)
            k = -k
        out = unit(self.config)
        for _ in range(k):
            out = mul(out, base)
        return out

    def to_json(self) -> list[dict]:
        return [{"window": list(w), "coeff": _coeff_text(c)} for w, c in sorted(self.terms.items())]

    @classmethod
    def from_json(cls, config: HeckeConfig, data: Iterable[Mapping]) -> "HeckeElement":
        from .parser import parse_scalar
        return cls(config, [(tuple(d["window"]), parse_scalar(d["coeff"], config)) for d in data])

    def __str__(self):
        from .parser import pretty
        return pretty(self)

    def __repr__(self):
        return f"<HeckeElement {self.config}: {self}>"


def _coeff_text(c: Coeff) -> str:
    return str(c) if isinstance(c, RatFunc) else format_rat(c)


# -- constructors -------------------------------------------------------------

def zero(config: HeckeConfig) -> HeckeElement:
    return HeckeElement._raw(config, {})


def basis(config: HeckeConfig, w: Window, c=1) -> HeckeElement:
    w = weyl.validate(w)
    if len(w) != config.rank:
        raise RankMismatch(f"window {w} has rank {len(w)}, expected {config.rank}")
    return HeckeElement(config, {w: c})


def unit(config: HeckeConfig) -> HeckeElement:
    return HeckeElement._raw(config, {weyl.identity(config.rank): config.coerce(1)})


def scalar(config: HeckeConfig, c) -> HeckeElement:
    return HeckeElement(config, {weyl.identity(config.rank): c})


def gen(config: HeckeConfig, which: Union[int, str]) -> HeckeElement:
    """``T_{s_i}`` for an index ``i``, or ``T_t`` / ``T_{t^-1}`` for ``"T"`` / ``"Tinv"``."""
    r = config.rank
    if which == 0:
        if r < 2:
            raise IndexOutOfRange(f"no generator s_0 at rank {r}")
        return mul(mul(gen(config, "T"), gen(config, 1)), gen(config, "Tinv"))
    return HeckeElement._raw(config, {weyl.generator(r, which): config.coerce(1)})


# -- multiplication -----------------------------------------------------------

def _right_mul_s(terms: dict, i: int, z, zm1) -> dict:
    out: dict = {}
    for x, c in terms.items():
        xs = weyl.right_mul_s(x, i)
        if weyl.right_descent(x, i):
            _acc(out, xs, z * c)
            if zm1:
                _acc(out, x, zm1 * c)
        else:
            _acc(out, xs, c)
    return out


def _acc(out: dict, w, c) -> None:
    if w in out:
        s = out[w] + c
        if s:
            out[w] = s
        else:
            del out[w]
    elif c:
        out[w] = c


@lru_cache(maxsize=1 << 18)
def _basis_product(config: HeckeConfig, x: Window, y: Window) -> tuple:
    """``T_x T_y`` as a tuple of ``(window, coeff, coeff_is_one)``."""
    dec = weyl.reduced_decomposition(y)
    start = weyl.compose(x, weyl.omega_element(config.rank, dec.omega_power))
    one = config.coerce(1)
    terms = {start: one}
    if dec.word:
        z = config.param
        zm1 = z - 1
        for i in dec.word:
            terms = _right_mul_s(terms, i, z, zm1)
    return tuple((w, c, c == one) for w, c in terms.items())


def mul(a: HeckeElement, b: HeckeElement) -> HeckeElement:
    _require_same(a.config, b.config)
    config = a.config
    out: dict = {}
    get = out.get
    for y, cy in b.terms.items():
        for x, cx in a.terms.items():
            c = cx * cy
            for w, cw, is_one in _basis_product(config, x, y):
                term = c if is_one else c * cw
                prev = get(w)
                if prev is None:
                    out[w] = term
                else:
                    out[w] = prev + term
    return HeckeElement._raw(config, {w: c for w, c in out.items() if c})


def invert_monomial(e: HeckeElement) -> HeckeElement:
    """Inverse of ``c T_w`` (c nonzero); every such element is a unit."""
    if len(e.terms) != 1:
        raise InvalidParameter("only single-term elements are inverted")
    config = e.config
    (w, c), = e.terms.items()
    dec = weyl.reduced_decomposition(w)
    zinv = 1 / config.param
    out = scalar(config, 1 / c)
    for i in reversed(dec.word):
        ts_inv = HeckeElement(config, {weyl.generator(config.rank, i): zinv,
                                       weyl.identity(config.rank): zinv - 1})
        out = mul(out, ts_inv)
    return mul(out, basis(config, weyl.omega_element(config.rank, -dec.omega_power)))


# -- relations ----------------------------------------------------------------

@dataclass
class RelationResult:
    name: str
    statement: str
    instances: list[str]
    failures: list[tuple[str, HeckeElement]]

    @property
    def passed(self) -> bool:
        return not self.failures

    def to_json(self) -> dict:
        return {
            "relation": self.name,
            "statement": self.statement,
            "instances": len(self.instances),
            "passed": self.passed,
            "failures": [{"instance": inst, "difference": diff.to_json()}
                         for inst, diff in self.failures],
        }


@dataclass
class RelationReport:
    config: HeckeConfig
    results: list[RelationResult]
    notes: list[str]

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.results)

    def to_json(self) -> dict:
        return {
            "rank": self.config.rank,
            "param": _coeff_text(self.config.param),
            "passed": self.passed,
            "relations": [r.to_json() for r in self.results],
            "notes": self.notes,
        }


def relation_check(config: HeckeConfig) -> RelationReport:
    """Evaluate every instance of the defining relations in the T-basis realization."""
    r = config.rank
    if r > weyl.MAX_RANK:
        raise ResourceLimit(f"relation check limited to rank <= {weyl.MAX_RANK}")
    z = config.param
    one = unit(config)
    t, tinv = gen(config, "T"), gen(config, "Tinv")
    s = {i: gen(config, i) for i in range(1, r)}

    def run(name, statement, cases):
        res = RelationResult(name, statement, [], [])
        for label, lhs, rhs in cases:
            res.instances.append(label)
            diff = lhs - rhs
            if not diff.is_zero():
                res.failures.append((label, diff))
        return res

    results = [run("R0", "t*t^-1 = 1 = t^-1*t",
                   [("t*t^-1", t * tinv, one), ("t^-1*t", tinv * t, one)])]
    notes = []
    if r == 1:
        notes.append("R1-R5 vacuous at rank 1")
    else:
        results.append(run("R1", "(s_i + 1)(s_i - z) = 0",
                           [(f"i={i}", (s[i] + 1) * (s[i] - z), zero(config)) for i in range(1, r)]))
        t2 = t * t
        results.append(run("R2", "t^2*s_1 = s_{r-1}*t^2",
                           [("i=1", t2 * s[1], s[r - 1] * t2)]))
        if r == 2:
            notes.append("R3-R5 vacuous at rank 2")
        results.append(run("R3", "t*s_i = s_{i-1}*t",
                           [(f"i={i}", t * s[i], s[i - 1] * t) for i in range(2, r)]))
        results.append(run("R4", "s_i*s_{i+1}*s_i = s_{i+1}*s_i*s_{i+1}",
                           [(f"i={i}", s[i] * s[i + 1] * s[i], s[i + 1] * s[i] * s[i + 1])
                            for i in range(1, r - 1)]))
        results.append(run("R5", "s_i*s_j = s_j*s_i for |i-j| >= 2",
                           [(f"i={i},j={j}", s[i] * s[j], s[j] * s[i])
                            for i in range(1, r) for j in range(1, r) if abs(i - j) >= 2]))
    return RelationReport(config, results, notes)


# -- rank one -----------------------------------------------------------------

def laurent_form(a: HeckeElement) -> dict[int, Coeff]:
    """Exponent -> coefficient, with ``T_w`` sent to the Omega-degree of ``w``."""
    if a.config.rank != 1:
        raise RankMismatch("laurent_form needs a rank-1 element")
    return {weyl.omega_degree(w): c for w, c in a.terms.items()}


def from_laurent(config: HeckeConfig, poly: Mapping[int, Coeff]) -> HeckeElement:
    if config.rank != 1:
        raise RankMismatch("from_laurent needs a rank-1 config")
    return HeckeElement(config, {(1 + k,): c for k, c in poly.items()})


def laurent_convolve(p: Mapping[int, Coeff], q: Mapping[int, Coeff]) -> dict[int, Coeff]:
    out: dict = {}
    for i, a in p.items():
        for j, b in q.items():
            _acc(out, i + j, a * b)
    return out


# -- specialization -----------------------------------------------------------

def specialize(a: HeckeElement, z) -> HeckeElement:
    """Evaluate every coefficient (and the parameter) of a symbolic element at ``v = z``."""
    if not a.config.is_symbolic:
        raise ModeMismatch("specialize expects a symbolic-mode element")
    z = to_rat(z)
    config = HeckeConfig.numeric(a.config.rank, a.config.param(z))
    return HeckeElement(config, {w: c(z) for w, c in a.terms.items()})


# -- tensor products ----------------------------------------------------------

class TensorElement:
    """An element of a tensor product of affine Hecke algebras over a common coefficient ring."""

    __slots__ = ("factors", "terms")

    def __init__(self, factors: Iterable[HeckeConfig], terms: Mapping[tuple, Coeff] = ()):
        self.factors = tuple(factors)
        if not self.factors:
            raise InvalidParameter("a tensor product needs at least one factor")
        ring0 = self.factors[0]
        if any(not f.same_ring(ring0) for f in self.factors):
            raise ModeMismatch("tensor factors must share a coefficient ring")
        clean: dict = {}
        items = terms.items() if isinstance(terms, Mapping) else terms
        for key, c in items:
            key = tuple(tuple(w) for w in key)
            if len(key) != len(self.factors):
                raise RankMismatch("tensor key arity differs from the number of factors")
            for w, f in zip(key, self.factors):
                if len(w) != f.rank:
                    raise RankMismatch(f"window {w} does not match factor {f}")
            _acc(clean, key, ring0.coerce(c))
        self.terms = clean

    def __eq__(self, other):
        if not isinstance(other, TensorElement):
            return NotImplemented
        return self.factors == other.factors and self.terms == other.terms

    def __hash__(self):
        return hash((self.factors, frozenset(self.terms.items())))

    def __add__(self, other: "TensorElement") -> "TensorElement":
        if self.factors != other.factors:
            raise ConfigMismatch("tensor factor lists differ")
        out = dict(self.terms)
        for k, c in other.terms.items():
            _acc(out, k, c)
        return TensorElement(self.factors, out)

    def __mul__(self, other):
        if isinstance(other, TensorElement):
            return tensor_mul(self, other)
        return NotImplemented

    def is_zero(self) -> bool:
        return not self.terms

    def __repr__(self):
        return f"<TensorElement {' (x) '.join(map(str, self.factors))}: {len(self.terms)} terms>"


def tensor_unit(factors: Iterable[HeckeConfig]) -> TensorElement:
    factors = tuple(factors)
    key = tuple(weyl.identity(f.rank) for f in factors)
    return TensorElement(factors, {key: 1})


def pure_tensor(elements: Iterable[HeckeElement]) -> TensorElement:
    elements = list(elements)
    factors = tuple(e.config for e in elements)
    terms: dict = {}
    for combo in product(*(list(e.terms.items()) for e in elements)):
        c = combo[0][1]
        for _, ci in combo[1:]:
            c = c * ci
        _acc(terms, tuple(w for w, _ in combo), c)
    return TensorElement(factors, terms)


def embed(a: HeckeElement, position: int, factors: Iterable[HeckeConfig]) -> TensorElement:
    """``1 (x) ... (x) a (x) ... (x) 1`` with ``a`` in slot ``position``."""
    factors = tuple(factors)
    if factors[position] != a.config:
        raise ConfigMismatch(f"slot {position} is {factors[position]}, not {a.config}")
    parts = [unit(f) for f in factors]
    parts[position] = a
    return pure_tensor(parts)


def tensor_mul(a: TensorElement, b: TensorElement) -> TensorElement:
    if a.factors != b.factors:
        raise ConfigMismatch("tensor factor lists differ")
    out: dict = {}
    for kx, cx in a.terms.items():
        for ky, cy in b.terms.items():
            partial = {(): cx * cy}
            for f, x, y in zip(a.factors, kx, ky):
                step: dict = {}
                prod_terms = _basis_product(f, x, y)
                for key, c in partial.items():
                    for w, cw, _ in prod_terms:
                        _acc(step, key + (w,), c * cw)
                partial = step
            for key, c in partial.items():
                _acc(out, key, c)
    return TensorElement(a.factors, out)
