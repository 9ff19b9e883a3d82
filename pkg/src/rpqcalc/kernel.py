"""Deformation systems and exact deformed numbers.

An :class:`AlgebraSpec` fixes one R(p, q)-deformation: either one of the
five builtin quantum algebras or a user supplied rational function
``R(x, y)``.  Builtin kinds also carry their structure functions
``eps1, eps2`` and a prefactor ``kappa`` such that

    [n] = kappa * (eps1**n - eps2**n) / (eps1 - eps2)

for every integer ``n``.  All parameters are exact rationals.
"""

from __future__ import annotations

import ast
import configparser
import enum
import operator
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Iterable, Optional, Union

from .errors import ConfigurationError, EvaluationError, ParameterDomainError, PoleError

Rational = Union[int, str, Fraction]


class Kind(str, enum.Enum):
    ARIK_COON = "ArikCoon"
    BIEDENHARN_MACFARLANE = "BiedenharnMacfarlane"
    JAGANNATHAN_SRINIVASA = "JagannathanSrinivasa"
    CHAKRABARTI_JAGANNATHAN = "ChakrabartiJagannathan"
    QUESNE = "Quesne"
    GENERIC_R = "GenericR"

    @property
    def one_parameter(self) -> bool:
        return self in (Kind.ARIK_COON, Kind.BIEDENHARN_MACFARLANE)

    @property
    def builtin(self) -> bool:
        return self is not Kind.GENERIC_R


_ALIASES = {
    "ac": Kind.ARIK_COON,
    "arikcoon": Kind.ARIK_COON,
    "bm": Kind.BIEDENHARN_MACFARLANE,
    "biedenharnmacfarlane": Kind.BIEDENHARN_MACFARLANE,
    "js": Kind.JAGANNATHAN_SRINIVASA,
    "jagannathansrinivasa": Kind.JAGANNATHAN_SRINIVASA,
    "cj": Kind.CHAKRABARTI_JAGANNATHAN,
    "chakrabartijagannathan": Kind.CHAKRABARTI_JAGANNATHAN,
    "quesne": Kind.QUESNE,
    "q": Kind.QUESNE,
    "generic": Kind.GENERIC_R,
    "genericr": Kind.GENERIC_R,
}


def as_kind(kind: Union[str, Kind]) -> Kind:
    if isinstance(kind, Kind):
        return kind
    key = str(kind).replace("-", "").replace("_", "").replace(" ", "").lower()
    try:
        return _ALIASES[key]
    except KeyError:
        raise ConfigurationError(f"unknown algebra kind {kind!r}") from None


def as_fraction(value: Rational) -> Fraction:
    """Convert ints, ``"num/den"`` strings, decimals and Fractions exactly."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise ParameterDomainError(f"not a rational number: {value!r}")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, float):
        return Fraction(repr(value))
    try:
        return Fraction(str(value).strip())
    except (ValueError, ZeroDivisionError):
        raise ParameterDomainError(f"not a rational number: {value!r}") from None


# --------------------------------------------------------------------------
# rational expressions for GenericR


_BINOPS = {
    ast.Add: operator.add,
    ast.Sub: operator.sub,
    ast.Mult: operator.mul,
    ast.Div: operator.truediv,
}
_SYMBOLS = ("x", "y", "p", "q")


class RationalExpression:
    """A rational expression in ``x, y, p, q`` evaluated exactly.

    ``^`` is accepted as exponentiation; exponents must be integer literals.
    """

    def __init__(self, text: str):
        self.text = text.strip()
        try:
            tree = ast.parse(self.text.replace("^", "**"), mode="eval")
        except SyntaxError as exc:
            raise ConfigurationError(f"cannot parse r_expr {text!r}: {exc.msg}") from None
        self._check(tree.body)
        self._tree = tree.body

    def _check(self, node):
        if isinstance(node, ast.BinOp):
            if isinstance(node.op, ast.Pow):
                self._check(node.left)
                if _int_literal(node.right) is None:
                    raise ConfigurationError("r_expr exponents must be integer literals")
                return
            if type(node.op) not in _BINOPS:
                raise ConfigurationError(f"operator not allowed in r_expr: {type(node.op).__name__}")
            self._check(node.left)
            self._check(node.right)
        elif isinstance(node, ast.UnaryOp) and isinstance(node.op, (ast.USub, ast.UAdd)):
            self._check(node.operand)
        elif isinstance(node, ast.Constant) and isinstance(node.value, int):
            return
        elif isinstance(node, ast.Name) and node.id in _SYMBOLS:
            return
        else:
            raise ConfigurationError(f"token not allowed in r_expr: {ast.dump(node)}")

    def __call__(self, **values: Fraction) -> Fraction:
        return self._eval(self._tree, values)

    def _eval(self, node, env):
        if isinstance(node, ast.BinOp):
            left = self._eval(node.left, env)
            if isinstance(node.op, ast.Pow):
                exp = _int_literal(node.right)
                if left == 0 and exp < 0:
                    raise PoleError("zero raised to a negative power in r_expr")
                return left**exp
            right = self._eval(node.right, env)
            if isinstance(node.op, ast.Div) and right == 0:
                raise PoleError("division by zero in r_expr")
            return _BINOPS[type(node.op)](left, right)
        if isinstance(node, ast.UnaryOp):
            val = self._eval(node.operand, env)
            return -val if isinstance(node.op, ast.USub) else val
        if isinstance(node, ast.Constant):
            return Fraction(node.value)
        return env[node.id]

    def __repr__(self):
        return f"RationalExpression({self.text!r})"


def _int_literal(node) -> Optional[int]:
    if isinstance(node, ast.Constant) and isinstance(node.value, int):
        return node.value
    if isinstance(node, ast.UnaryOp) and isinstance(node.op, ast.USub):
        inner = _int_literal(node.operand)
        return None if inner is None else -inner
    return None


# --------------------------------------------------------------------------
# algebra specs


@dataclass(frozen=True)
class AlgebraSpec:
    """An immutable deformation system.

    ``eps1``, ``eps2`` and ``kappa`` are ``None`` for :attr:`Kind.GENERIC_R`.
    For one-parameter kinds ``p`` is fixed to 1; it only enters through
    ratios such as ``q/p`` in the special-function layer.
    """

    kind: Kind
    p: Fraction
    q: Fraction
    tau: Fraction = Fraction(1)
    eps1: Optional[Fraction] = None
    eps2: Optional[Fraction] = None
    kappa: Optional[Fraction] = None
    r_expr: Optional[str] = None
    _compiled: Optional[RationalExpression] = field(default=None, compare=False, repr=False)

    @property
    def eps_form(self) -> bool:
        return self.eps1 is not None

    def require_eps_form(self, what: str = "this operation") -> None:
        if not self.eps_form:
            raise ConfigurationError(f"{what} needs structure functions; {self.kind.value} has none")

    def number(self, n: int) -> Fraction:
        return deformed_number(self, n)

    def digest(self) -> str:
        parts = [f"kind={self.kind.value}", f"p={self.p}", f"q={self.q}", f"tau={self.tau}"]
        if self.r_expr is not None:
            parts.append(f"r_expr={self.r_expr}")
        return ";".join(parts)


def _structure(kind: Kind, p: Fraction, q: Fraction):
    if kind is Kind.ARIK_COON:
        return q, Fraction(1), Fraction(1)
    if kind is Kind.BIEDENHARN_MACFARLANE:
        return q, 1 / q, Fraction(1)
    if kind is Kind.JAGANNATHAN_SRINIVASA:
        return p, q, Fraction(1)
    if kind is Kind.CHAKRABARTI_JAGANNATHAN:
        return 1 / p, q, Fraction(1)
    if kind is Kind.QUESNE:
        return p, 1 / q, p / q
    return None, None, None


def make_algebra(
    kind: Union[str, Kind],
    p: Optional[Rational] = None,
    q: Optional[Rational] = None,
    tau: Rational = 1,
    r_expr: Optional[str] = None,
) -> AlgebraSpec:
    """Build and validate an :class:`AlgebraSpec`.

    >>> make_algebra("JagannathanSrinivasa", "1/2", "1/3").eps2
    Fraction(1, 3)
    """
    kind = as_kind(kind)
    if q is None:
        raise ParameterDomainError("q is required")
    q = as_fraction(q)
    tau = as_fraction(tau)
    if kind.one_parameter:
        p = Fraction(1) if p is None else as_fraction(p)
        if not 0 < q < 1:
            raise ParameterDomainError(f"{kind.value} requires 0 < q < 1, got q={q}")
        if p <= 0:
            raise ParameterDomainError(f"p must be positive, got p={p}")
    else:
        if p is None:
            raise ParameterDomainError(f"{kind.value} requires p")
        p = as_fraction(p)
        if not 0 < q < p < 1:
            raise ParameterDomainError(f"{kind.value} requires 0 < q < p < 1, got p={p}, q={q}")
    if tau <= 0:
        raise ParameterDomainError(f"tau must be positive, got tau={tau}")

    if kind is Kind.GENERIC_R:
        if not r_expr:
            raise ConfigurationError("GenericR requires r_expr")
        compiled = RationalExpression(r_expr)
        return AlgebraSpec(kind, p, q, tau, r_expr=compiled.text, _compiled=compiled)
    if r_expr is not None:
        raise ConfigurationError(f"builtin kind {kind.value} does not take r_expr")
    eps1, eps2, kappa = _structure(kind, p, q)
    if eps1 == eps2:
        raise ParameterDomainError("structure functions coincide")
    return AlgebraSpec(kind, p, q, tau, eps1, eps2, kappa)


def powered(spec: AlgebraSpec, a: int) -> AlgebraSpec:
    """The algebra at parameters ``(p**a, q**a)`` with ``tau**a``."""
    if not isinstance(a, int) or a < 1:
        raise ParameterDomainError(f"power a must be a positive integer, got {a!r}")
    if a == 1:
        return spec
    p = spec.p**a
    if spec.kind.one_parameter and spec.p == 1:
        return make_algebra(spec.kind, None, spec.q**a, spec.tau**a)
    return make_algebra(spec.kind, p, spec.q**a, spec.tau**a, spec.r_expr)


# --------------------------------------------------------------------------
# numbers


def _textbook_number(spec: AlgebraSpec, n: int) -> Fraction:
    p, q, k = spec.p, spec.q, spec.kind
    if k is Kind.ARIK_COON:
        return (q**n - 1) / (q - 1)
    if k is Kind.BIEDENHARN_MACFARLANE:
        return (q**n - q**-n) / (q - 1 / q)
    if k is Kind.JAGANNATHAN_SRINIVASA:
        return (p**n - q**n) / (p - q)
    if k is Kind.CHAKRABARTI_JAGANNATHAN:
        return (p**-n - q**n) / (1 / p - q)
    if k is Kind.QUESNE:
        return (p**n - q**-n) / (q - 1 / p)
    raise AssertionError(k)


def epsform_number(spec: AlgebraSpec, n: int) -> Fraction:
    """``kappa (eps1**n - eps2**n) / (eps1 - eps2)``."""
    spec.require_eps_form("epsform_number")
    return spec.kappa * (spec.eps1**n - spec.eps2**n) / (spec.eps1 - spec.eps2)


def deformed_number(spec: AlgebraSpec, n: int) -> Fraction:
    """The deformed number ``[n] = R(p**n, q**n)``; negative ``n`` allowed."""
    if spec.kind.builtin:
        return _textbook_number(spec, n)
    env = {"x": spec.p**n, "y": spec.q**n, "p": spec.p, "q": spec.q}
    try:
        return spec._compiled(**env)
    except PoleError as exc:
        raise PoleError(f"R(p^n, q^n) has a pole at n={n}: {exc}") from None


def deformed_factorial(spec: AlgebraSpec, n: int) -> Fraction:
    if n < 0:
        raise ParameterDomainError(f"factorial needs n >= 0, got {n}")
    out = Fraction(1)
    for i in range(1, n + 1):
        out *= deformed_number(spec, i)
    return out


def deformed_binomial(spec: AlgebraSpec, m: int, n: int) -> Fraction:
    if not m >= n >= 0:
        raise ParameterDomainError(f"binomial needs m >= n >= 0, got m={m}, n={n}")
    den = deformed_factorial(spec, n) * deformed_factorial(spec, m - n)
    if den == 0:
        raise EvaluationError(f"vanishing factorial in binomial ({m} choose {n})")
    return deformed_factorial(spec, m) / den


@dataclass(frozen=True)
class ConsistencyRow:
    n: int
    number: Fraction
    eps_form: Fraction

    @property
    def passed(self) -> bool:
        return self.number == self.eps_form


def structure_consistency(spec: AlgebraSpec, degrees: Iterable[int]) -> list[ConsistencyRow]:
    """Compare the textbook number with its structure-function form per degree."""
    if not spec.kind.builtin:
        raise ConfigurationError("structure_consistency applies to builtin kinds only")
    return [ConsistencyRow(n, deformed_number(spec, n), epsform_number(spec, n)) for n in degrees]


def generic_probe(spec: AlgebraSpec, degrees: Iterable[int]) -> dict:
    """Check ``R(1,1) = 0`` and positivity of ``[n]`` on a probe range (GenericR)."""
    if spec.kind.builtin:
        raise ConfigurationError("generic_probe applies to GenericR only")
    try:
        r11 = spec._compiled(x=Fraction(1), y=Fraction(1), p=spec.p, q=spec.q)
    except PoleError:
        r11 = None
    positive = {}
    for n in degrees:
        if n <= 0:
            continue
        try:
            positive[n] = deformed_number(spec, n) > 0
        except PoleError:
            positive[n] = False
    return {"R(1,1)": r11, "vanishes_at_unity": r11 == 0, "positive": positive}


# --------------------------------------------------------------------------
# configuration files


def parse_algebra_config(text: str) -> AlgebraSpec:
    """Parse the flat ``key = value`` algebra format.

    Recognised keys: ``kind``, ``p``, ``q``, ``tau``, ``r_expr``.  Lines
    starting with ``#`` are comments.
    """
    parser = configparser.ConfigParser(interpolation=None, comment_prefixes=("#", ";"))
    try:
        parser.read_string("[algebra]\n" + text)
    except configparser.Error as exc:
        raise ConfigurationError(f"malformed algebra file: {exc}") from None
    sec = parser["algebra"]
    unknown = set(sec) - {"kind", "p", "q", "tau", "r_expr"}
    if unknown:
        raise ConfigurationError(f"unknown keys in algebra file: {sorted(unknown)}")
    if "kind" not in sec:
        raise ConfigurationError("algebra file lacks 'kind'")
    return make_algebra(
        sec["kind"],
        sec.get("p"),
        sec.get("q"),
        sec.get("tau", "1"),
        sec.get("r_expr"),
    )


def load_algebra(path: Union[str, Path]) -> AlgebraSpec:
    return parse_algebra_config(Path(path).read_text())


def dump_algebra(spec: AlgebraSpec) -> str:
    lines = [f"kind = {spec.kind.value}"]
    if not (spec.kind.one_parameter and spec.p == 1):
        lines.append(f"p = {spec.p}")
    lines += [f"q = {spec.q}", f"tau = {spec.tau}"]
    if spec.r_expr is not None:
        lines.append(f"r_expr = {spec.r_expr}")
    return "\n".join(lines) + "\n"
