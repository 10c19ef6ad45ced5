"""Function families and their third-order jet evaluators.

Six concrete families cover every map the membership tests need: the
half-plane map z/(1-z), the angle family k_alpha (alpha=2 is the Koebe map),
affine sector maps built from a disk automorphism parameter a, the
interior-pole extremal k_p, the cubic 1/z + a0 + z, and general truncated
Laurent series with an optional simple pole. Rational families carry
hand-derived derivative formulas; power-based families compose jet
arithmetic so the branch handling lives in one place (jets.log).

Pole neighborhoods are NOT policed here: eval_jet raises only on genuine
degeneracy (a denominator inside the 1e-12 floor or a branch-cut hit).
Exclusion radii are the scanning layers' business.

The module also owns the spec mini-grammar used by the CLI:

    halfplane
    koebe                        (alias for kalpha:alpha=2)
    identity                     (alias for laurent:b=[0,1])
    kalpha:alpha=<r>
    anglemap:a=<c>[,A=<c>,B=<c>]
    kp:p=<r>
    co0cubic:a0=<c>
    laurent:p=<r>;res=<c>;b=[<c>,...]
    laurent:b=[<c>,...]

with complex literals written <re>+<im>i. format_spec emits the canonical
form; parse_spec(format_spec(s)) == s for every spec.
"""

from __future__ import annotations

import cmath
import re as _re
from dataclasses import dataclass, field

from .errors import PoleProximityError, SpecParseError
from .jets import DEGENERACY_FLOOR, Jet3

_FLOOR = DEGENERACY_FLOOR


def _require_in_disk(z: complex) -> complex:
    z = complex(z)
    if abs(z) >= 1.0:
        raise ValueError(f"sample {z!r} is not inside the unit disk")
    return z


class FamilySpec:
    """Base class; concrete families are frozen dataclasses below."""

    # interior poles (points where f itself blows up; 1/p for k_p is listed
    # although it lies outside the disk, so near-boundary exclusion works)
    poles: tuple[complex, ...] = ()
    # boundary point where f tends to infinity (z=1 for the unbounded families)
    boundary_pole: complex | None = None

    def eval_jet(self, z: complex) -> Jet3:
        raise NotImplementedError

    def reciprocal_jet(self, z: complex) -> Jet3:
        """Jet of 1/f at z; overridden where f has a pole the jet must cross."""
        return self.eval_jet(z).reciprocal()

    def natural_class_token(self) -> str:
        """Class string ('co', 'coalpha:alpha=..', 'co0', 'cop:p=..') this
        family belongs to by construction; Laurent specs default to 'co'."""
        raise NotImplementedError

    def __str__(self) -> str:
        return format_spec(self)


@dataclass(frozen=True)
class HalfPlane(FamilySpec):
    """l(z) = z/(1-z), mapping the disk onto Re w > -1/2."""

    boundary_pole = 1.0 + 0j

    def eval_jet(self, z: complex) -> Jet3:
        z = _require_in_disk(z)
        u = 1.0 - z
        iu = 1.0 / u
        return Jet3(z, z * iu, iu * iu, 2 * iu ** 3, 6 * iu ** 4)

    def natural_class_token(self) -> str:
        return "co"


@dataclass(frozen=True)
class KAlpha(FamilySpec):
    """k_alpha(z) = (((1+z)/(1-z))**alpha - 1)/(2 alpha), alpha in [1,2].

    alpha=1 collapses to the half-plane map and alpha=2 to the Koebe map
    z/(1-z)^2; both identities are exercised by tests.
    """

    alpha: float
    boundary_pole = 1.0 + 0j

    def __post_init__(self):
        a = float(self.alpha)
        if not (1.0 <= a <= 2.0):
            raise ValueError(f"alpha must lie in [1, 2], got {a!r}")
        object.__setattr__(self, "alpha", a)

    def eval_jet(self, z: complex) -> Jet3:
        z = _require_in_disk(z)
        zj = Jet3.variable(z)
        u = (1 + zj) / (1 - zj)  # maps the disk to Re u > 0, clear of the cut
        return (u.pow(self.alpha) - 1.0) / (2.0 * self.alpha)

    def natural_class_token(self) -> str:
        if self.alpha == 1.0:
            return "co"
        return f"coalpha:alpha={self.alpha!r}"


@dataclass(frozen=True)
class AngleMap(FamilySpec):
    """Affine sector map f(z) = A((z-lam)/(z-1))**(1+b) + B.

    The disk parameter a determines nu = -(1-conj(a))/(1-a), lam = nu*a/conj(a)
    (both unimodular) and the exponent b = (1-|a|^2)/(|a|^2 - Re a) in [0,1].
    Internally the power is taken of s = (z-lam)/(lam(z-1)), whose image is a
    half-plane bounded by a line through 0 that misses (-inf, 0], so the
    principal branch is safe on the whole open disk; the factor lam**(1+b) is
    folded into the leading coefficient.
    """

    a: complex
    A: complex = 1.0 + 0j
    B: complex = 0j
    nu: complex = field(init=False, repr=False, compare=False)
    lam: complex = field(init=False, repr=False, compare=False)
    b: float = field(init=False, repr=False, compare=False)
    phi1: float = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        a = complex(self.a)
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "A", complex(self.A))
        object.__setattr__(self, "B", complex(self.B))
        if a == 0:
            raise ValueError("a=0 fixes every point; no sector map exists")
        if abs(a) >= 1.0:
            raise ValueError(f"a must lie inside the unit disk, got {a!r}")
        if self.A == 0:
            raise ValueError("leading coefficient A must be nonzero")
        d = abs(a) ** 2 - a.real
        if abs(d) < 1e-15:
            raise ValueError("|a|^2 = Re a forces phi'(1) = 1; no such map")
        phi1 = (1.0 - abs(a) ** 2) / abs(1.0 - a) ** 2
        if d < 0 or phi1 > 1.0 / 3.0 + 1e-12:
            raise ValueError(
                f"phi'(1) = {phi1:.6g} falls outside [0, 1/3]; a is inadmissible"
            )
        b = (1.0 - abs(a) ** 2) / d
        nu = -(1.0 - a.conjugate()) / (1.0 - a)
        lam = nu * a / a.conjugate()
        object.__setattr__(self, "nu", nu)
        object.__setattr__(self, "lam", lam)
        object.__setattr__(self, "b", min(b, 1.0))
        object.__setattr__(self, "phi1", phi1)

    boundary_pole = 1.0 + 0j

    def eval_jet(self, z: complex) -> Jet3:
        z = _require_in_disk(z)
        zj = Jet3.variable(z)
        s = (zj - self.lam) / (self.lam * (zj - 1.0))
        e = 1.0 + self.b
        rot = cmath.exp(e * cmath.log(self.lam))
        return (self.A * rot) * s.pow(e) + self.B

    def natural_class_token(self) -> str:
        return "co"


def make_angle_map(a: complex, A: complex = 1.0 + 0j, B: complex = 0j) -> AngleMap:
    return AngleMap(a, A, B)


@dataclass(frozen=True)
class Kp(FamilySpec):
    """k_p(z) = z/((1-z/p)(1-pz)) = z/(1 - cz + z^2) with c = p + 1/p.

    Simple poles at p and 1/p; maps the disk onto the plane minus a real
    segment, so it is the extremal interior-pole concave map.
    """

    p: float

    def __post_init__(self):
        p = float(self.p)
        if not (0.0 < p < 1.0):
            raise ValueError(f"p must lie in (0, 1), got {p!r}")
        object.__setattr__(self, "p", p)

    @property
    def poles(self) -> tuple[complex, ...]:  # type: ignore[override]
        return (complex(self.p), complex(1.0 / self.p))

    def eval_jet(self, z: complex) -> Jet3:
        z = _require_in_disk(z)
        c = self.p + 1.0 / self.p
        d = 1.0 - c * z + z * z
        if abs(d) < _FLOOR:
            raise PoleProximityError(f"k_p denominator vanishes at {z!r}")
        id2 = 1.0 / (d * d)
        z2 = z * z
        return Jet3(
            z,
            z / d,
            (1.0 - z2) * id2,
            2 * (c - 3 * z + z * z2) * id2 / d,
            6 * (c * c - 1 - 4 * c * z + 6 * z2 - z2 * z2) * id2 * id2,
        )

    def natural_class_token(self) -> str:
        return f"cop:p={self.p!r}"


@dataclass(frozen=True)
class Co0Cubic(FamilySpec):
    """f(z) = 1/z + a0 + z, the pole-at-origin extremal (omits a0 + [-2, 2])."""

    a0: complex = 0j
    poles = (0j,)

    def __post_init__(self):
        object.__setattr__(self, "a0", complex(self.a0))

    def eval_jet(self, z: complex) -> Jet3:
        z = _require_in_disk(z)
        if abs(z) < _FLOOR:
            raise PoleProximityError("1/z + a0 + z has its pole at 0")
        iz = 1.0 / z
        iz2 = iz * iz
        return Jet3(z, iz + self.a0 + z, 1.0 - iz2, 2 * iz2 * iz, -6 * iz2 * iz2)

    def reciprocal_jet(self, z: complex) -> Jet3:
        # 1/f = z/(1 + a0 z + z^2) continues the jet across the pole at 0
        z = _require_in_disk(z)
        zj = Jet3.variable(z)
        return zj / (1.0 + self.a0 * zj + zj * zj)

    def natural_class_token(self) -> str:
        return "co0"


@dataclass(frozen=True)
class Laurent(FamilySpec):
    """residue/(z-p) + sum b_k (z-p)^k, or a plain polynomial when p is None.

    The general-purpose family: members of no named family, controls for the
    oracle, and truncated Taylor expansions all live here.
    """

    pole: float | None
    residue: complex
    coeffs: tuple[complex, ...]

    def __post_init__(self):
        if self.pole is not None:
            p = float(self.pole)
            if not (0.0 <= p < 1.0):
                raise ValueError(f"pole must lie in [0, 1), got {p!r}")
            if abs(complex(self.residue)) < _FLOOR:
                raise ValueError("a pole needs a nonzero residue")
            object.__setattr__(self, "pole", p)
        object.__setattr__(self, "residue", complex(self.residue))
        object.__setattr__(self, "coeffs", tuple(complex(c) for c in self.coeffs))

    @property
    def poles(self) -> tuple[complex, ...]:  # type: ignore[override]
        if self.pole is None:
            return ()
        return (complex(self.pole),)

    def _poly_jet(self, u: Jet3) -> Jet3:
        acc = Jet3.constant(u.base_point, 0j)
        for c in reversed(self.coeffs):
            acc = acc * u + c
        return acc

    def eval_jet(self, z: complex) -> Jet3:
        z = _require_in_disk(z)
        zj = Jet3.variable(z)
        if self.pole is None:
            return self._poly_jet(zj)
        u = zj - self.pole
        return self.residue * u.reciprocal() + self._poly_jet(u)

    def reciprocal_jet(self, z: complex) -> Jet3:
        if self.pole is None:
            return super().reciprocal_jet(z)
        z = _require_in_disk(z)
        zj = Jet3.variable(z)
        u = zj - self.pole
        # 1/f = u/(residue + u * poly(u)): regular where f has its pole
        return u / (self.residue + u * self._poly_jet(u))

    def natural_class_token(self) -> str:
        if self.pole is None:
            return "co"
        if self.pole == 0.0:
            return "co0"
        return f"cop:p={self.pole!r}"


def eval_jet(spec: FamilySpec, z: complex) -> Jet3:
    return spec.eval_jet(z)


def omitted_segment(p: float) -> tuple[float, float]:
    """Endpoints of the real segment omitted by k_p: (1/(2-1/p-p), -1/(2+1/p+p))."""
    p = float(p)
    if not (0.0 < p < 1.0):
        raise ValueError(f"p must lie in (0, 1), got {p!r}")
    return (1.0 / (2.0 - 1.0 / p - p), -1.0 / (2.0 + 1.0 / p + p))


def normalize_co_alpha(spec: FamilySpec) -> FamilySpec:
    """Affine-adjust a spec to f(0)=0, f'(0)=1.

    Classification operators only see f''/f' and Sf, so this fixes reporting
    conventions, nothing else. Families that are already normalized come back
    unchanged; families with a pole at 0 have no normalization of this kind.
    """
    if isinstance(spec, (HalfPlane, KAlpha, Kp)):
        return spec
    if isinstance(spec, Co0Cubic):
        raise ValueError("1/z + a0 + z is not analytic at 0")
    if isinstance(spec, Laurent) and spec.pole == 0.0:
        raise ValueError("this Laurent spec has its pole at 0")
    j = spec.eval_jet(0j)
    if abs(j.v1) < _FLOOR:
        raise ValueError("f'(0) = 0; the spec cannot be normalized")
    if isinstance(spec, AngleMap):
        return AngleMap(spec.a, spec.A / j.v1, (spec.B - j.v0) / j.v1)
    assert isinstance(spec, Laurent)
    if spec.pole is None:
        tail = [c / j.v1 for c in spec.coeffs[2:]]
        return Laurent(None, 0j, tuple([0j, 1.0 + 0j] + tail))
    cs = list(spec.coeffs) or [0j]
    head = (cs[0] - j.v0) / j.v1
    return Laurent(spec.pole, spec.residue / j.v1,
                   tuple([head] + [c / j.v1 for c in cs[1:]]))


# -- mini-grammar ------------------------------------------------------------

_FLOAT_RE = _re.compile(r"[+-]?(\d+\.?\d*|\.\d+)([eE][+-]?\d+)?")


def _fmt_c(c: complex) -> str:
    if c.imag >= 0 or c.imag != c.imag:
        return f"{c.real!r}+{c.imag!r}i"
    return f"{c.real!r}-{-c.imag!r}i"


def _parse_complex(text: str, pos: int) -> complex:
    """<re>+<im>i, <re>, or <im>i; pos is the literal's offset for errors."""
    s = text.strip()
    if not s:
        raise SpecParseError("empty complex literal", pos)
    m = _FLOAT_RE.match(s)
    if not m:
        raise SpecParseError(f"malformed complex literal {text!r}", pos)
    head, rest = m.group(0), s[m.end():]
    if rest == "":
        return complex(float(head), 0.0)
    if rest == "i":
        return complex(0.0, float(head))
    m2 = _FLOAT_RE.match(rest)
    if m2 and rest[m2.end():] == "i" and rest[0] in "+-":
        return complex(float(head), float(m2.group(0)))
    raise SpecParseError(f"malformed complex literal {text!r}", pos)


def _parse_real(text: str, pos: int) -> float:
    m = _FLOAT_RE.match(text.strip())
    if not m or m.group(0) != text.strip():
        raise SpecParseError(f"malformed real literal {text!r}", pos)
    return float(text)


def _split_kv(part: str, base: int) -> tuple[str, str, int]:
    eq = part.find("=")
    if eq < 0:
        raise SpecParseError(f"expected key=value, got {part!r}", base)
    return part[:eq].strip(), part[eq + 1:], base + eq + 1


def _wrap_range(exc: ValueError, text: str) -> SpecParseError:
    colon = text.find(":")
    return SpecParseError(str(exc), colon + 1 if colon >= 0 else 0)


def parse_spec(text: str) -> FamilySpec:
    """Parse a mini-grammar spec string; rejects anything else with a
    position-annotated SpecParseError."""
    s = text.strip()
    shift = len(text) - len(text.lstrip())
    head, sep, tail = s.partition(":")
    body_at = shift + len(head) + 1
    name = head.strip().lower()
    try:
        if name == "halfplane":
            _expect_no_body(sep, tail, body_at)
            return HalfPlane()
        if name == "koebe":
            _expect_no_body(sep, tail, body_at)
            return KAlpha(2.0)
        if name == "identity":
            _expect_no_body(sep, tail, body_at)
            return Laurent(None, 0j, (0j, 1.0 + 0j))
        if name == "kalpha":
            kv = _kv_map(tail, body_at, {"alpha"}, ",")
            return KAlpha(_parse_real(*_need(kv, "alpha", body_at)))
        if name == "anglemap":
            kv = _kv_map(tail, body_at, {"a", "A", "B"}, ",")
            a = _parse_complex(*_need(kv, "a", body_at))
            A = _parse_complex(*kv["A"]) if "A" in kv else 1.0 + 0j
            B = _parse_complex(*kv["B"]) if "B" in kv else 0j
            return AngleMap(a, A, B)
        if name == "kp":
            kv = _kv_map(tail, body_at, {"p"}, ",")
            return Kp(_parse_real(*_need(kv, "p", body_at)))
        if name == "co0cubic":
            kv = _kv_map(tail, body_at, {"a0"}, ",")
            return Co0Cubic(_parse_complex(*_need(kv, "a0", body_at)))
        if name == "laurent":
            kv = _kv_map(tail, body_at, {"p", "res", "b"}, ";")
            btxt, bpos = _need(kv, "b", body_at)
            coeffs = _parse_coeff_list(btxt, bpos)
            if "p" in kv:
                p = _parse_real(*kv["p"])
                res = _parse_complex(*_need(kv, "res", body_at))
                return Laurent(p, res, coeffs)
            if "res" in kv:
                raise SpecParseError("res given without p", kv["res"][1])
            return Laurent(None, 0j, coeffs)
    except ValueError as exc:
        if isinstance(exc, SpecParseError):
            raise
        raise _wrap_range(exc, text) from exc
    raise SpecParseError(f"unknown family {head.strip()!r}", shift)


def _expect_no_body(sep: str, tail: str, pos: int):
    if sep and tail.strip():
        raise SpecParseError(f"unexpected parameters {tail!r}", pos)


def _kv_map(body: str, base: int, allowed: set, delim: str) -> dict:
    out = {}
    if not body.strip():
        return out
    offset = 0
    for part in body.split(delim):
        if part.strip():
            key, val, vpos = _split_kv(part, base + offset)
            if key not in allowed:
                raise SpecParseError(f"unknown parameter {key!r}", base + offset)
            if key in out:
                raise SpecParseError(f"duplicate parameter {key!r}", base + offset)
            out[key] = (val, vpos)
        offset += len(part) + len(delim)
    return out


def _need(kv: dict, key: str, pos: int) -> tuple[str, int]:
    if key not in kv:
        raise SpecParseError(f"missing required parameter {key!r}", pos)
    return kv[key]


def _parse_coeff_list(text: str, pos: int) -> tuple[complex, ...]:
    s = text.strip()
    lead = pos + (len(text) - len(text.lstrip()))
    if not (s.startswith("[") and s.endswith("]")):
        raise SpecParseError("coefficient list must look like [c0,c1,...]", lead)
    inner = s[1:-1]
    if not inner.strip():
        return ()
    out, offset = [], 1
    for part in inner.split(","):
        out.append(_parse_complex(part, lead + offset))
        offset += len(part) + 1
    return tuple(out)


def format_spec(spec: FamilySpec) -> str:
    """Canonical grammar form; parse_spec round-trips it to an equal spec."""
    if isinstance(spec, HalfPlane):
        return "halfplane"
    if isinstance(spec, KAlpha):
        return f"kalpha:alpha={spec.alpha!r}"
    if isinstance(spec, AngleMap):
        return f"anglemap:a={_fmt_c(spec.a)},A={_fmt_c(spec.A)},B={_fmt_c(spec.B)}"
    if isinstance(spec, Kp):
        return f"kp:p={spec.p!r}"
    if isinstance(spec, Co0Cubic):
        return f"co0cubic:a0={_fmt_c(spec.a0)}"
    if isinstance(spec, Laurent):
        bs = "[" + ",".join(_fmt_c(c) for c in spec.coeffs) + "]"
        if spec.pole is None:
            return f"laurent:b={bs}"
        return f"laurent:p={spec.pole!r};res={_fmt_c(spec.residue)};b={bs}"
    raise TypeError(f"not a FamilySpec: {spec!r}")
