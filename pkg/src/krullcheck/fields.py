"""Exact coefficient fields: the rationals, prime fields and simple extensions.

Elements of ``QQ`` are plain :class:`gmpy2.mpq` values.  Prime-field and
extension elements are small immutable wrappers that know their field, so
arithmetic across different fields raises :class:`IncompatibleFieldError`
instead of silently mixing residues.
"""

from __future__ import annotations

import random
from fractions import Fraction
from numbers import Rational

import gmpy2
from gmpy2 import mpq, mpz

__all__ = [
    "IncompatibleFieldError",
    "Field",
    "RationalField",
    "PrimeField",
    "SimpleExtension",
    "ModInt",
    "ExtElem",
    "QQ",
    "field_of",
    "field_add",
    "field_sub",
    "field_mul",
    "field_neg",
    "field_inv",
    "extension_embed",
]

_MPQ = type(mpq(0))


class IncompatibleFieldError(TypeError):
    """Operands live in different coefficient fields."""


class Field:
    """Common interface of a coefficient field descriptor."""

    characteristic = 0

    def __call__(self, x):
        return self.coerce(x)

    @property
    def zero(self):
        return self.coerce(0)

    @property
    def one(self):
        return self.coerce(1)

    def contains(self, a) -> bool:
        raise NotImplementedError

    def coerce(self, x):
        raise NotImplementedError

    def random_element(self, rng: random.Random, bound: int = 5):
        raise NotImplementedError


class RationalField(Field):
    """The field of rational numbers, backed by GMP rationals."""

    characteristic = 0

    def __repr__(self):
        return "QQ"

    def __eq__(self, other):
        return isinstance(other, RationalField)

    def __hash__(self):
        return hash("QQ")

    def contains(self, a):
        return isinstance(a, _MPQ)

    def coerce(self, x):
        if isinstance(x, _MPQ):
            return x
        if isinstance(x, (int, type(mpz(0)))):
            return mpq(x)
        if isinstance(x, Fraction):
            return mpq(x.numerator, x.denominator)
        if isinstance(x, Rational):
            return mpq(int(x.numerator), int(x.denominator))
        if isinstance(x, str):
            return mpq(Fraction(x).numerator, Fraction(x).denominator)
        raise IncompatibleFieldError(f"cannot coerce {x!r} into QQ")

    def random_element(self, rng, bound=5):
        num = rng.randint(-bound, bound)
        den = rng.randint(1, bound)
        return mpq(num, den)

    def format(self, a) -> str:
        return str(a)


QQ = RationalField()


def _is_prime(p: int) -> bool:
    return p >= 2 and bool(gmpy2.is_prime(p))


class PrimeField(Field):
    """The prime field of residues modulo ``p``."""

    def __init__(self, p: int):
        p = int(p)
        if not _is_prime(p):
            raise ValueError(f"modulus {p} is not prime")
        self.p = p
        self.characteristic = p

    def __repr__(self):
        return f"Fp({self.p})"

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("Fp", self.p))

    def contains(self, a):
        return isinstance(a, ModInt) and a.field == self

    def coerce(self, x):
        if isinstance(x, ModInt):
            if x.field != self:
                raise IncompatibleFieldError(f"{x.field} element used in {self}")
            return x
        if isinstance(x, (int, type(mpz(0)))):
            return ModInt(self, int(x) % self.p)
        if isinstance(x, (_MPQ, Fraction)):
            num, den = int(x.numerator), int(x.denominator)
            if den % self.p == 0:
                raise ZeroDivisionError(f"denominator {den} vanishes in {self}")
            return ModInt(self, num * pow(den, -1, self.p) % self.p)
        raise IncompatibleFieldError(f"cannot coerce {x!r} into {self}")

    def random_element(self, rng, bound=5):
        return ModInt(self, rng.randrange(self.p))

    def format(self, a) -> str:
        return str(a.v)


class ModInt:
    """Residue class in a prime field, stored as the representative in [0, p)."""

    __slots__ = ("field", "v")

    def __init__(self, field: PrimeField, v: int):
        self.field = field
        self.v = v

    def _other(self, b):
        if isinstance(b, ModInt):
            if b.field.p != self.field.p:
                raise IncompatibleFieldError(f"{self.field} vs {b.field}")
            return b.v
        if isinstance(b, int):
            return b % self.field.p
        if isinstance(b, (_MPQ, Fraction)):
            return self.field.coerce(b).v
        return None

    def __add__(self, b):
        o = self._other(b)
        if o is None:
            return NotImplemented
        return ModInt(self.field, (self.v + o) % self.field.p)

    __radd__ = __add__

    def __sub__(self, b):
        o = self._other(b)
        if o is None:
            return NotImplemented
        return ModInt(self.field, (self.v - o) % self.field.p)

    def __rsub__(self, b):
        o = self._other(b)
        if o is None:
            return NotImplemented
        return ModInt(self.field, (o - self.v) % self.field.p)

    def __mul__(self, b):
        o = self._other(b)
        if o is None:
            return NotImplemented
        return ModInt(self.field, self.v * o % self.field.p)

    __rmul__ = __mul__

    def __neg__(self):
        return ModInt(self.field, -self.v % self.field.p)

    def inverse(self):
        if self.v == 0:
            raise ZeroDivisionError(f"inverse of zero in {self.field}")
        return ModInt(self.field, pow(self.v, -1, self.field.p))

    def __truediv__(self, b):
        o = self._other(b)
        if o is None:
            return NotImplemented
        if o == 0:
            raise ZeroDivisionError(f"division by zero in {self.field}")
        return ModInt(self.field, self.v * pow(o, -1, self.field.p) % self.field.p)

    def __rtruediv__(self, b):
        o = self._other(b)
        if o is None:
            return NotImplemented
        return ModInt(self.field, o) / self

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        return ModInt(self.field, pow(self.v, k, self.field.p))

    def __eq__(self, b):
        if isinstance(b, ModInt):
            return b.field.p == self.field.p and b.v == self.v
        if isinstance(b, int):
            return self.v == b % self.field.p
        return NotImplemented

    def __hash__(self):
        return hash((self.field.p, self.v))

    def __bool__(self):
        return self.v != 0

    def __repr__(self):
        return f"{self.v} (mod {self.field.p})"

    def __str__(self):
        return str(self.v)


# -- univariate helpers over a field, coefficient lists low -> high ----------


def _trim(a):
    a = list(a)
    while a and not a[-1]:
        a.pop()
    return a


def _upoly_divmod(a, b):
    a = _trim(a)
    b = _trim(b)
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    q = [b[0] * 0] * max(len(a) - len(b) + 1, 1)
    inv_lc = 1 / b[-1]
    while len(a) >= len(b):
        c = a[-1] * inv_lc
        shift = len(a) - len(b)
        q[shift] = c
        for i, bi in enumerate(b):
            a[shift + i] = a[shift + i] - c * bi
        a = _trim(a[:-1])
    return _trim(q), a


def _upoly_mul(a, b):
    if not a or not b:
        return []
    out = [a[0] * 0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if not ai:
            continue
        for j, bj in enumerate(b):
            out[i + j] = out[i + j] + ai * bj
    return _trim(out)


def _upoly_sub(a, b):
    n = max(len(a), len(b))
    z = (a or b)[0] * 0
    a = list(a) + [z] * (n - len(a))
    b = list(b) + [z] * (n - len(b))
    return _trim([x - y for x, y in zip(a, b)])


def _upoly_eval(a, x):
    acc = x * 0
    for c in reversed(a):
        acc = acc * x + c
    return acc


class SimpleExtension(Field):
    """A simple algebraic extension ``base[name]/(modulus)``.

    ``modulus`` is a coefficient list (low degree first) over ``base``; it is
    made monic on construction.  Irreducibility is the caller's
    responsibility, except that degrees 2 and 3 are checked for roots in the
    base field (a reducible cubic or quadratic always has one).
    """

    def __init__(self, base: Field, modulus, name: str = "a", check: bool = True):
        if isinstance(base, SimpleExtension):
            raise ValueError("extension towers are not supported")
        mod = _trim([base.coerce(c) for c in modulus])
        if len(mod) < 3:
            raise ValueError("minimal polynomial must have degree >= 2")
        lc = mod[-1]
        mod = [c / lc for c in mod]
        self.base = base
        self.modulus = tuple(mod)
        self.name = name
        self.degree = len(mod) - 1
        self.characteristic = base.characteristic
        if check and self.degree <= 3 and self._has_base_root():
            raise ValueError(f"minimal polynomial of {name} has a root in {base}")

    def _has_base_root(self) -> bool:
        if isinstance(self.base, PrimeField):
            return any(not _upoly_eval(self.modulus, self.base(v)) for v in range(self.base.p))
        # rational root theorem on the integer-scaled modulus
        den = 1
        for c in self.modulus:
            den = den * int(c.denominator) // gmpy2.gcd(den, int(c.denominator))
        ints = [int(c * den) for c in self.modulus]
        if ints[0] == 0:
            return True
        a0, an = abs(ints[0]), abs(ints[-1])
        divs = lambda n: [d for d in range(1, n + 1) if n % d == 0]
        for p in divs(a0):
            for q in divs(an):
                for s in (1, -1):
                    if not _upoly_eval(ints, mpq(s * p, q)):
                        return True
        return False

    def __repr__(self):
        return f"{self.base!r}[{self.name}]/({self.format_modulus()})"

    def format_modulus(self) -> str:
        terms = []
        for k in range(self.degree, -1, -1):
            c = self.modulus[k]
            if not c:
                continue
            terms.append((c, k))
        out = []
        for c, k in terms:
            neg = _is_negative(c)
            mag = -c if neg else c
            mon = "" if k == 0 else (self.name if k == 1 else f"{self.name}^{k}")
            if k == 0:
                body = self.base.format(mag)
            elif mag == 1:
                body = mon
            else:
                body = f"{self.base.format(mag)}*{mon}"
            if not out:
                out.append(("-" if neg else "") + body)
            else:
                out.append((" - " if neg else " + ") + body)
        return "".join(out)

    def __eq__(self, other):
        return (
            isinstance(other, SimpleExtension)
            and other.base == self.base
            and other.modulus == self.modulus
            and other.name == self.name
        )

    def __hash__(self):
        return hash(("ext", self.base, self.modulus, self.name))

    def contains(self, a):
        return isinstance(a, ExtElem) and a.field == self

    @property
    def gen(self) -> "ExtElem":
        z = self.base.zero
        coords = [z] * self.degree
        coords[1] = self.base.one
        return ExtElem(self, tuple(coords))

    def coerce(self, x):
        if isinstance(x, ExtElem):
            if x.field != self:
                raise IncompatibleFieldError(f"{x.field} element used in {self}")
            return x
        b = self.base.coerce(x)
        z = self.base.zero
        return ExtElem(self, (b,) + (z,) * (self.degree - 1))

    def from_coords(self, coords) -> "ExtElem":
        coords = [self.base.coerce(c) for c in coords]
        if len(coords) > self.degree:
            _, coords = _upoly_divmod(coords, self.modulus)
        coords = list(coords) + [self.base.zero] * (self.degree - len(coords))
        return ExtElem(self, tuple(coords))

    def random_element(self, rng, bound=5):
        return ExtElem(self, tuple(self.base.random_element(rng, bound) for _ in range(self.degree)))

    def format(self, a) -> str:
        return a._format()


def _is_negative(c) -> bool:
    return isinstance(c, _MPQ) and c < 0


class ExtElem:
    """Element of a :class:`SimpleExtension`, as a reduced coordinate vector."""

    __slots__ = ("field", "coords")

    def __init__(self, field: SimpleExtension, coords: tuple):
        self.field = field
        self.coords = coords

    def _other(self, b):
        if isinstance(b, ExtElem):
            if b.field != self.field:
                raise IncompatibleFieldError(f"{self.field} vs {b.field}")
            return b
        try:
            return self.field.coerce(b)
        except IncompatibleFieldError:
            raise
        except Exception:
            return None

    def __add__(self, b):
        o = self._other(b)
        if o is None:
            return NotImplemented
        return ExtElem(self.field, tuple(x + y for x, y in zip(self.coords, o.coords)))

    __radd__ = __add__

    def __sub__(self, b):
        o = self._other(b)
        if o is None:
            return NotImplemented
        return ExtElem(self.field, tuple(x - y for x, y in zip(self.coords, o.coords)))

    def __rsub__(self, b):
        o = self._other(b)
        if o is None:
            return NotImplemented
        return o - self

    def __neg__(self):
        return ExtElem(self.field, tuple(-x for x in self.coords))

    def __mul__(self, b):
        o = self._other(b)
        if o is None:
            return NotImplemented
        F = self.field
        prod = _upoly_mul(_trim(self.coords), _trim(o.coords))
        if len(prod) > F.degree:
            _, prod = _upoly_divmod(prod, F.modulus)
        return F.from_coords(prod)

    __rmul__ = __mul__

    def inverse(self):
        F = self.field
        a = _trim(self.coords)
        if not a:
            raise ZeroDivisionError(f"inverse of zero in {F}")
        # extended Euclid: s*a + t*m = g, g a nonzero constant
        r0, r1 = list(F.modulus), a
        s0, s1 = [], [F.base.one]
        while len(r1) > 1:
            q, r = _upoly_divmod(r0, r1)
            r0, r1 = r1, r
            s0, s1 = s1, _upoly_sub(s0, _upoly_mul(q, s1))
            if not r1:
                raise ZeroDivisionError(f"{self} is a zero divisor; modulus is reducible")
        g = r1[0]
        return F.from_coords([c / g for c in s1])

    def __truediv__(self, b):
        o = self._other(b)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, b):
        o = self._other(b)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        result = self.field.one
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __eq__(self, b):
        if isinstance(b, ExtElem):
            return b.field == self.field and b.coords == self.coords
        try:
            return self.coords == self.field.coerce(b).coords
        except Exception:
            return NotImplemented

    def __hash__(self):
        if all(not c for c in self.coords[1:]):
            return hash(self.coords[0])
        return hash(self.coords)

    def __bool__(self):
        return any(self.coords)

    def is_base(self) -> bool:
        return all(not c for c in self.coords[1:])

    def _format(self) -> str:
        F = self.field
        parts = []
        for k in range(F.degree - 1, -1, -1):
            c = self.coords[k]
            if not c:
                continue
            neg = _is_negative(c)
            mag = -c if neg else c
            mon = "" if k == 0 else (F.name if k == 1 else f"{F.name}^{k}")
            if k == 0:
                body = F.base.format(mag)
            elif mag == 1:
                body = mon
            else:
                body = f"{F.base.format(mag)}*{mon}"
            parts.append((neg, body))
        if not parts:
            return "0"
        out = ("-" if parts[0][0] else "") + parts[0][1]
        for neg, body in parts[1:]:
            out += (" - " if neg else " + ") + body
        return out

    def __repr__(self):
        return self._format()


# -- descriptor-checked functional API ---------------------------------------


def field_of(a) -> Field:
    if isinstance(a, (ModInt, ExtElem)):
        return a.field
    if isinstance(a, _MPQ):
        return QQ
    raise IncompatibleFieldError(f"{a!r} is not a field element")


def _same(a, b) -> Field:
    fa, fb = field_of(a), field_of(b)
    if fa != fb:
        raise IncompatibleFieldError(f"{fa} vs {fb}")
    return fa


def field_add(a, b):
    _same(a, b)
    return a + b


def field_sub(a, b):
    _same(a, b)
    return a - b


def field_mul(a, b):
    _same(a, b)
    return a * b


def field_neg(a):
    field_of(a)
    return -a


def field_inv(a):
    F = field_of(a)
    if not a:
        raise ZeroDivisionError(f"inverse of zero in {F}")
    if isinstance(a, _MPQ):
        return 1 / a
    return a.inverse()


def extension_embed(a, target: SimpleExtension) -> ExtElem:
    """Image of a base-field element in ``target``."""
    if not isinstance(target, SimpleExtension):
        raise IncompatibleFieldError(f"{target} is not an extension field")
    if field_of(a) != target.base:
        raise IncompatibleFieldError(f"{field_of(a)} is not the base of {target}")
    return target.coerce(a)
