"""Exact arithmetic in cyclotomic fields Q(zeta_n).

A CycNum stores an order n and a coefficient tuple of length phi(n) over the
power basis 1, z, ..., z^(phi(n)-1) of Q(zeta_n), with z = exp(2*pi*i/n),
reduced by the n-th cyclotomic polynomial.  Every value is kept in a canonical
normal form:

- coefficients are Fractions, reduced mod Phi_n after each operation;
- the order is minimal: a value lying in a proper cyclotomic subfield
  Q(zeta_m), m | n, is stored with order m (so e.g. zeta_6 is stored as
  -zeta_3^2 with order 3, and any rational is stored with order 1).

Because the form is canonical, equality and hashing are structural, which is
what makes matrix-group element deduplication cheap.

Values are immutable; all operations return fresh values.
"""

from __future__ import annotations

import cmath
from fractions import Fraction
from functools import lru_cache
from math import gcd

__all__ = [
    "CycNum",
    "rational",
    "root_of_unity",
    "galois",
    "embed_complex",
    "sqrt_rational",
    "to_json",
    "from_json",
]


# ---------------------------------------------------------------------------
# integer polynomial helpers (dense, low degree first)


def _poly_divmod_int(num: list[int], den: list[int]) -> tuple[list[int], list[int]]:
    # den is monic; exact integer arithmetic
    num = list(num)
    deg_d = len(den) - 1
    quot = [0] * max(1, len(num) - deg_d)
    while len(num) - 1 >= deg_d and any(num):
        while num and num[-1] == 0:
            num.pop()
        if len(num) - 1 < deg_d:
            break
        shift = len(num) - 1 - deg_d
        c = num[-1]
        quot[shift] = c
        for i, d in enumerate(den):
            num[shift + i] -= c * d
    while num and num[-1] == 0:
        num.pop()
    return quot, num


@lru_cache(maxsize=None)
def cyclotomic_poly(n: int) -> tuple[int, ...]:
    """Coefficients of the n-th cyclotomic polynomial (constant term first).

    >>> cyclotomic_poly(1)
    (-1, 1)
    >>> cyclotomic_poly(6)
    (1, -1, 1)
    """
    if n == 1:
        return (-1, 1)
    num = [0] * (n + 1)
    num[0], num[n] = -1, 1
    for d in range(1, n):
        if n % d == 0:
            num, rem = _poly_divmod_int(num, list(cyclotomic_poly(d)))
            assert not rem
    return tuple(num)


@lru_cache(maxsize=None)
def euler_phi(n: int) -> int:
    result = n
    m, p = n, 2
    while p * p <= m:
        if m % p == 0:
            while m % p == 0:
                m //= p
            result -= result // p
        p += 1
    if m > 1:
        result -= result // m
    return result


@lru_cache(maxsize=None)
def _prime_factors(n: int) -> tuple[int, ...]:
    out = []
    m, p = n, 2
    while p * p <= m:
        if m % p == 0:
            out.append(p)
            while m % p == 0:
                m //= p
        p += 1
    if m > 1:
        out.append(m)
    return tuple(out)


@lru_cache(maxsize=None)
def _reduction_rows(n: int) -> tuple[tuple[int, ...], ...]:
    # row e-phi(n) = coefficients of x^e mod Phi_n, for phi(n) <= e < n
    phi = euler_phi(n)
    poly = cyclotomic_poly(n)
    rows: list[tuple[int, ...]] = []
    # x^phi = x^phi - Phi_n (Phi_n monic of degree phi)
    cur = [-c for c in poly[:phi]]
    rows.append(tuple(cur))
    for _ in range(phi + 1, n):
        nxt = [0] + cur[:-1]
        lead = cur[-1]
        if lead:
            for i in range(phi):
                nxt[i] += lead * rows[0][i]
        cur = nxt
        rows.append(tuple(cur))
    return tuple(rows)


def _reduce_mod_cyclotomic(n: int, dense: list[Fraction]) -> list[Fraction]:
    """Reduce a dense coefficient vector (any length) to length phi(n)."""
    phi = euler_phi(n)
    # first fold exponents >= n using x^n = 1
    if len(dense) > n:
        folded = [Fraction(0)] * n
        for e, c in enumerate(dense):
            if c:
                folded[e % n] += c
        dense = folded
    out = list(dense[:phi]) + [Fraction(0)] * max(0, phi - len(dense))
    if len(dense) > phi:
        rows = _reduction_rows(n)
        for e in range(phi, len(dense)):
            c = dense[e]
            if c:
                row = rows[e - phi]
                for i in range(phi):
                    if row[i]:
                        out[i] += c * row[i]
    return out


# ---------------------------------------------------------------------------
# exact linear solve used by order minimisation


@lru_cache(maxsize=None)
def _descent_columns(n: int, m: int) -> tuple[tuple[int, ...], ...]:
    # column j = coefficients of zeta_n^(j*n/m) in the power basis of Q(zeta_n)
    step = n // m
    cols = []
    for j in range(euler_phi(m)):
        dense = [Fraction(0)] * (j * step + 1)
        dense[j * step] = Fraction(1)
        red = _reduce_mod_cyclotomic(n, dense)
        cols.append(tuple(int(c) if c.denominator == 1 else c for c in red))
    return tuple(cols)


def _solve_descent(n: int, m: int, vec: tuple[Fraction, ...]):
    """Express vec (power basis of Q(zeta_n)) over the basis of Q(zeta_m) if possible."""
    cols = _descent_columns(n, m)
    ncols = len(cols)
    nrows = len(vec)
    # gaussian elimination on the augmented matrix [cols | vec]
    aug = [[Fraction(cols[j][i]) for j in range(ncols)] + [vec[i]] for i in range(nrows)]
    pivots = []
    row = 0
    for col in range(ncols):
        pr = next((r for r in range(row, nrows) if aug[r][col]), None)
        if pr is None:
            continue
        aug[row], aug[pr] = aug[pr], aug[row]
        inv = 1 / aug[row][col]
        aug[row] = [x * inv for x in aug[row]]
        for r in range(nrows):
            if r != row and aug[r][col]:
                f = aug[r][col]
                aug[r] = [a - f * b for a, b in zip(aug[r], aug[row])]
        pivots.append(col)
        row += 1
        if row == nrows:
            break
    # consistency: zero rows must have zero rhs
    for r in range(row, nrows):
        if aug[r][ncols]:
            return None
    sol = [Fraction(0)] * ncols
    for r, col in enumerate(pivots):
        sol[col] = aug[r][ncols]
    # non-pivot columns would mean dependent basis images, which cannot happen
    if len(pivots) != ncols:
        for j in range(ncols):
            if j not in pivots and any(aug[r][j] for r in range(row)):
                return None
    return sol


# ---------------------------------------------------------------------------


class CycNum:
    """An element of some Q(zeta_n), in canonical (order-minimal) form."""

    __slots__ = ("order", "coeffs", "_hash")

    order: int
    coeffs: tuple[Fraction, ...]

    def __init__(self, order: int, coeffs, _normalized: bool = False):
        if _normalized:
            self.order = order
            self.coeffs = tuple(coeffs)
        else:
            o, c = _normalize(order, list(coeffs))
            self.order = o
            self.coeffs = c
        self._hash = None

    # -- construction helpers ------------------------------------------------

    @staticmethod
    def from_rational(q) -> "CycNum":
        return CycNum(1, (Fraction(q),), _normalized=True)

    # -- structure ------------------------------------------------------------

    def is_zero(self) -> bool:
        return self.order == 1 and self.coeffs[0] == 0

    def is_rational(self) -> bool:
        return self.order == 1

    def as_fraction(self) -> Fraction:
        if self.order != 1:
            raise ValueError(f"not a rational number: {self}")
        return self.coeffs[0]

    # -- arithmetic -----------------------------------------------------------

    def _lift(self, n: int) -> list[Fraction]:
        """Dense coefficients of self inside Q(zeta_n) (self.order | n)."""
        step = n // self.order
        dense = [Fraction(0)] * ((len(self.coeffs) - 1) * step + 1)
        for i, c in enumerate(self.coeffs):
            if c:
                dense[i * step] = c
        return _reduce_mod_cyclotomic(n, dense)

    def __add__(self, other) -> "CycNum":
        other = _coerce(other)
        n = _lcm(self.order, other.order)
        a = self._lift(n) if n != self.order else list(self.coeffs)
        b = other._lift(n) if n != other.order else list(other.coeffs)
        if len(a) < len(b):
            a, b = b, a
        for i, c in enumerate(b):
            a[i] += c
        return CycNum(n, a)

    def __radd__(self, other) -> "CycNum":
        return self.__add__(other)

    def __neg__(self) -> "CycNum":
        return CycNum(self.order, tuple(-c for c in self.coeffs), _normalized=True)

    def __sub__(self, other) -> "CycNum":
        return self.__add__(-_coerce(other))

    def __rsub__(self, other) -> "CycNum":
        return (-self).__add__(other)

    def __mul__(self, other) -> "CycNum":
        other = _coerce(other)
        if self.order == 1:
            q = self.coeffs[0]
            if q == 0:
                return ZERO
            return CycNum(other.order, tuple(q * c for c in other.coeffs), _normalized=(q != 0))
        if other.order == 1:
            return other.__mul__(self)
        n = _lcm(self.order, other.order)
        a = self._lift(n) if n != self.order else list(self.coeffs)
        b = other._lift(n) if n != other.order else list(other.coeffs)
        conv = [Fraction(0)] * (len(a) + len(b) - 1)
        for i, ca in enumerate(a):
            if ca:
                for j, cb in enumerate(b):
                    if cb:
                        conv[i + j] += ca * cb
        return CycNum(n, _reduce_mod_cyclotomic(n, conv))

    def __rmul__(self, other) -> "CycNum":
        return self.__mul__(other)

    def inverse(self) -> "CycNum":
        if self.is_zero():
            raise ZeroDivisionError("division by zero in a cyclotomic field")
        if self.order == 1:
            return CycNum(1, (1 / self.coeffs[0],), _normalized=True)
        n = self.order
        phi = [Fraction(c) for c in cyclotomic_poly(n)]
        inv = _poly_modular_inverse(list(self.coeffs), phi)
        return CycNum(n, inv)

    def __truediv__(self, other) -> "CycNum":
        return self.__mul__(_coerce(other).inverse())

    def __rtruediv__(self, other) -> "CycNum":
        return _coerce(other).__mul__(self.inverse())

    def __pow__(self, k: int) -> "CycNum":
        if k < 0:
            return self.inverse() ** (-k)
        result = ONE
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    # -- comparisons ----------------------------------------------------------

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = CycNum.from_rational(other)
        if not isinstance(other, CycNum):
            return NotImplemented
        return self.order == other.order and self.coeffs == other.coeffs

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.order, self.coeffs))
        return self._hash

    def __bool__(self) -> bool:
        return not self.is_zero()

    def __repr__(self) -> str:
        if self.order == 1:
            return f"CycNum({self.coeffs[0]})"
        terms = []
        for i, c in enumerate(self.coeffs):
            if not c:
                continue
            if i == 0:
                terms.append(str(c))
            else:
                z = f"z{self.order}" + (f"^{i}" if i > 1 else "")
                terms.append(f"{c}*{z}" if c != 1 else z)
        return "CycNum(" + (" + ".join(terms) or "0") + ")"

    def conjugate(self) -> "CycNum":
        """Complex conjugation, i.e. the Galois substitution zeta -> zeta^-1."""
        return galois(self, -1)


def _coerce(x) -> CycNum:
    if isinstance(x, CycNum):
        return x
    if isinstance(x, (int, Fraction)):
        return CycNum.from_rational(x)
    raise TypeError(f"cannot interpret {x!r} as a cyclotomic number")


def _lcm(a: int, b: int) -> int:
    return a // gcd(a, b) * b


def _normalize(order: int, dense: list[Fraction]) -> tuple[int, tuple[Fraction, ...]]:
    dense = [c if isinstance(c, Fraction) else Fraction(c) for c in dense]
    coeffs = _reduce_mod_cyclotomic(order, dense)
    n = order
    # descend to the minimal cyclotomic subfield, one prime at a time
    changed = True
    while changed and n > 1:
        changed = False
        if all(c == 0 for c in coeffs[1:]):
            return 1, (coeffs[0],)
        for p in _prime_factors(n):
            m = n // p
            if m == 1:
                continue  # rational case handled above
            sol = _solve_descent(n, m, tuple(coeffs))
            if sol is not None:
                n, coeffs = m, sol
                changed = True
                break
    if n == 1:
        return 1, (coeffs[0],)
    return n, tuple(coeffs)


def _poly_modular_inverse(a: list[Fraction], mod: list[Fraction]) -> list[Fraction]:
    """Inverse of a modulo the (irreducible) polynomial mod, over Q."""

    def trim(p):
        while p and not p[-1]:
            p.pop()
        return p

    def divmod_q(num, den):
        num = list(num)
        q = [Fraction(0)] * max(1, len(num) - len(den) + 1)
        while len(num) >= len(den) and any(num):
            num = trim(num)
            if len(num) < len(den):
                break
            c = num[-1] / den[-1]
            shift = len(num) - len(den)
            q[shift] = c
            for i, d in enumerate(den):
                num[shift + i] -= c * d
            num.pop()
        return q, trim(num)

    # extended euclid: r0 = mod, r1 = a
    r0, r1 = trim(list(mod)), trim(list(a))
    s0, s1 = [Fraction(0)], [Fraction(1)]

    def sub_scaled(u, q, v):
        # u - q*v
        res = list(u) + [Fraction(0)] * max(0, len(q) + len(v) - 1 - len(u))
        for i, qc in enumerate(q):
            if qc:
                for j, vc in enumerate(v):
                    if vc:
                        res[i + j] -= qc * vc
        return trim(res)

    while len(r1) > 1 or (r1 and r1 != [Fraction(0)] and len(r1) > 1):
        q, r = divmod_q(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, sub_scaled(s0, q, s1)
        if not r1:
            raise ZeroDivisionError("element not invertible (unexpected for a field)")
        if len(r1) == 1:
            break
    c = r1[0]
    return [x / c for x in s0] if len(r0) == 1 else [x / c for x in s1]


# ---------------------------------------------------------------------------
# public operations


ZERO = CycNum(1, (Fraction(0),), _normalized=True)
ONE = CycNum(1, (Fraction(1),), _normalized=True)


def rational(q) -> CycNum:
    """The rational number q as a CycNum."""
    return CycNum.from_rational(q)


def root_of_unity(n: int, k: int = 1) -> CycNum:
    """zeta_n^k in canonical form; the result has multiplicative order n/gcd(n,k).

    >>> root_of_unity(4, 2) == rational(-1)
    True
    """
    if n < 1:
        raise ValueError("order of a root of unity must be >= 1")
    k %= n
    dense = [Fraction(0)] * (k + 1)
    dense[k] = Fraction(1)
    return CycNum(n, dense)


def galois(a: CycNum, k: int) -> CycNum:
    """Apply the Galois substitution zeta_n -> zeta_n^k (k prime to n = order of a)."""
    n = a.order
    k %= n
    if gcd(k, n) != 1:
        raise ValueError(f"galois exponent {k} is not coprime to the order {n}")
    if n == 1 or k == 1:
        return a
    dense = [Fraction(0)] * n
    for i, c in enumerate(a.coeffs):
        if c:
            dense[(i * k) % n] += c
    return CycNum(n, dense)


def embed_complex(a: CycNum) -> complex:
    """Approximate complex value, evaluating zeta_n at exp(2*pi*i/n)."""
    z = cmath.exp(2j * cmath.pi / a.order)
    total = 0j
    p = 1 + 0j
    for c in a.coeffs:
        if c:
            total += float(c) * p
        p *= z
    return total


def _legendre(a: int, p: int) -> int:
    a %= p
    if a == 0:
        return 0
    r = pow(a, (p - 1) // 2, p)
    return -1 if r == p - 1 else r


@lru_cache(maxsize=None)
def _sqrt_prime(p: int) -> CycNum:
    """An exact square root of the prime p inside a cyclotomic field."""
    if p == 2:
        return root_of_unity(8, 1) + root_of_unity(8, 7)
    g = ZERO
    for k in range(1, p):
        g = g + rational(_legendre(k, p)) * root_of_unity(p, k)
    if p % 4 == 1:
        root = g  # g^2 = p
    else:
        root = g * root_of_unity(4, 3)  # g^2 = -p, divide by i
    assert root * root == rational(p)
    return root


def sqrt_rational(q) -> CycNum:
    """An exact cyclotomic square root of the rational q (deterministic choice).

    Every rational has one by Kronecker-Weber; e.g. sqrt(-3) = zeta_3 - zeta_3^2.
    """
    q = Fraction(q)
    if q == 0:
        return ZERO
    n = abs(q.numerator) * q.denominator
    root = rational(Fraction(1, q.denominator))
    m, p = n, 2
    while p * p <= m:
        e = 0
        while m % p == 0:
            m //= p
            e += 1
        if e:
            root = root * rational(p ** (e // 2))
            if e % 2:
                root = root * _sqrt_prime(p)
        p += 1
    if m > 1:
        root = root * _sqrt_prime(m)
    if q < 0:
        root = root * root_of_unity(4, 1)
    assert root * root == rational(q)
    return root


# ---------------------------------------------------------------------------
# JSON encoding: {"order": n, "coeffs": [["num","den"], ...]}


def to_json(a: CycNum) -> dict:
    return {
        "order": a.order,
        "coeffs": [[str(c.numerator), str(c.denominator)] for c in a.coeffs],
    }


def from_json(data: dict) -> CycNum:
    try:
        order = int(data["order"])
        coeffs = [Fraction(int(num), int(den)) for num, den in data["coeffs"]]
    except (KeyError, TypeError, ValueError) as exc:
        raise ValueError(f"malformed CycNum encoding: {data!r}") from exc
    if order < 1 or len(coeffs) != euler_phi(order):
        raise ValueError(f"CycNum encoding has wrong coefficient count: {data!r}")
    return CycNum(order, coeffs)
