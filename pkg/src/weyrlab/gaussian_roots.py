"""Exact enumeration of the Q(i) roots of a polynomial.

The search is the rational-root argument lifted to the Gaussian integers:
after clearing denominators, any root a/b in lowest terms has a dividing
the trailing coefficient and b dividing the leading one in Z[i].  Divisors
come from the Gaussian prime factorization, which in turn rests on ordinary
integer factorization (deterministic Miller-Rabin plus Brent's rho) and
sum-of-two-squares splitting of primes congruent to 1 mod 4.

Roots that are not in Q(i) are never approximated; they stay inside the
returned residual polynomial.
"""

from __future__ import annotations

import math
from fractions import Fraction

from .errors import ZeroPolynomialError
from .polynomials import Polynomial, squarefree_decomposition
from .scalars import GaussianRational, gr, lex_key

__all__ = ["gaussian_rational_roots"]

GInt = tuple[int, int]  # a + b*i with integer a, b


# ---------------------------------------------------------------------------
# ordinary integer factorization

_SMALL_PRIMES = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47]

# Deterministic witness set for n < 3.3 * 10^24.
_MR_WITNESSES = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37]


def _is_probable_prime(n: int) -> bool:
    if n < 2:
        return False
    for p in _SMALL_PRIMES:
        if n % p == 0:
            return n == p
    d = n - 1
    s = 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_WITNESSES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _brent_rho(n: int) -> int:
    """A nontrivial factor of composite odd n (deterministic parameter sweep)."""
    if n % 2 == 0:
        return 2
    for c in range(1, 50):
        y, m, g, r, q = 2, 128, 1, 1, 1
        x = ys = y
        while g == 1:
            x = y
            for _ in range(r):
                y = (y * y + c) % n
            k = 0
            while k < r and g == 1:
                ys = y
                for _ in range(min(m, r - k)):
                    y = (y * y + c) % n
                    q = q * abs(x - y) % n
                g = math.gcd(q, n)
                k += m
            r *= 2
        if g == n:
            g = 1
            while g == 1:
                ys = (ys * ys + c) % n
                g = math.gcd(abs(x - ys), n)
        if g != n:
            return g
    raise ArithmeticError(f"factorization failed for {n}")


def _factorint(n: int) -> dict[int, int]:
    """Prime factorization of n >= 1."""
    out: dict[int, int] = {}
    for p in _SMALL_PRIMES:
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
    stack = [n] if n > 1 else []
    while stack:
        m = stack.pop()
        if m == 1:
            continue
        if _is_probable_prime(m):
            out[m] = out.get(m, 0) + 1
            continue
        d = _brent_rho(m)
        stack.append(d)
        stack.append(m // d)
    return out


# ---------------------------------------------------------------------------
# Gaussian integer arithmetic

def _gi_mul(a: GInt, b: GInt) -> GInt:
    return (a[0] * b[0] - a[1] * b[1], a[0] * b[1] + a[1] * b[0])


def _gi_norm(a: GInt) -> int:
    return a[0] * a[0] + a[1] * a[1]


def _gi_divmod(a: GInt, b: GInt) -> tuple[GInt, GInt]:
    """Euclidean division with rounded quotient; norm of remainder < norm(b)."""
    nb = _gi_norm(b)
    conj = (b[0], -b[1])
    num = _gi_mul(a, conj)
    q = (_round_div(num[0], nb), _round_div(num[1], nb))
    r = (a[0] - (q[0] * b[0] - q[1] * b[1]), a[1] - (q[0] * b[1] + q[1] * b[0]))
    return q, r


def _round_div(a: int, b: int) -> int:
    # Round to nearest integer, ties toward +inf; b > 0.
    return (2 * a + b) // (2 * b)


def _gi_gcd(a: GInt, b: GInt) -> GInt:
    while b != (0, 0):
        a, b = b, _gi_divmod(a, b)[1]
    return a


def _gi_divides(d: GInt, z: GInt) -> bool:
    return _gi_divmod(z, d)[1] == (0, 0)


def _gi_canonical(z: GInt) -> GInt:
    """Unique associate in the half-open first quadrant (re > 0, im >= 0)."""
    a, b = z
    if a == 0 and b == 0:
        return z
    for _ in range(4):
        if a > 0 and b >= 0:
            return (a, b)
        a, b = -b, a
    raise AssertionError("unreachable")


def _split_prime(p: int) -> GInt:
    """A Gaussian prime above p for p = 2 or p % 4 == 1."""
    if p == 2:
        return (1, 1)
    # Find x with x^2 = -1 (mod p) from a quadratic non-residue.
    e = (p - 1) // 2
    a = 2
    while pow(a, e, p) != p - 1:
        a += 1
    x = pow(a, (p - 1) // 4, p)
    return _gi_canonical(_gi_gcd((p, 0), (x, 1)))


def _gaussian_prime_factors(z: GInt) -> list[tuple[GInt, int]]:
    """Gaussian prime factorization of a nonzero z, primes in canonical form."""
    out: list[tuple[GInt, int]] = []
    for p in sorted(_factorint(_gi_norm(z))):
        if p == 2 or p % 4 == 1:
            candidates = [_split_prime(p)]
            if p != 2:
                pi = candidates[0]
                candidates.append(_gi_canonical((pi[0], -pi[1])))
        else:
            candidates = [(p, 0)]
        for pi in candidates:
            e = 0
            while _gi_divides(pi, z):
                z = _gi_divmod(z, pi)[0]
                e += 1
            if e:
                out.append((pi, e))
    return out


def _gi_divisors(z: GInt) -> list[GInt]:
    """All divisors of nonzero z up to unit multiples, deterministic order."""
    divisors = [(1, 0)]
    for prime, exp in _gaussian_prime_factors(z):
        power = (1, 0)
        powers = []
        for _ in range(exp):
            power = _gi_mul(power, prime)
            powers.append(power)
        divisors = [d for d in divisors] + [
            _gi_canonical(_gi_mul(d, pw)) for d in divisors for pw in powers
        ]
    uniq = sorted(set(divisors), key=lambda d: (_gi_norm(d), d[0], d[1]))
    return uniq


_UNITS: list[GInt] = [(1, 0), (-1, 0), (0, 1), (0, -1)]


# ---------------------------------------------------------------------------
# root search

def _primitive_gaussian_integer_coeffs(p: Polynomial) -> list[GInt]:
    """Scale p so its coefficients lie in Z[i] with trivial common divisor."""
    denom = 1
    for c in p.coeffs:
        denom = denom * (c.re_den // math.gcd(denom, c.re_den))
        denom = denom * (c.im_den // math.gcd(denom, c.im_den))
    coeffs = [
        (c.re_num * (denom // c.re_den), c.im_num * (denom // c.im_den))
        for c in p.coeffs
    ]
    content = (0, 0)
    for c in coeffs:
        content = _gi_gcd(content, c)
    if content not in ((0, 0), (1, 0)):
        coeffs = [_gi_divmod(c, content)[0] for c in coeffs]
    return coeffs


def _gi_poly_eval(coeffs: list[GInt], z: GInt) -> GInt:
    acc = (0, 0)
    for c in reversed(coeffs):
        acc = _gi_mul(acc, z)
        acc = (acc[0] + c[0], acc[1] + c[1])
    return acc


def _gi_to_gr(z: GInt) -> GaussianRational:
    return gr(z[0], z[1])


def _fraction_sqrt(f: Fraction) -> Fraction | None:
    if f < 0:
        return None
    rn = math.isqrt(f.numerator)
    rd = math.isqrt(f.denominator)
    if rn * rn == f.numerator and rd * rd == f.denominator:
        return Fraction(rn, rd)
    return None


def gaussian_sqrt(z: GaussianRational) -> GaussianRational | None:
    """An exact square root of z in Q(i), or None when none exists."""
    if z.is_zero:
        return gr(0)
    s = _fraction_sqrt(z.norm())
    if s is None:
        return None
    x = _fraction_sqrt((z.re + s) / 2)
    if x is None:
        return None
    if x:
        return GaussianRational(x, z.im / (2 * x))
    y = _fraction_sqrt((s - z.re) / 2)
    if y is None:
        return None
    return GaussianRational(0, y)


def _quadratic_roots(f: Polynomial) -> list[GaussianRational]:
    """Exact Q(i) roots of a quadratic; in Q(i) either both roots or none lie there."""
    c0, c1, c2 = f.coeffs
    disc = c1 * c1 - gr(4) * c2 * c0
    s = gaussian_sqrt(disc)
    if s is None:
        return []
    half = gr(1) / (gr(2) * c2)
    roots = [(-c1 + s) * half]
    if s:
        roots.append((-c1 - s) * half)
    return roots


# Cheap candidates tried before the full divisor search; most determinant
# polynomials arising from generated pencils deflate completely here.
_GRID: list[GaussianRational] = [
    gr(a, b)
    for a in (0, 1, -1, 2, -2, 3, -3)
    for b in (0, 1, -1, 2, -2)
] + [
    gr(Fraction(1, 2)),
    gr(Fraction(-1, 2)),
    gr(Fraction(3, 2)),
    gr(Fraction(-3, 2)),
    gr(0, Fraction(1, 2)),
    gr(0, Fraction(-1, 2)),
    gr(Fraction(1, 2), Fraction(1, 2)),
    gr(Fraction(-1, 2), Fraction(1, 2)),
    gr(Fraction(1, 2), Fraction(-1, 2)),
    gr(Fraction(-1, 2), Fraction(-1, 2)),
    gr(Fraction(1, 3)),
    gr(Fraction(-1, 3)),
]


def _roots_of_squarefree(f: Polynomial) -> list[GaussianRational]:
    """All Q(i) roots of a square-free nonconstant f with f(0) != 0."""
    roots: list[GaussianRational] = []
    if f.degree > 2:
        for cand in _GRID:
            if f.degree <= 2:
                break
            if f.evaluate(cand).is_zero:
                roots.append(cand)
                f = f.exact_div(Polynomial.linear_root(cand))
    if f.degree == 1:
        return roots + [-(f.coeffs[0] / f.coeffs[1])]
    if f.degree == 2:
        return roots + _quadratic_roots(f)
    coeffs = _primitive_gaussian_integer_coeffs(f)
    trailing, leading = coeffs[0], coeffs[-1]
    at_one = _gi_poly_eval(coeffs, (1, 0))
    at_minus_one = _gi_poly_eval(coeffs, (-1, 0))
    n_one = _gi_norm(at_one)
    n_minus_one = _gi_norm(at_minus_one)
    denominators = _gi_divisors(leading)
    numerators = _gi_divisors(trailing)
    seen: set[tuple[Fraction, Fraction]] = set()
    for b in denominators:
        for a0 in numerators:
            if _gi_gcd(a0, b) not in _UNITS:
                continue
            for unit in _UNITS:
                a = _gi_mul(a0, unit)
                # (b*x - a) divides f, so (b - a) | f(1) and (b + a) | f(-1).
                d1 = (b[0] - a[0], b[1] - a[1])
                if n_one and (d1 == (0, 0) or n_one % _gi_norm(d1) or not _gi_divides(d1, at_one)):
                    continue
                d2 = (b[0] + a[0], b[1] + a[1])
                if n_minus_one and (d2 == (0, 0) or n_minus_one % _gi_norm(d2) or not _gi_divides(d2, at_minus_one)):
                    continue
                cand = _gi_to_gr(a) / _gi_to_gr(b)
                key = (cand.re, cand.im)
                if key in seen:
                    continue
                seen.add(key)
                if f.evaluate(cand).is_zero:
                    roots.append(cand)
    return roots


def gaussian_rational_roots(
    p: Polynomial,
) -> tuple[tuple[tuple[GaussianRational, int], ...], Polynomial]:
    """All roots of p in Q(i) with multiplicities, plus the rootless residual.

    The identity p = prod (x - r_i)^{m_i} * residual holds exactly; the
    residual keeps p's leading scale and has no roots in Q(i).
    """
    if p.is_zero:
        raise ZeroPolynomialError("cannot extract roots of the zero polynomial")
    roots: list[tuple[GaussianRational, int]] = []
    zero_mult = next(k for k, c in enumerate(p.coeffs) if c)
    if zero_mult:
        roots.append((gr(0), zero_mult))
        p = Polynomial(p.coeffs[zero_mult:])
    lead, factors = squarefree_decomposition(p)
    residual = Polynomial.constant(lead)
    for f, mult in factors:
        found = _roots_of_squarefree(f)
        for r in found:
            roots.append((r, mult))
            f = f.exact_div(Polynomial.linear_root(r))
        if f.degree > 0:
            residual = residual * f**mult
    roots.sort(key=lambda rm: lex_key(rm[0]))
    return tuple(roots), residual
