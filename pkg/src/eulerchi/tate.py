"""Tate's algorithm: reduction type, Kodaira symbol, Tamagawa number at a prime.

The classical algorithm, implemented for all primes including 2 and 3.
Root finding modulo p is done by direct scans (bad primes are small in
practice), and every divisibility the algorithm relies on is asserted, so a
bookkeeping mistake fails loudly instead of misclassifying.
"""

from __future__ import annotations

from functools import lru_cache

from .curves import (
    CurveModel,
    LocalData,
    ReductionType,
    bad_primes,
    count_points,
    minimal_model_at,
    valuation_int,
)


def legendre(a: int, p: int) -> int:
    """Legendre symbol (a|p) for odd p."""
    a %= p
    if a == 0:
        return 0
    return 1 if pow(a, (p - 1) // 2, p) == 1 else -1


def _poly_roots(coeffs, p):
    """Roots in F_p of a polynomial given by coefficients, constant term first."""
    roots = []
    for x in range(p):
        acc = 0
        for c in reversed(coeffs):
            acc = (acc * x + c) % p
        if acc == 0:
            roots.append(x)
    return roots


def _quadratic_component_count(a: int, b: int, c: int, p: int, split_value: int) -> int:
    """split_value if a x^2 + b x + c has two roots in F_p, else the non-split count."""
    if p == 2:
        nroots = len(_poly_roots([c, b, a], 2))
    else:
        disc = (b * b - 4 * a * c) % p
        nroots = 2 if legendre(disc, p) == 1 else 0
    nonsplit = {4: 2, 3: 1}[split_value]
    return split_value if nroots == 2 else nonsplit


def _singular_point(E: CurveModel, p: int) -> tuple[int, int]:
    """The unique singular point of the reduction mod p (p divides disc)."""
    a1, a2, a3, a4, a6 = E.ainvs
    if p == 2:
        candidates = [(x, y) for x in range(2) for y in range(2)]
    else:
        inv2 = pow(2, -1, p)
        candidates = [(x, (-(a1 * x + a3) * inv2) % p) for x in range(p)]
    for x, y in candidates:
        fval = (y * y + a1 * x * y + a3 * y - (x ** 3 + a2 * x * x + a4 * x + a6)) % p
        fx = (a1 * y - (3 * x * x + 2 * a2 * x + a4)) % p
        fy = (2 * y + a1 * x + a3) % p
        if fval == 0 and fx == 0 and fy == 0:
            return x, y
    raise AssertionError(f"no singular point mod {p} found for {E.label}")


def _vp(n: int, p: int) -> int:
    # valuation with v(0) treated as "very large"
    return 10 ** 9 if n == 0 else valuation_int(n, p)


def _normalize_additive(E: CurveModel, p: int) -> CurveModel:
    """Coordinate change so that p | a1, a2; p^2 | a3, a4; p^3 | a6.

    Assumes the singular point is at the origin and steps II/III/IV have been
    ruled out. For odd p explicit shifts suffice; for p = 2 a small search
    over (r, s, t) is used.
    """
    if p != 2:
        inv2 = pow(2, -1, p ** 3)
        E = E.rst_transform(0, (-E.a1 * inv2) % p ** 3, 0)
        E = E.rst_transform(0, 0, (-E.a3 * inv2) % p ** 3)
    else:
        found = None
        for s in range(2):
            for r in range(0, 16, 2):
                for t in range(16):
                    C = E.rst_transform(r, s, t)
                    if (C.a1 % p == 0 and C.a2 % p == 0 and C.a3 % p ** 2 == 0
                            and C.a4 % p ** 2 == 0 and C.a6 % p ** 3 == 0):
                        found = C
                        break
                if found:
                    break
            if found:
                break
        assert found is not None, f"additive normalization failed at 2 for {E.label}"
        E = found
    assert E.a1 % p == 0 and E.a2 % p == 0, "normalization: a1, a2"
    assert E.a3 % p ** 2 == 0 and E.a4 % p ** 2 == 0, "normalization: a3, a4"
    assert E.a6 % p ** 3 == 0, "normalization: a6"
    return E


def _cubic_root_structure(A: int, B: int, C: int, p: int):
    """Root structure of T^3 + A T^2 + B T + C mod p.

    Returns ("distinct", roots_in_Fp), ("double", theta, phi) or ("triple", theta).
    A repeated root of a cubic over F_p always lies in F_p.
    """
    disc = (18 * A * B * C - 4 * A ** 3 * C + A * A * B * B - 4 * B ** 3 - 27 * C * C) % p
    roots = _poly_roots([C, B, A, 1], p)
    if disc != 0:
        return ("distinct", roots)
    for theta in roots:
        # multiplicity of theta: evaluate derivative and second factor
        d1 = (3 * theta * theta + 2 * A * theta + B) % p
        if d1 == 0:
            d2 = (6 * theta + 2 * A) % p
            if d2 == 0 and (-3 * theta - A) % p == 0:
                return ("triple", theta)
            phi = (-A - 2 * theta) % p
            return ("double", theta, phi)
    raise AssertionError("cubic with vanishing discriminant but no repeated root")


@lru_cache(maxsize=None)
def tate_algorithm(E: CurveModel, p: int) -> LocalData:
    """Full local classification of E at p: Kodaira type, c_p, a_p, f_p."""
    E = minimal_model_at(E, p)
    disc = E.discriminant
    if disc % p != 0:
        count, a_p = count_points(E, p)
        return LocalData(p, ReductionType.GOOD, "I0", 1, a_p, 0, count)
    n = valuation_int(disc, p)

    # move the singular point of the reduction to (0, 0)
    x0, y0 = _singular_point(E, p)
    E = E.rst_transform(x0, 0, y0)
    assert E.a3 % p == 0 and E.a4 % p == 0 and E.a6 % p == 0

    if E.b2 % p != 0:
        # multiplicative: type I_n; tangent directions at the node are the
        # roots of T^2 + a1 T - a2, whose discriminant is b2
        if p == 2:
            split = E.a2 % 2 == 0
        else:
            split = legendre(E.b2, p) == 1
        if split:
            return LocalData(p, ReductionType.SPLIT, f"I{n}", n, 1, 1)
        c = 2 if n % 2 == 0 else 1
        return LocalData(p, ReductionType.NONSPLIT, f"I{n}", c, -1, 1)

    # additive from here on
    if E.a6 % p ** 2 != 0:
        return LocalData(p, ReductionType.ADDITIVE, "II", 1, 0, n)
    if E.b8 % p ** 3 != 0:
        return LocalData(p, ReductionType.ADDITIVE, "III", 2, 0, n - 1)
    if E.b6 % p ** 3 != 0:
        c = _quadratic_component_count(1, E.a3 // p, -(E.a6 // p ** 2), p, 3)
        return LocalData(p, ReductionType.ADDITIVE, "IV", c, 0, n - 2)

    E = _normalize_additive(E, p)

    # cubic T^3 + a2,1 T^2 + a4,2 T + a6,3 governs the remaining types
    A, B, C = E.a2 // p, E.a4 // p ** 2, E.a6 // p ** 3
    structure = _cubic_root_structure(A % p, B % p, C % p, p)

    if structure[0] == "distinct":
        c = 1 + len(structure[1])
        return LocalData(p, ReductionType.ADDITIVE, "I0*", c, 0, n - 4)

    if structure[0] == "double":
        # type I_m*: shift the double root to 0 and run the subloop
        theta = structure[1]
        E = E.rst_transform(p * theta, 0, 0)
        assert E.a2 % p != 0 or valuation_int(E.a2, p) == 1
        assert _vp(E.a4, p) >= 3 and _vp(E.a6, p) >= 4
        m = 1
        mx, my = p * p, p * p
        while True:
            a2t = E.a2 // p
            a3t = E.a3 // my
            a6t = E.a6 // (mx * my)
            if (a3t * a3t + 4 * a6t) % p != 0:
                c = _quadratic_component_count(1, a3t, -a6t, p, 4)
                break
            # double root of Y^2 + a3t Y - a6t: kill it with a t-shift
            if p == 2:
                yd = a6t % p
            else:
                yd = (-a3t * pow(2, -1, p)) % p
            E = E.rst_transform(0, 0, my * yd)
            my *= p
            m += 1
            a4t = E.a4 // (p * mx)
            a6t = E.a6 // (mx * my)
            if (a4t * a4t - 4 * a2t * a6t) % p != 0:
                c = _quadratic_component_count(a2t, a4t, a6t, p, 4)
                break
            # double root of a2t X^2 + a4t X + a6t: kill it with an r-shift
            if p == 2:
                xd = (a6t * a2t) % p
            else:
                xd = (-a4t * pow(2 * a2t, -1, p)) % p
            E = E.rst_transform(mx * xd, 0, 0)
            mx *= p
            m += 1
        return LocalData(p, ReductionType.ADDITIVE, f"I{m}*", c, 0, n - 4 - m)

    # triple root: shift it to 0
    theta = structure[1]
    E = E.rst_transform(p * theta, 0, 0)
    assert _vp(E.a2, p) >= 2 and _vp(E.a4, p) >= 3 and _vp(E.a6, p) >= 4

    a3t = E.a3 // p ** 2
    a6t = E.a6 // p ** 4
    if (a3t * a3t + 4 * a6t) % p != 0:
        c = _quadratic_component_count(1, a3t, -a6t, p, 3)
        return LocalData(p, ReductionType.ADDITIVE, "IV*", c, 0, n - 6)

    # kill the double root of Y^2 + a3t Y - a6t
    if p == 2:
        yd = a6t % p
    else:
        yd = (-a3t * pow(2, -1, p)) % p
    E = E.rst_transform(0, 0, p ** 2 * yd)
    assert _vp(E.a3, p) >= 3 and _vp(E.a6, p) >= 5

    if E.a4 % p ** 4 != 0:
        return LocalData(p, ReductionType.ADDITIVE, "III*", 2, 0, n - 7)
    if E.a6 % p ** 6 != 0:
        return LocalData(p, ReductionType.ADDITIVE, "II*", 1, 0, n - 8)

    raise AssertionError(f"{E.label} at {p}: model should have been minimal")


def tamagawa_product(E: CurveModel) -> int:
    """tau(E) = product of the Tamagawa numbers c_l over all primes."""
    out = 1
    for l in bad_primes(E):
        out *= tate_algorithm(E, l).tamagawa
    return out


def conductor(E: CurveModel) -> int:
    """The conductor, assembled from Tate's algorithm at each bad prime."""
    out = 1
    for l in bad_primes(E):
        out *= l ** tate_algorithm(E, l).conductor_exponent
    return out
