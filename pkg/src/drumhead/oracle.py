"""
Reference values for the uniform clamped membrane.

Bessel functions of the first kind are evaluated here without any
special-function library so that the reference spectrum does not share code
with the collocation solver.
"""

import math

from .errors import InvalidParameterError

MAX_ORDER = 12
MAX_ARG = 60.0
MAX_ZERO_INDEX = 20
# series below this argument, Miller recurrence above
_SERIES_LIMIT = 8.0


def _check_order(m):
    if int(m) != m or m < 0 or m > MAX_ORDER:
        raise InvalidParameterError(f"Bessel order must be an integer in [0, {MAX_ORDER}]")


def _series(m, x):
    half = 0.5 * x
    term = half**m / math.factorial(m)
    total = term
    q = -half * half
    k = 0
    while abs(term) > 1e-17 * max(abs(total), 1e-300):
        k += 1
        term *= q / (k * (k + m))
        total += term
        if k > 200:
            break
    return total


def _miller(m, x):
    # Backward recurrence J_{n-1} = (2n/x) J_n - J_{n+1} from a start far above
    # max(m, x), normalised with J_0 + 2 * sum_k J_{2k} = 1.
    start = 2 * ((max(m, int(x)) + 30 + int(math.sqrt(40 * max(m, x)))) // 2)
    j_next, j_cur = 0.0, 1e-300
    norm = 0.0
    result = 0.0
    for n in range(start, 0, -1):
        j_prev = (2.0 * n / x) * j_cur - j_next
        j_next, j_cur = j_cur, j_prev
        if abs(j_cur) > 1e250:
            j_cur *= 1e-250
            j_next *= 1e-250
            result *= 1e-250
            norm *= 1e-250
        if n - 1 == m:
            result = j_cur
        if (n - 1) % 2 == 0 and n - 1 > 0:
            norm += 2.0 * j_cur
    norm += j_cur
    return result / norm


def bessel_j(m: int, x: float) -> float:
    """J_m(x) for integer 0 <= m <= 12 and 0 <= x <= 60."""
    _check_order(m)
    if not 0 <= x <= MAX_ARG:
        raise InvalidParameterError(f"argument must lie in [0, {MAX_ARG}], got {x}")
    m = int(m)
    if x == 0:
        return 1.0 if m == 0 else 0.0
    if x < _SERIES_LIMIT:
        return _series(m, x)
    return _miller(m, x)


def _bisect(f, a, b):
    fa = f(a)
    for _ in range(200):
        c = 0.5 * (a + b)
        if c in (a, b):
            return c
        fc = f(c)
        if fc == 0:
            return c
        if (fa < 0) == (fc < 0):
            a, fa = c, fc
        else:
            b = c
    return 0.5 * (a + b)


def bessel_zero(m: int, n: int) -> float:
    """n-th positive zero of J_m, by sign-change bracketing and bisection.

    Zeros of J_m lie beyond m and are spaced by roughly pi, so a scan with
    step 0.25 cannot skip one.
    """
    _check_order(m)
    if int(n) != n or not 1 <= n <= MAX_ZERO_INDEX:
        raise InvalidParameterError(f"zero index must be in [1, {MAX_ZERO_INDEX}]")
    m, n = int(m), int(n)
    f = lambda x: bessel_j(m, x)
    step = 0.25
    a = max(float(m), step)
    fa = f(a)
    found = 0
    while a + step <= MAX_ARG:
        b = a + step
        fb = f(b)
        if fa == 0.0:
            found += 1
            if found == n:
                return a
        elif (fa < 0) != (fb < 0):
            found += 1
            if found == n:
                return _bisect(f, a, b)
        a, fa = b, fb
    raise InvalidParameterError(f"zero j_({m},{n}) lies beyond x = {MAX_ARG}")


def uniform_reference(count: int):
    """Smallest ``count`` uniform-membrane eigenvalues with (m, n) labels.

    Modes with m >= 1 appear twice (cos and sin partners).
    """
    if int(count) != count or not 1 <= count <= 25:
        raise InvalidParameterError("count must be an integer in [1, 25]")
    entries = []
    for m in range(0, 10):
        for n in range(1, 5):
            z = bessel_zero(m, n)
            entries.extend([(z, m, n)] * (1 if m == 0 else 2))
    entries.sort(key=lambda e: (e[0], e[1], e[2]))
    return entries[: int(count)]
