# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled multiplication kernel; API-identical twin of _poly_py.

Packed monomials stay Python ints (they can exceed 64 bits for wide
rings), but degrees and odd-generator bitmasks fit comfortably in C
integers, so the pairwise loop, cap pruning and Koszul sign run at C
speed.  Coefficients are scaled to ints over a common denominator and
rebuilt as Fractions once per output term.
"""

from fractions import Fraction
from math import lcm

KERNEL_NAME = "cython"

cdef enum:
    FIELD_BITS = 16
    FIELD_MASK = (1 << FIELD_BITS) - 1


cdef inline int _popcount(unsigned long long v) noexcept:
    cdef int c = 0
    while v:
        v &= v - 1
        c += 1
    return c


cdef _prepare(dict terms, tuple degrees, tuple odd_mask_by_gen):
    cdef object den = 1
    cdef object coef
    for coef in terms.values():
        den = lcm(den, coef.denominator)
    monos = []
    degs = []
    odds = []
    nums = []
    cdef long long deg
    cdef unsigned long long odd
    cdef int i
    cdef object mono, m
    cdef long long e
    for mono, coef in terms.items():
        deg = 0
        odd = 0
        m = mono
        i = 0
        while m:
            e = m & FIELD_MASK
            if e:
                deg += e * <long long> degrees[i]
                if odd_mask_by_gen[i]:
                    odd |= <unsigned long long> odd_mask_by_gen[i]
            m >>= FIELD_BITS
            i += 1
        monos.append(mono)
        degs.append(deg)
        odds.append(odd)
        nums.append(coef.numerator * (den // coef.denominator))
    order = sorted(range(len(monos)), key=degs.__getitem__)
    return (
        den,
        [monos[j] for j in order],
        [degs[j] for j in order],
        [odds[j] for j in order],
        [nums[j] for j in order],
    )


cdef inline bint _koszul_negative(unsigned long long odd_a, unsigned long long odd_b) noexcept:
    cdef int swaps = 0
    cdef unsigned long long m = odd_b
    cdef unsigned long long low
    cdef int i
    while m:
        low = m & (~m + 1)
        i = 0
        while not (low & 1):
            low >>= 1
            i += 1
        swaps += _popcount(odd_a >> (i + 1))
        m &= m - 1
    return swaps & 1


def mul_terms(dict terms_a, dict terms_b, tuple degrees, tuple odd_mask_by_gen, long long cap):
    """See _poly_py.mul_terms; identical contract."""
    if not terms_a or not terms_b:
        return {}
    den_a, monos_a, degs_a, odds_a, nums_a = _prepare(terms_a, degrees, odd_mask_by_gen)
    den_b, monos_b, degs_b, odds_b, nums_b = _prepare(terms_b, degrees, odd_mask_by_gen)
    cdef dict acc = {}
    cdef Py_ssize_t ia, ib, na, nb
    na = len(monos_a)
    nb = len(monos_b)
    cdef long long deg_a, deg_b, room
    cdef unsigned long long odd_a, odd_b
    cdef object mono_a, num_a, n, m, prev
    cdef long long first_b = degs_b[0]
    for ia in range(na):
        deg_a = degs_a[ia]
        room = cap - deg_a
        if first_b > room:
            break
        mono_a = monos_a[ia]
        odd_a = odds_a[ia]
        num_a = nums_a[ia]
        for ib in range(nb):
            deg_b = degs_b[ib]
            if deg_b > room:
                break
            odd_b = odds_b[ib]
            if odd_a & odd_b:
                continue
            n = num_a * nums_b[ib]
            if odd_b and _koszul_negative(odd_a, odd_b):
                n = -n
            m = mono_a + monos_b[ib]
            prev = acc.get(m)
            if prev is None:
                acc[m] = n
            else:
                acc[m] = prev + n
    cdef object den = den_a * den_b
    cdef dict out = {}
    for m, n in acc.items():
        if n:
            out[m] = Fraction(n, den)
    return out
