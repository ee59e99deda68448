"""Exact arithmetic on doubles.

Every finite double is an integer times a power of two, so weighted sums of
products of doubles can be carried out exactly with Python ints and rounded
once at the end. This is much cheaper than ``fractions.Fraction`` because no
gcd reduction is ever needed.
"""


def dyadic(values):
    """Return ``(ints, shift)`` with ``values[i] == ints[i] / 2**shift`` exactly."""
    pairs = [float(v).as_integer_ratio() for v in values]
    shift = max((d.bit_length() - 1 for _, d in pairs), default=0)
    ints = [n << (shift - (d.bit_length() - 1)) for n, d in pairs]
    return ints, shift


def exact_dot(*columns):
    """Correctly rounded ``sum(a[i] * b[i] * ...)`` for finite doubles."""
    converted = [dyadic(c) for c in columns]
    shift = sum(s for _, s in converted)
    num = 0
    for row in zip(*(ints for ints, _ in converted)):
        p = 1
        for x in row:
            p *= x
        num += p
    return num / (1 << shift)


def exact_abs_dot(a, b):
    """Correctly rounded ``sum(a[i] * |b[i]|)``."""
    return exact_dot(a, [abs(x) for x in b])


class QuotientKernel:
    """Exact evaluation of ``(sum w |f + t h| - sum w |f|) / t`` for many ``t``.

    The weights, base point and direction are converted to integers once; each
    call then costs a handful of big-int operations per atom.
    """

    def __init__(self, weights, f, h):
        self._w, self._sw = dyadic(weights)
        fh, self._sfh = dyadic(list(f) + list(h))
        n = len(f)
        self._f, self._h = fh[:n], fh[n:]

    def __call__(self, t):
        if t == 0:
            raise ZeroDivisionError("t must be nonzero")
        num, den = float(t).as_integer_ratio()
        # f + t h == (F*den + num*H) / (2**sfh * den)
        total = 0
        for w, f, h in zip(self._w, self._f, self._h):
            if h:
                total += w * (abs(f * den + num * h) - abs(f) * den)
        # divide by t == num / den: the den factors cancel
        return total / (num << (self._sw + self._sfh))
