"""Exact rational scalars.

All coefficient arithmetic in this package runs on arbitrary-precision
rationals stored in lowest terms with a positive denominator.  gmpy2's
mpq is used when importable (noticeably faster on the big numerators
that show up in determinant expansions); fractions.Fraction is the
drop-in fallback.  The two types hash and compare interchangeably.
"""

try:
    from gmpy2 import mpq as QQ
except ImportError:
    from fractions import Fraction as QQ

QQ_ZERO = QQ(0)
QQ_ONE = QQ(1)


def rational_from_string(text: str):
    """Parse "num" or "num/den" into a rational."""
    return QQ(text.strip())


def rational_to_string(q) -> str:
    """Render in canonical "num" or "num/den" form."""
    if q.denominator == 1:
        return str(q.numerator)
    return "%d/%d" % (q.numerator, q.denominator)


def as_integer(q) -> int:
    """Return q as an int; raise if q is not integral."""
    if q.denominator != 1:
        raise ValueError("not an integer: %s" % (q,))
    return int(q.numerator)
