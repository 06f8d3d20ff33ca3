"""Text literals and structured (JSON-ready) forms.

=================  ==============================  ===================
value              text form                       example
=================  ==============================  ===================
rational           ``num/den`` or ``num``          ``-4/3``
approximation      ``e:d0,d1,...`` or ``zero``     ``0:1,1,0,1``
digit stream       ``e:pre|per`` or ``zero``       ``0:1|1,0``
element of Z[1/p]  ``m*p^k`` or ``0``              ``3*2^2``
continued fraction ``(e0,a0)(e1,a1)...``           ``(2,1)(1,1)``
=================  ==============================  ===================
"""

from __future__ import annotations

import re
from fractions import Fraction

from .conjugacy import FImage, IrrationalPreimage, PreimageClassification, RationalPreimage
from .dynamics import CFExpansion, CFPair, Terminal
from .errors import ParseError
from .padic_core import DigitStream, PAdicApprox, PrimeContext, canonical_stream

_INT = r"[+-]?\d+"
_RATIONAL_RE = re.compile(rf"\s*({_INT})\s*(?:/\s*(\d+)\s*)?")
_DYADIC_RE = re.compile(rf"\s*({_INT})\s*\*\s*(\d+)\s*\^\s*({_INT})\s*")
_PAIR_RE = re.compile(rf"\(\s*({_INT})\s*,\s*({_INT})\s*\)")


def parse_rational(text: str) -> Fraction:
    m = _RATIONAL_RE.fullmatch(text)
    if not m:
        raise ParseError(f"not a rational literal: {text!r}")
    num, den = int(m.group(1)), int(m.group(2) or 1)
    if den == 0:
        raise ParseError(f"zero denominator in {text!r}")
    return Fraction(num, den)


def format_rational(x: Fraction) -> str:
    return str(x)


def _parse_digits(ctx: PrimeContext, text: str) -> list[int]:
    text = text.strip()
    if not text:
        return []
    try:
        digits = [int(t) for t in text.split(",")]
    except ValueError:
        raise ParseError(f"bad digit list: {text!r}") from None
    for d in digits:
        if not 0 <= d < ctx.p:
            raise ParseError(f"digit {d} outside 0..{ctx.p - 1}")
    return digits


def _split_valuation(text: str) -> tuple[int, str]:
    head, sep, rest = text.partition(":")
    if not sep:
        raise ParseError(f"missing ':' in {text!r}")
    try:
        return int(head), rest
    except ValueError:
        raise ParseError(f"bad valuation in {text!r}") from None


def parse_approx(ctx: PrimeContext, text: str) -> PAdicApprox:
    text = text.strip()
    if text == "zero":
        return PAdicApprox.exact()
    e, rest = _split_valuation(text)
    digits = _parse_digits(ctx, rest)
    if digits and digits[0] == 0:
        raise ParseError("leading digit must be nonzero; shift it into the valuation")
    return PAdicApprox(e, tuple(digits))


def format_approx(a: PAdicApprox) -> str:
    if a.exact_zero:
        return "zero"
    return f"{a.valuation}:" + ",".join(map(str, a.digits))


def looks_like_approx(text: str) -> bool:
    return ":" in text or text.strip() == "zero"


def parse_stream(ctx: PrimeContext, text: str) -> DigitStream:
    text = text.strip()
    if text == "zero":
        return DigitStream.zero()
    e, rest = _split_valuation(text)
    pre, sep, per = rest.partition("|")
    if not sep:
        raise ParseError(f"missing '|' in {text!r}")
    period = _parse_digits(ctx, per)
    if not period:
        raise ParseError("period must be nonempty")
    return canonical_stream(e, _parse_digits(ctx, pre), period)


def format_stream(s: DigitStream) -> str:
    if s.is_zero:
        return "zero"
    return f"{s.valuation}:" + ",".join(map(str, s.preperiod)) + "|" + ",".join(map(str, s.period))


def parse_dyadic(ctx: PrimeContext, text: str) -> FImage:
    """Parse ``m*p^k``; a plain rational literal is accepted too."""
    m = _DYADIC_RE.fullmatch(text)
    if m:
        if int(m.group(2)) != ctx.p:
            raise ParseError(f"base {m.group(2)} does not match prime {ctx.p}")
        mant, k = int(m.group(1)), int(m.group(3))
        value = Fraction(mant) * Fraction(ctx.p) ** k
    else:
        value = parse_rational(text)
    return FImage.from_value(ctx, value)


def format_fimage(y: FImage) -> str:
    return str(y)


def parse_cf(ctx: PrimeContext, text: str) -> list[CFPair]:
    text = text.strip()
    pairs = []
    pos = 0
    for m in _PAIR_RE.finditer(text):
        if text[pos:m.start()].strip():
            raise ParseError(f"unexpected text in continued fraction: {text!r}")
        pairs.append(CFPair(int(m.group(1)), int(m.group(2))))
        pos = m.end()
    if text[pos:].strip():
        raise ParseError(f"unexpected text in continued fraction: {text!r}")
    return pairs


def format_cf(pairs) -> str:
    return "".join(str(pr) for pr in pairs)


def expansion_to_dict(expansion: CFExpansion) -> dict:
    if expansion.terminal is Terminal.TRUNCATED:
        terminal = {"truncated": format_rational(expansion.residual)}
    else:
        terminal = expansion.terminal.value
    return {"pairs": [[pr.e, pr.a] for pr in expansion.pairs], "terminal": terminal}


def expansion_from_dict(ctx: PrimeContext, data: dict) -> CFExpansion:
    pairs = tuple(CFPair(int(e), int(a)) for e, a in data["pairs"])
    terminal = data["terminal"]
    if isinstance(terminal, dict):
        return CFExpansion(pairs, Terminal.TRUNCATED, parse_rational(terminal["truncated"]))
    if terminal == "zero":
        return CFExpansion(pairs, Terminal.ZERO, Fraction(0))
    if terminal == "minus_p":
        return CFExpansion(pairs, Terminal.MINUS_P, Fraction(-ctx.p))
    raise ParseError(f"unknown terminal {terminal!r}")


def classification_to_dict(c: PreimageClassification) -> dict:
    if isinstance(c, RationalPreimage):
        return {"rational": format_rational(c.x)}
    return {"irrational": True}


def classification_from_dict(data: dict) -> PreimageClassification:
    if "rational" in data:
        return RationalPreimage(parse_rational(data["rational"]))
    if data.get("irrational") is True:
        return IrrationalPreimage()
    raise ParseError(f"not a classification: {data!r}")
