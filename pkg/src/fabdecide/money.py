"""Exact money arithmetic in integer minor units, plus currency conversion.

Amounts never touch binary floating point: a ``Money`` is an integer count
of minor units (cents, piastres, ...) and conversions apply a ``Decimal``
exchange rate with a single round-half-up at the output, so converted
figures reproduce to the cent on every run.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from decimal import Decimal, InvalidOperation, ROUND_HALF_UP, localcontext


class MoneyError(ValueError):
    """Base class for money and exchange-rate problems."""


class CurrencyMismatchError(MoneyError):
    """Arithmetic or conversion attempted across different currencies."""


class RateError(MoneyError):
    """Bad exchange-rate data (unknown pair, duplicate pair, bad value)."""


class RateParseError(RateError):
    """Rate snapshot document could not be parsed."""


_CURRENCY_RE = re.compile(r"^[A-Z]{3}$")

# ISO 4217 minor-unit exponents.  Every currency this toolkit ships data
# for uses 2; the map exists so a 0- or 3-exponent currency cannot be
# silently mis-scaled later.
_MINOR_EXPONENTS = {"USD": 2, "EUR": 2, "EGP": 2, "JPY": 0, "TND": 3}
_DEFAULT_EXPONENT = 2


def minor_unit_exponent(currency: str) -> int:
    return _MINOR_EXPONENTS.get(currency, _DEFAULT_EXPONENT)


@dataclass(frozen=True, order=False)
class Money:
    """An exact amount: integer minor units plus an ISO-4217 code."""

    amount_minor: int
    currency: str

    def __post_init__(self) -> None:
        if not isinstance(self.amount_minor, int) or isinstance(self.amount_minor, bool):
            raise MoneyError(f"amount_minor must be an integer, got {self.amount_minor!r}")
        if not isinstance(self.currency, str) or not _CURRENCY_RE.match(self.currency):
            raise MoneyError(f"currency must be a 3-letter uppercase code, got {self.currency!r}")

    @classmethod
    def from_major(cls, text: str | int | Decimal, currency: str) -> "Money":
        """Build from a major-unit decimal string such as ``"1100.00"``."""
        try:
            value = Decimal(str(text))
        except InvalidOperation as exc:
            raise MoneyError(f"bad amount {text!r}") from exc
        exp = minor_unit_exponent(currency)
        minor = value.scaleb(exp)
        if minor != minor.to_integral_value():
            raise MoneyError(f"{text!r} has more precision than {currency} minor units")
        return cls(int(minor), currency)

    def as_decimal(self) -> Decimal:
        return Decimal(self.amount_minor).scaleb(-minor_unit_exponent(self.currency))

    def _check_same(self, other: "Money") -> None:
        if not isinstance(other, Money):
            raise TypeError(f"expected Money, got {type(other).__name__}")
        if other.currency != self.currency:
            raise CurrencyMismatchError(f"{self.currency} vs {other.currency}")

    def __add__(self, other: "Money") -> "Money":
        self._check_same(other)
        return Money(self.amount_minor + other.amount_minor, self.currency)

    def __sub__(self, other: "Money") -> "Money":
        self._check_same(other)
        return Money(self.amount_minor - other.amount_minor, self.currency)

    def __neg__(self) -> "Money":
        return Money(-self.amount_minor, self.currency)

    def __mul__(self, factor: int) -> "Money":
        if not isinstance(factor, int) or isinstance(factor, bool):
            raise TypeError("Money can only be scaled by an integer")
        return Money(self.amount_minor * factor, self.currency)

    __rmul__ = __mul__

    def __lt__(self, other: "Money") -> bool:
        self._check_same(other)
        return self.amount_minor < other.amount_minor

    def __le__(self, other: "Money") -> bool:
        self._check_same(other)
        return self.amount_minor <= other.amount_minor

    def __str__(self) -> str:
        exp = minor_unit_exponent(self.currency)
        if exp == 0:
            return f"{self.amount_minor} {self.currency}"
        unit = 10**exp
        sign = "-" if self.amount_minor < 0 else ""
        major, minor = divmod(abs(self.amount_minor), unit)
        return f"{sign}{major}.{minor:0{exp}d} {self.currency}"


def _significant_digits(value: Decimal) -> int:
    digits = value.as_tuple().digits
    # as_tuple never carries leading zeros; trailing zeros from the source
    # string are kept and count as significant.
    return len(digits)


@dataclass(frozen=True)
class ExchangeRate:
    """One directed conversion rate, pinned to a quote date."""

    from_currency: str
    to_currency: str
    rate: Decimal
    as_of: str

    def __post_init__(self) -> None:
        for code in (self.from_currency, self.to_currency):
            if not _CURRENCY_RE.match(code):
                raise RateError(f"bad currency code {code!r}")
        if not isinstance(self.rate, Decimal):
            object.__setattr__(self, "rate", Decimal(str(self.rate)))
        if self.rate <= 0:
            raise RateError(
                f"rate {self.from_currency}->{self.to_currency} must be positive, got {self.rate}"
            )
        if self.from_currency == self.to_currency:
            if self.rate != 1:
                raise RateError(f"identity pair {self.from_currency} must have rate 1")
        elif _significant_digits(self.rate) < 7:
            raise RateError(
                f"rate {self.from_currency}->{self.to_currency} carries fewer than "
                f"7 significant digits: {self.rate}"
            )


def convert(amount: Money, rate: ExchangeRate) -> Money:
    """Convert ``amount`` with one round-half-up at the target's minor unit."""
    if amount.currency != rate.from_currency:
        raise CurrencyMismatchError(
            f"amount is {amount.currency}, rate converts from {rate.from_currency}"
        )
    shift = minor_unit_exponent(rate.to_currency) - minor_unit_exponent(rate.from_currency)
    with localcontext() as ctx:
        ctx.prec = 60  # amounts * rates stay exact well past any realistic size
        raw = (Decimal(amount.amount_minor) * rate.rate).scaleb(shift)
        minor = raw.quantize(Decimal(1), rounding=ROUND_HALF_UP)
    return Money(int(minor), rate.to_currency)


class RateTable:
    """Immutable set of exchange rates keyed by (from, to).

    Identity pairs (X, X, 1) are implicit and need not be loaded.
    """

    def __init__(self, rates: list[ExchangeRate] | tuple[ExchangeRate, ...] = (), as_of: str = ""):
        table: dict[tuple[str, str], ExchangeRate] = {}
        for rate in rates:
            key = (rate.from_currency, rate.to_currency)
            if key in table:
                raise RateError(f"duplicate rate for pair {key[0]}->{key[1]}")
            table[key] = rate
        self._rates = table
        self.as_of = as_of

    def __len__(self) -> int:
        return len(self._rates)

    def __iter__(self):
        return iter(self._rates.values())

    def get(self, from_currency: str, to_currency: str) -> ExchangeRate:
        if from_currency == to_currency:
            return ExchangeRate(from_currency, to_currency, Decimal(1), self.as_of)
        try:
            return self._rates[(from_currency, to_currency)]
        except KeyError:
            raise RateError(f"no rate for {from_currency}->{to_currency}") from None

    def convert(self, amount: Money, to_currency: str) -> Money:
        return convert(amount, self.get(amount.currency, to_currency))


def load_rates(snapshot: bytes | str) -> RateTable:
    """Parse a rate snapshot document into a :class:`RateTable`.

    Expected shape::

        {"as_of": "YYYY-MM-DD",
         "rates": [{"from": "USD", "to": "EGP", "rate": "19.1516000"}]}

    Rates are decimal strings so the snapshot survives JSON round-trips
    without binary-float corruption.
    """
    if isinstance(snapshot, bytes):
        snapshot = snapshot.decode("utf-8")
    try:
        doc = json.loads(snapshot)
    except json.JSONDecodeError as exc:
        raise RateParseError(f"snapshot is not valid JSON: {exc}") from exc
    if not isinstance(doc, dict) or "rates" not in doc:
        raise RateParseError("snapshot must be an object with a 'rates' list")
    as_of = doc.get("as_of", "")
    entries = doc["rates"]
    if not isinstance(entries, list):
        raise RateParseError("'rates' must be a list")
    rates = []
    for i, entry in enumerate(entries):
        if not isinstance(entry, dict) or set(entry) != {"from", "to", "rate"}:
            raise RateParseError(f"rate entry {i} must have exactly from/to/rate")
        try:
            value = Decimal(str(entry["rate"]))
        except InvalidOperation as exc:
            raise RateParseError(f"rate entry {i}: bad decimal {entry['rate']!r}") from exc
        rates.append(ExchangeRate(entry["from"], entry["to"], value, as_of))
    return RateTable(rates, as_of=as_of)
