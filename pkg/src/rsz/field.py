"""Exact coefficient fields: the rationals and prime fields F_p (p < 2**16)."""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction

from .errors import InputError


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    i = 2
    while i * i <= n:
        if n % i == 0:
            return False
        i += 1
    return True


@dataclass(frozen=True)
class FieldSpec:
    kind: str  # "Q" or "Fp"
    p: int | None = None

    def __post_init__(self):
        if self.kind == "Q":
            if self.p is not None:
                raise InputError("the rationals take no modulus")
        elif self.kind == "Fp":
            if self.p is None or not _is_prime(self.p) or self.p >= 2**16:
                raise InputError(f"F_p needs a prime p < 2**16, got {self.p!r}")
        else:
            raise InputError(f"unknown field kind {self.kind!r}")

    @property
    def characteristic(self) -> int:
        return 0 if self.kind == "Q" else self.p

    @property
    def zero(self):
        return Fraction(0) if self.kind == "Q" else 0

    @property
    def one(self):
        return Fraction(1) if self.kind == "Q" else 1

    def __call__(self, x):
        """Coerce an int, Fraction or string like ``"-3/4"`` into the field."""
        if self.kind == "Q":
            try:
                return Fraction(x)
            except (ValueError, ZeroDivisionError) as exc:
                raise InputError(f"bad rational {x!r}") from exc
        if isinstance(x, str):
            try:
                x = Fraction(x)
            except (ValueError, ZeroDivisionError) as exc:
                raise InputError(f"bad element {x!r}") from exc
        if isinstance(x, Fraction):
            if x.denominator % self.p == 0:
                raise InputError(f"{x} is not defined mod {self.p}")
            return x.numerator * pow(x.denominator, -1, self.p) % self.p
        return int(x) % self.p

    def inv(self, x):
        if self.kind == "Q":
            return 1 / x
        return pow(x, -1, self.p)

    def add(self, x, y):
        return x + y if self.kind == "Q" else (x + y) % self.p

    def sub(self, x, y):
        return x - y if self.kind == "Q" else (x - y) % self.p

    def mul(self, x, y):
        return x * y if self.kind == "Q" else x * y % self.p

    def neg(self, x):
        return -x if self.kind == "Q" else (-x) % self.p

    def format(self, x) -> str:
        if self.kind == "Q":
            return str(x)  # Fraction prints as "a/b" or "a"
        return str(x)

    def elements(self):
        if self.kind == "Q":
            raise ValueError("the rationals are infinite")
        return range(self.p)

    def random(self, rng: random.Random, spread: int = 8):
        if self.kind == "Q":
            return Fraction(rng.randint(-spread, spread))
        return rng.randrange(self.p)

    def to_dict(self) -> dict:
        return {"kind": "Q"} if self.kind == "Q" else {"kind": "Fp", "p": self.p}

    @classmethod
    def from_dict(cls, data: dict) -> "FieldSpec":
        try:
            return cls(data["kind"], data.get("p"))
        except (KeyError, TypeError) as exc:
            raise InputError(f"bad field spec {data!r}") from exc

    def __str__(self):
        return "Q" if self.kind == "Q" else f"F_{self.p}"


QQ = FieldSpec("Q")
F2 = FieldSpec("Fp", 2)


def prime_field(p: int) -> FieldSpec:
    return FieldSpec("Fp", p)


def parse_field(text: str) -> FieldSpec:
    """CLI spelling: ``Q`` or ``F<p>`` / ``Fp:<p>``."""
    t = text.strip()
    if t in ("Q", "QQ", "rationals"):
        return QQ
    for prefix in ("Fp:", "F"):
        if t.startswith(prefix) and t[len(prefix):].isdigit():
            return prime_field(int(t[len(prefix):]))
    raise InputError(f"unknown field {text!r}")
