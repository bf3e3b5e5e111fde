"""Exact arithmetic in the rational group ring of a finite group.

Elements are finite formal sums ``sum a_g * g`` with reduced rational
coefficients.  The involution sends each group element to its inverse and
reverses products; the signed parts keep only positive (or only negative)
coefficients.  Coefficient denominators are expected to divide the group
order: direct construction enforces this, results of arithmetic merely log
a warning when they stray, so a rule that produces unexpected denominators
is caught without crashing mid-computation.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping, Union

from .groups import GroupElement, PermGroup, element_from_json

__all__ = ["GroupRingElement", "circ"]

log = logging.getLogger(__name__)

Scalar = Union[int, Fraction]


@dataclass(frozen=True)
class GroupRingElement:
    """A formal rational combination of group elements.

    Terms are stored sorted by the element sort key with zero coefficients
    dropped, so equality and hashing are structural.
    """

    group: PermGroup = field(compare=False)
    terms: tuple[tuple[GroupElement, Fraction], ...]

    @staticmethod
    def from_terms(
        group: PermGroup,
        coeffs: Mapping[GroupElement, Scalar] | Iterable[tuple[GroupElement, Scalar]],
        strict: bool = True,
    ) -> "GroupRingElement":
        """Normalize a coefficient mapping into an element.

        With ``strict`` every key must lie in the group and every reduced
        denominator must divide the group order; arithmetic uses the
        permissive path, which only logs when a denominator escapes.
        """
        items = coeffs.items() if isinstance(coeffs, Mapping) else coeffs
        acc: dict[GroupElement, Fraction] = {}
        for g, c in items:
            c = Fraction(c)
            if c == 0:
                continue
            acc[g] = acc.get(g, Fraction(0)) + c
        cleaned = {g: c for g, c in acc.items() if c != 0}
        for g, c in cleaned.items():
            if strict and g not in group:
                raise ValueError(f"{g} is not an element of the group")
            if group.order % c.denominator != 0:
                if strict:
                    raise ValueError(
                        f"coefficient denominator {c.denominator} does not divide group order {group.order}"
                    )
                log.warning(
                    "group ring coefficient denominator %d does not divide group order %d",
                    c.denominator,
                    group.order,
                )
        ordered = tuple(sorted(cleaned.items(), key=lambda t: t[0].sort_key()))
        return GroupRingElement(group, ordered)

    @staticmethod
    def zero(group: PermGroup) -> "GroupRingElement":
        return GroupRingElement(group, ())

    @staticmethod
    def one(group: PermGroup) -> "GroupRingElement":
        return GroupRingElement.from_terms(group, {group.identity: 1})

    @staticmethod
    def basis(group: PermGroup, g: GroupElement) -> "GroupRingElement":
        return GroupRingElement.from_terms(group, {g: 1})

    def coeff(self, g: GroupElement) -> Fraction:
        for h, c in self.terms:
            if h == g:
                return c
        return Fraction(0)

    def is_zero(self) -> bool:
        return not self.terms

    def is_integral(self) -> bool:
        return all(c.denominator == 1 for _, c in self.terms)

    def support(self) -> tuple[GroupElement, ...]:
        return tuple(g for g, _ in self.terms)

    def __add__(self, other: "GroupRingElement") -> "GroupRingElement":
        if not isinstance(other, GroupRingElement):
            return NotImplemented
        acc = dict(self.terms)
        for g, c in other.terms:
            acc[g] = acc.get(g, Fraction(0)) + c
        return GroupRingElement.from_terms(self.group, acc, strict=False)

    def __sub__(self, other: "GroupRingElement") -> "GroupRingElement":
        return self + (-other)

    def __neg__(self) -> "GroupRingElement":
        return GroupRingElement(self.group, tuple((g, -c) for g, c in self.terms))

    def __mul__(self, other: "GroupRingElement | Scalar") -> "GroupRingElement":
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        if not isinstance(other, GroupRingElement):
            return NotImplemented
        acc: dict[GroupElement, Fraction] = {}
        for g, a in self.terms:
            for h, b in other.terms:
                k = g * h
                acc[k] = acc.get(k, Fraction(0)) + a * b
        return GroupRingElement.from_terms(self.group, acc, strict=False)

    def __rmul__(self, other: Scalar) -> "GroupRingElement":
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        return NotImplemented

    def scale(self, c: Scalar) -> "GroupRingElement":
        c = Fraction(c)
        return GroupRingElement.from_terms(
            self.group, {g: a * c for g, a in self.terms}, strict=False
        )

    def involution(self) -> "GroupRingElement":
        """Send each group element to its inverse (reverses products)."""
        return GroupRingElement.from_terms(
            self.group, {g.inverse(): c for g, c in self.terms}, strict=False
        )

    def positive_part(self) -> "GroupRingElement":
        return GroupRingElement(self.group, tuple((g, c) for g, c in self.terms if c > 0))

    def negative_part(self) -> "GroupRingElement":
        return GroupRingElement(self.group, tuple((g, c) for g, c in self.terms if c < 0))

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts: list[str] = []
        for g, c in self.terms:
            mag = abs(c)
            if g.is_identity():
                body = str(mag)
            elif mag == 1:
                body = str(g)
            else:
                body = f"{mag}*{g}"
            if not parts:
                parts.append(body if c > 0 else f"-{body}")
            else:
                parts.append(("+ " if c > 0 else "- ") + body)
        return " ".join(parts)

    def to_json(self) -> dict:
        return {
            "terms": [
                {"g": g.to_json(), "num": c.numerator, "den": c.denominator}
                for g, c in self.terms
            ]
        }

    @staticmethod
    def from_json(group: PermGroup, data: dict) -> "GroupRingElement":
        coeffs = {
            element_from_json(t["g"]): Fraction(int(t["num"]), int(t["den"]))
            for t in data["terms"]
        }
        return GroupRingElement.from_terms(group, coeffs)


def circ(a: GroupRingElement, b: GroupRingElement) -> GroupRingElement:
    """Signed product: positive parts multiplied minus negative parts multiplied."""
    return a.positive_part() * b.positive_part() - a.negative_part() * b.negative_part()
