"""Splitting of Frobenius pushforwards of line bundles into line bundles.

On a smooth complete toric variety the pushforward of O(D) along the q-power
Frobenius (q = p^n) splits as a direct sum of line bundles indexed by the
residues of characters mod q.  The explicit residue formula used here is
never trusted on its own: every public decomposition is certified against the
projection formula, which determines the class multiset through the exact
cohomology of twists.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product

from .cohomology import cohomology, cohomology_of_class
from .fan import Divisor, DivisorClass, Fan, InvariantViolation, class_of
from .linalg import is_prime


class OracleMismatch(InvariantViolation):
    """A decomposition failed its projection-formula certification."""


@dataclass(frozen=True)
class FrobeniusOrder:
    """The q = p^n power Frobenius.  n = 0 is allowed and means the identity."""

    p: int
    n: int = 1

    def __post_init__(self):
        if not is_prime(self.p):
            raise ValueError(f"p = {self.p} is not prime")
        if self.n < 0:
            raise ValueError("n must be >= 0")

    @property
    def q(self) -> int:
        return self.p**self.n


@dataclass
class Decomposition:
    """Multiset of line bundle classes of a split Frobenius pushforward.

    ``entries`` maps each class to its multiplicity; ``witnesses`` keeps one
    residue u and the divisor it produced, per class.
    """

    fan: Fan
    divisor: Divisor
    order: FrobeniusOrder
    entries: dict
    witnesses: dict = field(repr=False)
    certified: bool = False

    @property
    def rank(self) -> int:
        return sum(self.entries.values())

    def sorted_entries(self):
        return sorted(self.entries.items(), key=lambda kv: kv[0], reverse=True)


def _dot(u, v) -> int:
    return sum(a * b for a, b in zip(u, v))


def _raw_decompose(fan: Fan, divisor, order: FrobeniusOrder):
    q = order.q
    entries: dict = {}
    witnesses: dict = {}
    for u in product(range(q), repeat=fan.dim):
        coeffs = tuple((a + _dot(u, ray)) // q for a, ray in zip(divisor, fan.rays))
        cls = class_of(fan, coeffs)
        entries[cls] = entries.get(cls, 0) + 1
        witnesses.setdefault(cls, (u, coeffs))
    return entries, witnesses


def default_test_divisors(fan: Fan):
    """Test twists {0, +-H_j, K, -K} with H_j the Picard coordinate divisors."""
    out = [fan.zero_divisor()]
    for j in range(fan.pic_rank):
        e = [0] * fan.pic_rank
        e[j] = 1
        h = fan.divisor_of_class(DivisorClass(tuple(e)))
        out.append(h)
        out.append(tuple(-a for a in h))
    k = fan.canonical_divisor()
    out.append(k)
    out.append(tuple(-a for a in k))
    return out


def frobenius_decompose(
    fan: Fan, divisor, order: FrobeniusOrder, certify: bool = True
) -> Decomposition:
    """Split the q-power Frobenius pushforward of O(D) into line bundles.

    With ``certify`` the class multiset is checked against the projection
    formula over the default test twists; a failure raises OracleMismatch and
    indicates an implementation bug, never bad user input.
    """
    divisor = tuple(divisor)
    if len(divisor) != len(fan.rays):
        raise ValueError("divisor length does not match number of rays")
    entries, witnesses = _raw_decompose(fan, divisor, order)
    dec = Decomposition(
        fan=fan, divisor=divisor, order=order, entries=entries, witnesses=witnesses
    )
    if certify:
        if not verify_projection_formula(dec):
            raise OracleMismatch(
                f"projection formula failed for F_{order.q}* O({divisor}) on "
                f"{fan.name or 'fan'}"
            )
        dec.certified = True
    return dec


def verify_projection_formula(dec: Decomposition, test_divisors=None) -> bool:
    """Check sum_u mult(u) h^i(D_u + E) == h^i(D + qE) for the test twists E.

    This holds in every cohomological degree because pushing forward along a
    finite map preserves cohomology and twisting by O(E) passes through the
    pushforward as O(qE).
    """
    fan = dec.fan
    q = dec.order.q
    if test_divisors is None:
        test_divisors = default_test_divisors(fan)
    for e in test_divisors:
        cls_e = class_of(fan, e)
        lhs = [0] * (fan.dim + 1)
        for cls, mult in dec.entries.items():
            h = cohomology_of_class(fan, cls + cls_e)
            for i, value in enumerate(h.dims):
                lhs[i] += mult * value
        twisted = tuple(a + q * b for a, b in zip(dec.divisor, e))
        rhs = cohomology(fan, twisted)
        if tuple(lhs) != rhs.dims:
            return False
    return True


def det_class(dec: Decomposition) -> DivisorClass:
    """Class of the determinant: the multiplicity-weighted sum of summands."""
    total = dec.fan.zero_class()
    for cls, mult in dec.entries.items():
        total = total + mult * cls
    return total


def iterate_check(fan: Fan, divisor, p: int, n: int) -> bool:
    """n successive p-power decompositions agree with one p^n-power pass."""
    single = frobenius_decompose(fan, divisor, FrobeniusOrder(p, n), certify=False)
    step = FrobeniusOrder(p, 1)
    current = {class_of(fan, tuple(divisor)): 1}
    for _ in range(n):
        merged: dict = {}
        for cls, mult in current.items():
            dec = frobenius_decompose(
                fan, fan.divisor_of_class(cls), step, certify=False
            )
            for sub, m in dec.entries.items():
                merged[sub] = merged.get(sub, 0) + mult * m
        current = merged
    return current == single.entries
