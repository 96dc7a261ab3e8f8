"""The twelve projective-bundle and product entries of the smooth toric Fano
threefold catalog, and the survey driver that runs them.

Catalog fans are rebuilt and re-validated on every access; nothing is trusted
from static data.  Each entry records the vanishing behaviour asserted for it
by the source survey, which the test suite confronts with computed values.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

from .ext import ext_table, tilting_verdict
from .fan import Fan
from .frobenius import FrobeniusOrder, frobenius_decompose
from .varieties import (
    BUNDLE_SPECS,
    del_pezzo,
    named_variety,
    p1xp1,
    product,
    projective_bundle,
    projective_line,
    projective_plane,
    projective_space,
)

MAX_Q_THREEFOLD = 9


@dataclass(frozen=True)
class CatalogEntry:
    """One catalog variety: a fan builder plus its asserted Ext behaviour."""

    key: str
    label: str
    builder: Callable[[], Fan]
    claimed_vanishing: bool
    claimed_nonzero_degrees: tuple = ()

    def build(self) -> Fan:
        return self.builder()


def _bundle_builder(key: str) -> Callable[[], Fan]:
    def build() -> Fan:
        base, degrees = BUNDLE_SPECS[key]()
        return projective_bundle(base, degrees, name=key)

    return build


def catalog_entries() -> tuple:
    entries = [
        CatalogEntry("P3", "P3", lambda: projective_space(3), True),
        CatalogEntry(
            "P(O+O(2))/P2",
            "P(O+O(2)) over P2",
            _bundle_builder("P(O+O(2))/P2"),
            False,
            (3,),
        ),
        CatalogEntry(
            "P(O+O(1))/P2", "P(O+O(1)) over P2", _bundle_builder("P(O+O(1))/P2"), True
        ),
        CatalogEntry(
            "P(O+O+O(1))/P1",
            "P(O+O+O(1)) over P1",
            _bundle_builder("P(O+O+O(1))/P1"),
            True,
        ),
        CatalogEntry(
            "P(O+O(1,1))/P1xP1",
            "P(O+O(1,1)) over P1xP1",
            _bundle_builder("P(O+O(1,1))/P1xP1"),
            True,
        ),
        CatalogEntry(
            "P(O+O(1,-1))/P1xP1",
            "P(O+O(1,-1)) over P1xP1",
            _bundle_builder("P(O+O(1,-1))/P1xP1"),
            False,
            (1,),
        ),
        CatalogEntry(
            "P(O+O(l))/X1",
            "P(O+O(l)) over X1, l = H",
            _bundle_builder("P(O+O(l))/X1"),
            True,
        ),
        CatalogEntry(
            "P2xP1", "P2 x P1", lambda: product(projective_plane(), projective_line(), name="P2xP1"), True
        ),
        CatalogEntry(
            "P1xP1xP1",
            "P1 x P1 x P1",
            lambda: product(p1xp1(), projective_line(), name="P1xP1xP1"),
            True,
        ),
        CatalogEntry(
            "X1xP1", "X1 x P1", lambda: product(del_pezzo(1), projective_line(), name="X1xP1"), True
        ),
        CatalogEntry(
            "X2xP1", "X2 x P1", lambda: product(del_pezzo(2), projective_line(), name="X2xP1"), True
        ),
        CatalogEntry(
            "X3xP1", "X3 x P1", lambda: product(del_pezzo(3), projective_line(), name="X3xP1"), True
        ),
    ]
    return tuple(entries)


def get_variety(name: str) -> Fan:
    return named_variety(name)


def catalog_run(p: int, n: int = 1) -> dict:
    """Ext tables and tilting verdicts across the twelve catalog threefolds.

    Per-entry errors are reported in the row and do not stop the run.  The
    summary counts entries whose higher self-Ext vanishes / does not vanish.
    """
    order = FrobeniusOrder(p, n)
    if order.q > MAX_Q_THREEFOLD:
        raise ValueError(
            f"q = {order.q} exceeds the supported bound {MAX_Q_THREEFOLD} for "
            "threefold decompositions"
        )
    rows = []
    vanishing = failing = errors = 0
    for entry in catalog_entries():
        row = {"key": entry.key, "label": entry.label}
        try:
            fan = entry.build()
            dec = frobenius_decompose(fan, fan.zero_divisor(), order)
            report = ext_table(fan, order)
            verdict = tilting_verdict(fan, order)
            row.update(
                {
                    "dims": list(report.dims),
                    "strong_exceptional": verdict.strong_exceptional,
                    "contains_collection": verdict.contains_collection,
                    "certified": dec.certified,
                }
            )
            if verdict.strong_exceptional:
                vanishing += 1
            else:
                failing += 1
        except Exception as exc:  # noqa: BLE001 - per-entry isolation
            row["error"] = f"{type(exc).__name__}: {exc}"
            errors += 1
        rows.append(row)
    return {
        "p": p,
        "n": n,
        "rows": rows,
        "summary": {"vanishing": vanishing, "failing": failing, "errors": errors},
    }
