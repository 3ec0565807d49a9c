"""Standard systems and fixture documents.

``python -m orbiteq.catalog DIR`` writes one bundle per fixture into DIR.
"""

from __future__ import annotations

import argparse
from functools import lru_cache
from pathlib import Path

from orbiteq import lattice
from orbiteq.action import MonoidAction
from orbiteq.equivalence.coe import csoe_to_coe
from orbiteq.equivalence.csoe import CsoeData
from orbiteq.equivalence.group import GroupCocycleData, differences
from orbiteq.equivalence.shift_coe import ShiftCoeData, constant_tables
from orbiteq.io import Exporter, cylinder_table_to_json, envelope, export, write_json
from orbiteq.maps import (
    ProgressiveHomeo,
    SlidingBlockMap,
    TransducerMap,
    higher_block_code,
    higher_block_presentation,
    identity_map,
    odometer,
    shift_map,
    tabulate,
)
from orbiteq.shift import validate_sft
from orbiteq.tables import CylinderTable


def full_shift():
    return validate_sft("F2", ["0", "1"])


def golden_mean():
    return validate_sft("GM", ["0", "1"], ["11"])


@lru_cache(maxsize=None)
def systems() -> dict:
    """Spaces, maps and actions shared by the fixtures and the tests."""
    F2, GM = full_shift(), golden_mean()
    Y = higher_block_presentation(F2, 2, name="F2_2")
    fwd, inv = higher_block_code(F2, 2, Y)
    fwd.name, inv.name = "Phi2", "Phi2_inv"
    flip = TransducerMap(F2, F2, "first", {
        ("first", 0): ("rest", 1), ("first", 1): ("rest", 0),
        ("rest", 0): ("rest", 0), ("rest", 1): ("rest", 1),
    }, name="flip_first")
    swap = SlidingBlockMap(F2, F2, 1, {(0,): 1, (1,): 0}, name="swap")
    collapse = SlidingBlockMap(F2, F2, 1, {(0,): 0, (1,): 0}, name="collapse")
    s = {
        "F2": F2, "GM": GM, "F2_2": Y,
        "sigma_F2": shift_map(F2, name="sigma_F2"),
        "sigma_GM": shift_map(GM, name="sigma_GM"),
        "sigma_F2_2": shift_map(Y, name="sigma_F2_2"),
        "id_F2": identity_map(F2, name="id_F2"),
        "Phi2": fwd, "Phi2_inv": inv,
        "odometer": odometer(F2, name="odometer"),
        "odometer_inv": odometer(F2, inverse=True, name="odometer_inv"),
        "flip_first": flip, "swap": swap, "collapse": collapse,
    }
    s["sigma_shallow"] = tabulate(s["sigma_F2"], 3, name="sigma_shallow")
    s["phi_id"] = ProgressiveHomeo(s["id_F2"], s["id_F2"], name="phi_id")
    s["phi_Phi2"] = ProgressiveHomeo(fwd, inv, name="phi_Phi2")
    s["phi_swap"] = ProgressiveHomeo(swap, swap, name="phi_swap")
    s["shift_F2"] = MonoidAction(F2, [s["sigma_F2"]], name="shift_F2")
    s["shift_GM"] = MonoidAction(GM, [s["sigma_GM"]], name="shift_GM")
    s["shift_F2_2"] = MonoidAction(Y, [s["sigma_F2_2"]], name="shift_F2_2")
    s["dup_F2"] = MonoidAction(F2, [s["sigma_F2"], s["sigma_F2"]], name="dup_F2")
    s["noncommuting_F2"] = MonoidAction(F2, [s["sigma_F2"], flip], name="noncommuting_F2")
    s["collapse_F2"] = MonoidAction(F2, [collapse], name="collapse_F2")
    s["shallow_F2"] = MonoidAction(F2, [s["sigma_shallow"]], name="shallow_F2")
    s["odometer_F2"] = MonoidAction(F2, [s["odometer"]], [s["odometer_inv"]], name="odometer_F2")
    return s


def identity_tables(act: MonoidAction, bound: int, name: str) -> CylinderTable:
    return CylinderTable.constant(act.space, lattice.monoid_elements(act.rank, bound), lambda m: m, name=name)


def identity_csoe(bound: int = 3) -> CsoeData:
    s = systems()
    X = s["shift_F2"]
    return CsoeData(X, X, s["phi_id"], identity_tables(X, bound, "a"), identity_tables(X, bound, "b"), bound,
                    "csoe_identity")


def phi2_csoe(bound: int = 3) -> CsoeData:
    s = systems()
    X, Y = s["shift_F2"], s["shift_F2_2"]
    return CsoeData(X, Y, s["phi_Phi2"], identity_tables(X, bound, "a"), identity_tables(Y, bound, "b"), bound,
                    "csoe_phi2")


def corrupted_csoe(bound: int = 3) -> CsoeData:
    """The identity csoe with ``a(1, [0])`` changed from 1 to 2."""
    d = identity_csoe(bound)
    entries = dict(d.a.refine(1).entries)
    entries[((1,), (0,))] = (2,)
    return CsoeData(d.source, d.target, d.phi, CylinderTable(d.source.space, 1, entries, "a"), d.b, bound,
                    "csoe_corrupt")


def phi2_coe(bound: int = 3):
    c = csoe_to_coe(phi2_csoe(bound))
    c.name = "coe_phi2"
    return c


def shift_bundle(k: int, l: int, name: str) -> ShiftCoeData:
    s = systems()
    X = s["shift_F2"]
    return ShiftCoeData(X, X, s["phi_id"], constant_tables(X, k, "k"), constant_tables(X, l, "l"),
                        constant_tables(X, k, "kp"), constant_tables(X, l, "lp"), name=name)


def odometer_cocycle(swap: bool = True, bound: int = 3) -> GroupCocycleData:
    """``a(g, x) = -g`` for the swap conjugacy (it conjugates the odometer to its inverse); ``g`` for the identity."""
    s = systems()
    O = s["odometer_F2"]
    sign = -1 if swap else 1
    keys = differences(1, bound)
    a = CylinderTable.constant(O.space, keys, lambda g: tuple(sign * x for x in g), name="a")
    phi = s["phi_swap"] if swap else s["phi_id"]
    return GroupCocycleData(O, O, phi, a, a, bound, "odometer_swap" if swap else "odometer_identity")


def _action_bundle(name: str) -> dict:
    return export(systems()[name])


def _incomplete_coe() -> dict:
    c = csoe_to_coe(identity_csoe(2))
    doc = export(c, "coe_missing_entry")
    for d in doc["payload"]["documents"]:
        if d["schema"] == "coe/v1":
            entries = d["payload"]["b1"]["entries"]
            entries.pop(sorted(entries)[-1])
    return doc


def _nonhomeo_cocycle() -> dict:
    """A group cocycle document over the (non-invertible) shift action."""
    s = systems()
    ex = Exporter()
    X = s["shift_F2"]
    a = CylinderTable.constant(X.space, differences(1, 2), lambda g: g, name="a")
    ex.action(X)
    ex.homeo(s["phi_id"])
    ex.raw(envelope("group_cocycle", {
        "name": "shift_cocycle", "source": X.name, "target": X.name, "phi": "phi_id", "degree_bound": 2,
        "a": cylinder_table_to_json(a), "b": cylinder_table_to_json(a),
    }))
    return ex.bundle()


def fixtures() -> dict[str, dict]:
    """File name -> document."""
    return {
        "shift_F2.json": _action_bundle("shift_F2"),
        "shift_GM.json": _action_bundle("shift_GM"),
        "dup_F2.json": _action_bundle("dup_F2"),
        "noncommuting_F2.json": _action_bundle("noncommuting_F2"),
        "collapse_F2.json": _action_bundle("collapse_F2"),
        "shallow_F2.json": _action_bundle("shallow_F2"),
        "odometer_F2.json": _action_bundle("odometer_F2"),
        "csoe_identity.json": export(identity_csoe()),
        "csoe_phi2.json": export(phi2_csoe()),
        "csoe_corrupt.json": export(corrupted_csoe()),
        "shift_coe_identity.json": export(shift_bundle(0, 1, "shift_coe_identity")),
        "shift_coe_wrong.json": export(shift_bundle(1, 1, "shift_coe_wrong")),
        "coe_missing_entry.json": _incomplete_coe(),
        "group_cocycle_odometer.json": export(odometer_cocycle(True)),
        "group_cocycle_shift.json": _nonhomeo_cocycle(),
    }


def write_fixtures(directory) -> list[Path]:
    out = Path(directory)
    out.mkdir(parents=True, exist_ok=True)
    paths = []
    for name, doc in fixtures().items():
        p = out / name
        write_json(p, doc)
        paths.append(p)
    return paths


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(prog="python -m orbiteq.catalog", description="write fixture documents")
    ap.add_argument("directory")
    args = ap.parse_args(argv)
    for p in write_fixtures(args.directory):
        print(p)
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
