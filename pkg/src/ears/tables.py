"""Regeneration of the tabulated bases and cardinalities, and diffs against
the golden copies shipped in ``ears/data``.

Run ``python -m ears.tables --write`` to rewrite the golden files from the
code; they are never edited by hand.
"""
from __future__ import annotations

import argparse
import json
from importlib import resources
from pathlib import Path

from .earoot import configurations, index_of, table1_base, table4_base
from .errors import EarsError, GoldenMismatch
from .reflect import expected_cardinality, is_reflectable_base

TYPES = [("A", 1), ("B", 2), ("B", 3), ("C", 3), ("F", 4), ("G", 2)]
NUS = (1, 2, 3)
WHICH = ("table1", "table2", "table4")


def _config_id(e) -> dict:
    return {"type": e.name, "nu": e.nu, "t": e.t,
            "S1": e.S1.to_json()["supp"] if e.S1 is not None else None,
            "S2": e.S2.to_json()["supp"] if e.S2 is not None else None,
            "ind": index_of(e)}


def _systems(types=None, nus=None, nu_only=None):
    for letter, ell in (types or TYPES):
        for nu in (nus or NUS):
            if nu_only is not None and nu != nu_only:
                continue
            yield from configurations(letter, ell, nu)


def table1_rows(types=None, nus=None) -> list:
    rows = []
    for e in _systems(types, nus):
        P = table1_base(e)
        rows.append({**_config_id(e), "base": [p.label() for p in P]})
    return rows


def table2_rows(types=None, nus=None) -> list:
    rows = []
    for e in _systems(types, nus):
        P = table1_base(e)
        exp = expected_cardinality(e)
        sh = sum(e.is_short(p) for p in P)
        got = [len(P), sh if exp[1] is not None else None,
               len(P) - sh if exp[2] is not None else None]
        rows.append({**_config_id(e), "size": got, "formula": list(exp),
                     "ind+l+nu": index_of(e) + e.ell + e.nu,
                     "reflectable_base": is_reflectable_base(e, P)})
    return rows


def table4_rows(types=None) -> list:
    rows = []
    for e in _systems(types, (2,), nu_only=2):
        try:
            P, note = table4_base(e)
            rows.append({**_config_id(e), "base": [p.label() for p in P], "size": len(P),
                         "note": note})
        except EarsError as err:
            rows.append({**_config_id(e), "base": None, "size": None, "note": str(err)})
    return rows


def generate(which: str, types=None, nus=None) -> list:
    if which == "table1":
        return table1_rows(types, nus)
    if which == "table2":
        return table2_rows(types, nus)
    if which == "table4":
        return table4_rows(types)
    raise ValueError(f"unknown table {which!r}")


def golden(which: str) -> list:
    text = resources.files("ears").joinpath("data", f"{which}.json").read_text()
    return json.loads(text)


def _row_key(row):
    return (row["type"], row["nu"], row["t"], json.dumps(row["S1"]), json.dumps(row["S2"]))


def diff(which: str, rows: list) -> list:
    """Rows that disagree with (or are missing from) the golden copy."""
    gold = {_row_key(r): r for r in golden(which)}
    bad = []
    for r in rows:
        g = gold.get(_row_key(r))
        if g != r:
            bad.append({"generated": r, "golden": g})
    return bad


def check(which: str, types=None, nus=None) -> list:
    rows = generate(which, types, nus)
    bad = diff(which, rows)
    if bad:
        raise GoldenMismatch(f"{which}: {len(bad)} rows differ from the golden copy", rows=bad)
    return rows


def write_golden(directory: Path | None = None) -> None:
    directory = directory or Path(__file__).parent / "data"
    directory.mkdir(parents=True, exist_ok=True)
    for which in WHICH:
        rows = generate(which)
        (directory / f"{which}.json").write_text(json.dumps(rows, indent=1) + "\n")


def main(argv=None):
    ap = argparse.ArgumentParser(prog="python -m ears.tables")
    ap.add_argument("--write", action="store_true", help="rewrite the golden files")
    args = ap.parse_args(argv)
    if args.write:
        write_golden()
    else:
        for which in WHICH:
            print(which, len(check(which)), "rows match")


if __name__ == "__main__":
    main()
