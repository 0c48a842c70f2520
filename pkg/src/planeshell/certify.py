"""Per-order certificates, the synoptic table, and hash manifests on disk."""

from __future__ import annotations

import datetime as _dt
import os
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Iterable

from . import __version__
from .canonical import canonical_json, digest
from .fibration import equator_restriction, fibration_profile, loop_checks
from .golden import ONE
from .orders import (
    BUILTIN_NAMES,
    HYBRID_ORDERS,
    TABLE1_ORDERS,
    Order,
    builtin,
    gram_det_totally_positive,
    gram_determinant,
    verify_order_axioms,
)
from .planes import (
    axis_shell,
    balanced_shell,
    doubling_report,
    enumerate_plane_shell,
    hull_vertex_checks,
    plane_gram,
    swap_check,
)
from .rootshell import RootShellReport, verify_root_shell
from .shells import enumerate_shell, shell_profile

SCHEMA_VERSION = "planeshell-cert/1"
MANIFEST_NAME = "MANIFEST.sha256"


@dataclass(frozen=True)
class Expected:
    shell: int
    axis: int
    balanced: int
    label: str


# Synoptic values per order: |S1|, axis-shell size, |S1|^2 and the doubled type.
EXPECTED: dict[str, Expected] = {
    "Z": Expected(2, 4, 4, "2A1"),
    "gaussian": Expected(4, 8, 16, "4A1"),
    "eisenstein": Expected(6, 12, 36, "A2⊕A2"),
    "hamilton": Expected(8, 16, 64, "8A1"),
    "hurwitz": Expected(24, 48, 576, "D4⊕D4"),
    "cayley_graves": Expected(16, 32, 256, "16A1"),
    "coxeter_dickson": Expected(240, 480, 57600, "E8⊕E8"),
    "cyclotomic10": Expected(10, 20, 100, "H2⊕H2"),
    "icosian": Expected(120, 240, 14400, "H4⊕H4"),
    "hybrid_2a2": Expected(12, 24, 144, "A2⊕A2⊕A2⊕A2"),
    "hybrid_2d4": Expected(48, 96, 2304, "D4⊕D4⊕D4⊕D4"),
}


def _scalars(values: Iterable) -> list:
    return [v.serialize() for v in values]


def _rootshell_block(rep: RootShellReport) -> dict[str, Any]:
    return {
        "r1_central_symmetry": rep.r1_central_symmetry,
        "r2_single_sphere": rep.r2_single_sphere,
        "r3_reflection_closed": rep.r3_reflection_closed,
        "r4_cartan_in_ring": rep.r4_cartan_in_ring,
        "cartan_values": _scalars(rep.cartan_value_set),
        "rank": rep.rank,
        "cardinality": rep.cardinality,
        "components": [{"rank": r, "cardinality": c, "type": t} for r, c, t in rep.components],
        "label": rep.label,
        "crystallographic": rep.crystallographic,
        "reflections_checked": rep.reflections_checked,
        "pass": rep.passed,
    }


def _order_block(order: Order) -> dict[str, Any]:
    basis = [b.serialize() for b in order.basis]
    axioms = verify_order_axioms(order)
    det_ok = gram_det_totally_positive(order)
    return {
        "name": order.name,
        "title": order.title,
        "ring": order.ring_tag,
        "algebra": order.algebra.name,
        "rank": order.rank,
        "z_rank": order.z_rank,
        "basis": basis,
        "basis_digest": digest(basis),
        "gram": [_scalars(row) for row in order.gram],
        "gram_determinant": gram_determinant(order).serialize(),
        "gram_determinant_totally_positive": det_ok,
        "axioms": axioms,
        "pass": bool(axioms["pass"]) and det_ok,
    }


def build_certificate(order_name: str, *, workers: int = 1, exhaustive: bool = False) -> dict[str, Any]:
    """Runs the full pipeline for one order; the result has no meta block yet."""
    order = builtin(order_name)
    order_block = _order_block(order)

    shell = enumerate_shell(order, ONE, workers=workers)
    profile = shell_profile(shell)
    shell_block = {
        "level": shell.level.serialize(),
        "cardinality": len(shell),
        "profile": [{"type": _scalars(t), "count": c} for t, c in profile.items()],
        "digest": shell.digest(),
    }

    rs = verify_root_shell(shell, order.ring_tag)
    root_block = _rootshell_block(rs)

    try:
        plane_gram(order)
        gram_ok = True
    except AssertionError:
        gram_ok = False
    axis = axis_shell(order)
    full = enumerate_plane_shell(order, 1, workers=workers)
    balanced = balanced_shell(order)
    doubling = doubling_report(order)
    axis_rs = verify_root_shell(axis, order.ring_tag)
    hull_axis = hull_vertex_checks(axis)
    hull_bal = hull_vertex_checks(balanced)
    no_split = len(full) == len(axis) and bool((full.zcoords == axis.zcoords).all())
    plane_block = {
        "gram_block_diagonal": gram_ok,
        "axis_cardinality": len(axis),
        "plane_cardinality": len(full),
        "plane_digest": full.digest(),
        "balanced_cardinality": len(balanced),
        "balanced_scale": balanced.scale_tag,
        "no_splitting": no_split,
        "doubling_label": doubling.label,
        "doubling_components": [{"rank": r, "cardinality": c, "type": t} for r, c, t in doubling.components],
        "doubling_factors_match": doubling.factors_match,
        "axis_rootshell": _rootshell_block(axis_rs),
        "hull_axis": {"vertices": hull_axis.vertices, "level": hull_axis.level.serialize(),
                      "single_level": hull_axis.single_level, "vertex_count_ok": hull_axis.vertex_count_ok},
        "hull_balanced": {"vertices": hull_bal.vertices, "level": hull_bal.level.serialize(),
                          "single_level": hull_bal.single_level, "vertex_count_ok": hull_bal.vertex_count_ok},
        "swap_axis": swap_check(axis),
        "swap_balanced": swap_check(balanced),
    }
    plane_ok = (
        gram_ok and no_split and doubling.passed and axis_rs.passed
        and hull_axis.passed and hull_bal.passed and plane_block["swap_axis"] and plane_block["swap_balanced"]
    )
    plane_block["pass"] = plane_ok

    eq = equator_restriction(order)
    prof = fibration_profile(order)
    loops = loop_checks(order, exhaustive=exhaustive)
    fib_block = {
        "base_size": len(prof.base),
        "fiber_size": prof.fiber_size,
        "constant": prof.constant,
        "pairs": eq.pairs,
        "structural_failures": prof.structural_failures,
        "equator": {
            "pairs": eq.pairs,
            "second_failures": eq.second_failures,
            "first_failures": eq.first_failures,
            "image_size": eq.image_size,
            "image_is_shell": eq.image_is_shell,
        },
        "loop": {
            "closure": loops.closure,
            "has_one": loops.has_one,
            "inverse_property": loops.inverse_property,
            "moufang": loops.moufang,
            "moufang_triples": loops.moufang_triples,
            "moufang_exhaustive": loops.moufang_exhaustive,
            "artin": loops.artin,
            "section": loops.section,
            "fiber_membership": loops.fiber_membership,
            "right_invariance": loops.right_invariance,
            "table_mismatches": loops.table_mismatches,
            "pairs_checked": loops.pairs_checked,
        },
        "basis_fingerprint_digest": digest(order.fingerprint()),
    }
    fib_ok = eq.passed and eq.image_is_shell and prof.passed and loops.passed
    fib_block["pass"] = fib_ok

    cert: dict[str, Any] = {
        "schema_version": SCHEMA_VERSION,
        "order": order_block,
        "shell": shell_block,
        "rootshell": root_block,
        "plane": plane_block,
        "fibration": fib_block,
    }
    exp = EXPECTED.get(order_name)
    if exp is not None:
        got = {
            "shell": len(shell),
            "axis": len(axis),
            "balanced": len(balanced),
            "label": doubling.label,
        }
        want = {"shell": exp.shell, "axis": exp.axis, "balanced": exp.balanced, "label": exp.label}
        cert["expected"] = {"values": want, "diff": {k: [want[k], got[k]] for k in want if want[k] != got[k]}}
    expected_ok = exp is None or not cert["expected"]["diff"]
    cert["pass"] = bool(order_block["pass"] and rs.passed and plane_ok and fib_ok and expected_ok)
    return cert


def payload_digest(cert: dict[str, Any]) -> str:
    """SHA-256 of the canonical serialization with the meta block removed."""
    return digest({k: v for k, v in cert.items() if k != "meta"})


def with_meta(cert: dict[str, Any], timestamp: str) -> dict[str, Any]:
    out = {k: v for k, v in cert.items() if k != "meta"}
    out["meta"] = {"timestamp": timestamp, "tool_version": __version__, "digest": payload_digest(out)}
    return out


def run_timestamp(now: _dt.datetime | None = None) -> str:
    now = now or _dt.datetime.now(_dt.timezone.utc)
    return now.strftime("%Y%m%dT%H%M%S.%fZ")


def make_run_dir(out: str | os.PathLike, timestamp: str) -> Path:
    base = Path(out) / timestamp
    path, n = base, 1
    while path.exists():
        path = base.with_name(f"{base.name}-{n}")
        n += 1
    path.mkdir(parents=True)
    return path


def write_run(out: str | os.PathLike, documents: dict[str, dict[str, Any]], timestamp: str | None = None) -> Path:
    """Writes each document as canonical JSON plus MANIFEST.sha256; returns the run directory."""
    timestamp = timestamp or run_timestamp()
    run = make_run_dir(out, timestamp)
    lines = []
    for filename in sorted(documents):
        doc = with_meta(documents[filename], timestamp)
        (run / filename).write_bytes(canonical_json(doc))
        lines.append(f"{doc['meta']['digest']}  {filename}\n")
    (run / MANIFEST_NAME).write_text("".join(lines), encoding="utf-8")
    return run


def read_manifest(run: str | os.PathLike) -> dict[str, str]:
    out = {}
    for line in (Path(run) / MANIFEST_NAME).read_text(encoding="utf-8").splitlines():
        hexdigest, name = line.split("  ", 1)
        out[name] = hexdigest
    return out


def certify(order_name: str, out: str | os.PathLike | None = None, *, workers: int = 1,
            exhaustive: bool = False) -> tuple[dict[str, Any], Path | None]:
    cert = build_certificate(order_name, workers=workers, exhaustive=exhaustive)
    run = write_run(out, {f"{order_name}.cert.json": cert}) if out is not None else None
    return cert, run


def table_orders(with_hybrids: bool = False) -> tuple[str, ...]:
    return TABLE1_ORDERS + (HYBRID_ORDERS if with_hybrids else ())


def table1(out: str | os.PathLike | None = None, *, workers: int = 1, with_hybrids: bool = False,
           exhaustive: bool = False) -> tuple[dict[str, Any], dict[str, dict[str, Any]], Path | None]:
    """Certificates for every synoptic row plus a summary with the diff against EXPECTED."""
    certs = {name: build_certificate(name, workers=workers, exhaustive=exhaustive) for name in table_orders(with_hybrids)}
    rows = []
    for name, cert in certs.items():
        rows.append({
            "order": name,
            "ring": cert["order"]["ring"],
            "shell": cert["shell"]["cardinality"],
            "axis": cert["plane"]["axis_cardinality"],
            "balanced": cert["plane"]["balanced_cardinality"],
            "label": cert["plane"]["doubling_label"],
            "unit_label": cert["rootshell"]["label"],
            "diff": cert.get("expected", {}).get("diff", {}),
            "pass": cert["pass"],
        })
    summary = {
        "schema_version": SCHEMA_VERSION,
        "rows": rows,
        "certificate_digests": {name: payload_digest(c) for name, c in certs.items()},
        "matched": sum(1 for r in rows if not r["diff"]),
        "total": len(rows),
        "pass": all(r["pass"] for r in rows),
    }
    run = None
    if out is not None:
        docs = {f"{name}.cert.json": c for name, c in certs.items()}
        docs["table1.json"] = summary
        run = write_run(out, docs)
    return summary, certs, run


__all__ = [
    "BUILTIN_NAMES",
    "EXPECTED",
    "SCHEMA_VERSION",
    "build_certificate",
    "certify",
    "payload_digest",
    "read_manifest",
    "table1",
    "write_run",
]
