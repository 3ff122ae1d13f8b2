"""Canonical structured reports and their text renderings.

Every builder returns plain dicts with a fixed key order and canonically
sorted configurations, so ``json.dumps`` of the same input is byte-stable.
"""

from __future__ import annotations

import json
from typing import Iterable

from .arith import CurveClass
from .branch import BranchConfig, Enumeration
from .classify import Classification, Section
from .covers import CoverResult
from .enriques import EnriquesCandidate, EnriquesVerdict
from .rules import ExclusionRule, find_rule

SCHEMA_VERSION = "1.0"


def dump_json(doc: dict) -> str:
    return json.dumps(doc, indent=2, ensure_ascii=False) + "\n"


def curve_list(c: CurveClass) -> list[int]:
    return [c.pa, c.selfint, c.ddeg]


def config_dict(config: BranchConfig) -> dict:
    return {"text": str(config), "components": [curve_list(c) for c in config.components]}


def _profile_dict(section: Section) -> dict:
    p = section.profile
    return {
        "Dsq": p.Dsq, "kwD": p.kwD, "b0D": p.b0D, "kv2": p.kv2, "h0": p.h0,
        "h0_2K_B0": p.h0_2K_B0, "numeric_kw2": list(p.numeric_kw2),
        "bicanonical_composed": p.bicanonical_composed, "numeric_only": p.numeric_only,
    }


def _hodge_bound(d: int, Dsq: int) -> str:
    return f"Gamma^2 * {Dsq} <= {d * d} gives Gamma^2 <= {(d * d) // Dsq}"


def _trace_lines(en: Enumeration) -> list[str]:
    p = en.profile
    lines = [f"B0.D = {p.b0D}, K_W.B0 = {p.kwD} - 2({en.kw2}) = {p.kw2_budget(en.kw2)}, "
             f"B0^2 = {p.b0_square(en.kw2)}"]
    for d, cands in en.candidates.items():
        lines.append(f"Gamma.D = {d}: {_hodge_bound(d, p.Dsq)}; parity and p_a >= 0 leave "
                     + (" ".join(str(c) for c in cands) or "nothing"))
    for r in en.rejections:
        lines.append(f"rejected {'+'.join(str(c) for c in r.components)}: {r.explain()}")
    return lines


def classification_dict(cl: Classification, trace: bool = False) -> dict:
    citations = {r.id: r.citation for r in cl.rules}
    sections = []
    for s in cl.sections:
        cells = []
        for cell in s.cells:
            entry = {
                "kw2": cell.kw2,
                "budget": s.profile.kw2_budget(cell.kw2),
                "b0_square": s.profile.b0_square(cell.kw2),
                "generated": [config_dict(c) for c in cell.generated],
                "admitted": [config_dict(c) for c in cell.admitted],
                "excluded": [dict(config_dict(v.config), rule=v.excluded_by, matched=list(v.matched),
                                  citation=citations[v.excluded_by])
                             for v in cell.excluded],
            }
            if trace:
                entry["trace"] = _trace_lines(cell.enumeration)
            cells.append(entry)
        sections.append({
            "k": s.profile.k,
            "profile": _profile_dict(s),
            "admissible": [
                {"kw2": a.kw2, "kodaira": a.kodaira.as_dict(), "label": a.kodaira.label(),
                 "kwL": a.kwL, "Lsq": a.Lsq, "constrained_by": list(a.constrained_by)}
                for a in s.profile.admissible
            ],
            "b0_omitted": s.omitted,
            "cells": cells,
        })
    return {
        "schema_version": SCHEMA_VERSION,
        "command": "classify",
        "ks2": cl.ks2,
        "numeric_only": cl.numeric_only,
        "provenance": {
            "geometric_exclusions": cl.geometric_exclusions(),
            "geometric_profile_rules": cl.geometric_profile_rules(),
            "geometric_rules_applied": len(cl.geometric_exclusions()) + len(cl.geometric_profile_rules()),
        },
        "sections": sections,
    }


def enriques_dict(ks2: int, verdicts: list[EnriquesVerdict], candidates: list[EnriquesCandidate],
                  trace: bool = False) -> dict:
    cands = []
    for c in candidates:
        entry = dict(config_dict(c.config))
        entry.update({
            "status": "survives" if c.survives else "excluded",
            "excluded_by": c.excluded_by,
            "matched": list(c.matched),
            "torsion": c.torsion,
            "notes": list(c.notes),
        })
        if trace:
            entry["per_component"] = [
                {"curve": curve_list(ci.curve), "beta": ci.beta, "image": list(ci.image)}
                for ci in c.per_component
            ]
        cands.append(entry)
    survivors = [c for c in candidates if c.survives]
    return {
        "schema_version": SCHEMA_VERSION,
        "command": "enriques",
        "ks2": ks2,
        "numeric_only": all(v.possible is None for v in verdicts),
        "verdicts": [{"k": v.k, "possible": v.possible, "reason": v.reason} for v in verdicts],
        "candidates": cands,
        "survivors": [str(c.config) for c in survivors],
        "torsion": bool(survivors) and all(c.torsion for c in survivors),
    }


def examples_dict(results: list[CoverResult]) -> dict:
    rows = []
    for r in results:
        d = r.datum
        rows.append({
            "name": d.name,
            "k": r.k,
            "kw2": r.kw2,
            "b0": r.b0_text,
            "kodaira": d.kodaira,
            "expected": {"k": d.expected_k, "kw2": d.expected_kw2,
                         "b0": "+".join(f"({a},{b})" for a, b in d.expected_b0)},
            "in_admitted_set": r.in_admitted_set,
            "enriques_survivor": r.enriques_survivor,
            "ok": r.ok,
            "problems": list(r.problems),
        })
    return {
        "schema_version": SCHEMA_VERSION,
        "command": "examples",
        "ok": all(r.ok for r in results),
        "rows": rows,
    }


def rules_dict(rules: Iterable[ExclusionRule]) -> dict:
    return {"schema_version": SCHEMA_VERSION, "command": "rules", "rules": [r.as_dict() for r in rules]}


# -- text renderings -------------------------------------------------------

def _table(headers: list[str], rows: list[list[str]]) -> list[str]:
    widths = [max(len(h), *(len(r[i]) for r in rows)) if rows else len(h) for i, h in enumerate(headers)]
    fmt = lambda cells: "  ".join(c.ljust(w) for c, w in zip(cells, widths)).rstrip()
    return [fmt(headers), fmt(["-" * w for w in widths])] + [fmt(r) for r in rows]


def _w_label(section: dict, kw2: int) -> str:
    labels = [a["label"] for a in section["admissible"] if a["kw2"] == kw2]
    return ", or ".join(labels)


def _master_rows(doc: dict) -> list[list[str]]:
    rows = []
    for s in doc["sections"]:
        k = str(s["k"])
        kw2s = sorted({a["kw2"] for a in s["admissible"]}, reverse=True)
        if s["b0_omitted"]:
            for kw2 in kw2s:
                rows.append([k, str(kw2), "omitted (bicanonical map composed)", _w_label(s, kw2)])
            continue
        for cell in s["cells"]:
            label = _w_label(s, cell["kw2"])
            admitted = cell["admitted"] or [{"text": "none"}]
            for i, c in enumerate(admitted):
                rows.append([k if i == 0 else "", str(cell["kw2"]) if i == 0 else "", c["text"],
                             label if i == 0 else ""])
    return rows


def classification_text(doc: dict) -> str:
    out = [f"K_S^2 = {doc['ks2']}"]
    if doc["numeric_only"]:
        out.append("mode: numeric-only, geometric exclusions unknown")
    prov = doc["provenance"]
    out.append(f"geometric rules applied: {prov['geometric_rules_applied']}"
               + (f" ({', '.join(prov['geometric_profile_rules'] + prov['geometric_exclusions'])})"
                  if prov["geometric_rules_applied"] else ""))
    out.append("")
    out += _table(["k", "K_W^2", "B0", "W"], _master_rows(doc))

    excluded = [(s["k"], cell["kw2"], e) for s in doc["sections"] for cell in s["cells"] for e in cell["excluded"]]
    if excluded:
        out += ["", "excluded configurations:"]
        out += _table(["k", "K_W^2", "B0", "rule"], [[str(k), str(w), e["text"], e["rule"]] for k, w, e in excluded])

    if any("trace" in cell for s in doc["sections"] for cell in s["cells"]):
        out += ["", "derivation:"]
        for s in doc["sections"]:
            p = s["profile"]
            out.append(f"k={s['k']}: D^2 = {p['Dsq']}, K_W.D = {p['kwD']}, K_V^2 = {p['kv2']}, "
                       f"h^0(2K_W+L) = {p['h0']}, h^0(2K_W+B0) = {p['h0_2K_B0']}, "
                       f"numeric K_W^2 range {p['numeric_kw2']}")
            if s["b0_omitted"]:
                out.append("  B0 not classified (bicanonical map composed with the involution)")
            for cell in s["cells"]:
                out.append(f"  K_W^2 = {cell['kw2']}:")
                out += ["    " + line for line in cell["trace"]]
                for e in cell["excluded"]:
                    out.append(f"    excluded {e['text']}: {e['rule']} ({e['citation']})")
    return "\n".join(out) + "\n"


def classification_markdown(doc: dict) -> str:
    out = [f"Classification for K_S^2 = {doc['ks2']}" + (" (numeric-only)" if doc["numeric_only"] else ""), ""]
    out.append("| k | K_W^2 | B_0 | W |")
    out.append("|---|---|---|---|")
    for row in _master_rows(doc):
        out.append("| " + " | ".join(row) + " |")
    return "\n".join(out) + "\n"


def enriques_text(doc: dict, trace: bool = False) -> str:
    out = [f"K_S^2 = {doc['ks2']}: quotient birational to an Enriques surface"]
    for v in doc["verdicts"]:
        verdict = "unknown (numeric-only)" if v["possible"] is None else ("possible" if v["possible"] else "excluded")
        out.append(f"  k={v['k']}: {verdict}: {v['reason']}")
    if doc["numeric_only"]:
        out.append("result: unknown (numeric-only)")
        return "\n".join(out) + "\n"
    out.append("")
    rows = [[c["text"], c["status"], c["excluded_by"] or "-"] for c in doc["candidates"]]
    out += _table(["B0", "status", "case"], rows)
    out += ["", "survivors: " + (", ".join(doc["survivors"]) or "none"),
            "2-torsion: " + ("yes" if doc["torsion"] else "no")]
    if trace:
        out += ["", "case attribution:"]
        for c in doc["candidates"]:
            comps = ", ".join(f"({pc['curve'][0]},{pc['curve'][1]}) beta={pc['beta']} -> ({pc['image'][0]},{pc['image'][1]})"
                              for pc in c["per_component"])
            out.append(f"  {c['text']}: {comps}")
            if c["excluded_by"]:
                rule = find_rule(c["excluded_by"])
                out.append(f"    {rule.id}: {rule.note}; {rule.citation}")
            else:
                out.append("    not excluded; S has a 2-torsion element")
            for note in c["notes"]:
                out.append(f"    note: {note}")
    return "\n".join(out) + "\n"


def enriques_markdown(doc: dict) -> str:
    out = ["| B_0 | status | case |", "|---|---|---|"]
    for c in doc["candidates"]:
        out.append(f"| {c['text']} | {c['status']} | {c['excluded_by'] or '-'} |")
    return "\n".join(out) + "\n"


def examples_text(doc: dict) -> str:
    rows = [[r["name"], str(r["k"]), str(r["kw2"]), r["b0"], r["kodaira"], "ok" if r["ok"] else "MISMATCH"]
            for r in doc["rows"]]
    out = _table(["involution", "k", "K_W^2", "B0", "W", "check"], rows)
    for r in doc["rows"]:
        for p in r["problems"]:
            out.append(f"{r['name']}: {p}")
    return "\n".join(out) + "\n"


def examples_markdown(doc: dict) -> str:
    out = ["| | k | K_W^2 | B_0 | W |", "|---|---|---|---|---|"]
    for r in doc["rows"]:
        out.append(f"| (S,{r['name']}) | {r['k']} | {r['kw2']} | {r['b0']} | {r['kodaira']} |")
    return "\n".join(out) + "\n"


def rules_text(doc: dict) -> str:
    out = []
    for r in doc["rules"]:
        out.append(f"{r['id']}  [{r['provenance']}, {r['stage']}, scope {r['scope']}"
                   + ("" if r["active"] else ", read-only") + "]")
        out.append(f"  pattern:  {r['pattern']}")
        out.append(f"  citation: {r['citation']}")
        if r["note"]:
            out.append(f"  note:     {r['note']}")
    return "\n".join(out) + "\n"


def load_schema() -> dict:
    from importlib.resources import files

    return json.loads(files("invquot").joinpath("schema/report.schema.json").read_text(encoding="utf-8"))
