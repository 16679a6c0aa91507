"""Serialization of subgroup patterns: machine-readable JSON and the
classic text triangle (zeros printed as dots).

The JSON schema is frozen:

    {"group": str, "degree": int,
     "classes": [{"order": int, "length": int, "normalizer": int,
                  "generators": [str]}],
     "marks": [[int], ...],           # lower-triangular, row i has i+1 cells
     "stats": {"probes": int, "max_probe": int, "millis": int}}

Loading a document needs the ambient group, resolved by name from the
catalog (or supplied directly); representatives are rebuilt from their
generator strings and cross-checked against the stored orders.
"""

from __future__ import annotations

import json

from .groups import PermGroup, Subgroup
from .marks import PatternClass, PatternStats, SubgroupPattern
from .naming import subgroup_name
from .perms import format_tuple, parse_cycles


class PatternFormatError(ValueError):
    """The document does not follow the schema or contradicts itself."""


def pattern_to_dict(pattern: SubgroupPattern, name: str) -> dict:
    return {
        "group": name,
        "degree": pattern.group.degree,
        "classes": [
            {
                "order": c.order,
                "length": c.length,
                "normalizer": c.normalizer_order,
                "generators": [format_tuple(g) for g in c.rep.gens],
            }
            for c in pattern.classes
        ],
        "marks": [list(map(int, row)) for row in pattern.rows],
        "stats": {
            "probes": pattern.stats.probes,
            "max_probe": pattern.stats.max_probe,
            "millis": pattern.stats.millis,
        },
    }


def pattern_to_json(pattern: SubgroupPattern, name: str) -> str:
    return json.dumps(pattern_to_dict(pattern, name), indent=1)


def pattern_from_dict(doc: dict, group: PermGroup) -> SubgroupPattern:
    try:
        degree = doc["degree"]
        raw_classes = doc["classes"]
        marks = doc["marks"]
        stats = doc.get("stats", {})
    except (KeyError, TypeError) as exc:
        raise PatternFormatError(f"missing field: {exc}") from exc
    if degree != group.degree:
        raise PatternFormatError(
            f"degree {degree} does not match the group's {group.degree}")
    classes = []
    for k, rc in enumerate(raw_classes):
        try:
            gens = [parse_cycles(s, degree) for s in rc["generators"]]
            rep = Subgroup(group, gens, check=True)
        except ValueError as exc:
            raise PatternFormatError(
                f"class {k}: bad generators ({exc})") from exc
        if rep.order != rc["order"]:
            raise PatternFormatError(
                f"class {k}: generators span order {rep.order}, "
                f"stated {rc['order']}")
        classes.append(PatternClass(
            rep=rep, order=rc["order"], length=rc["length"],
            normalizer_order=rc["normalizer"]))
    if len(marks) != len(classes):
        raise PatternFormatError("marks row count differs from class count")
    for i, row in enumerate(marks):
        if len(row) != i + 1:
            raise PatternFormatError(f"marks row {i} is not lower-triangular")
    st = PatternStats(probes=stats.get("probes", 0),
                      max_probe=stats.get("max_probe", 0),
                      millis=stats.get("millis", 0))
    return SubgroupPattern(group=group, classes=classes,
                           rows=[list(map(int, r)) for r in marks], stats=st)


def pattern_from_json(text: str, group: PermGroup) -> SubgroupPattern:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise PatternFormatError(f"not valid JSON: {exc}") from exc
    return pattern_from_dict(doc, group)


def class_labels(pattern: SubgroupPattern) -> list[str]:
    return [subgroup_name(c.rep) for c in pattern.classes]


def render_text(pattern: SubgroupPattern, name: str) -> str:
    """Text triangle: rows labeled name/H, zeros as dots, and a
    footer line with the class labels."""
    labels = class_labels(pattern)
    row_labels = [f"{name}/{lbl}" for lbl in labels]
    lw = max(len(r) for r in row_labels)
    cells = [[(str(v) if v else ".") for v in row] for row in pattern.rows]
    cw = max(2, max(len(c) for row in cells for c in row),
             max(len(lbl) for lbl in labels))
    lines = []
    for rl, row in zip(row_labels, cells):
        lines.append(rl.ljust(lw) + " " +
                     " ".join(c.rjust(cw) for c in row))
    lines.append("-" * lw + " " +
                 " ".join(lbl.rjust(cw) for lbl in labels))
    stats = pattern.stats
    lines.append(f"classes: {pattern.n}  probes: {stats.probes}  "
                 f"max probe: {stats.max_probe}")
    return "\n".join(lines) + "\n"


def render_class_listing(pattern_classes) -> str:
    """One line per class: index, order, class length, normalizer order."""
    lines = []
    for i, c in enumerate(pattern_classes):
        lines.append(f"{i + 1:4d}  order {c.order:>6d}  length "
                     f"{c.length:>6d}  normalizer {c.normalizer_order:>6d}  "
                     f"{subgroup_name(c.rep)}")
    return "\n".join(lines) + "\n"
