#!/usr/bin/env python3
"""Emit src/constraints.gen.ts from the service's request models.

The browser must never accept a value the server would 422, so the client
rule table is generated straight from the pydantic schemas that validate
requests, plus the operational caps. Run `npm run gen` after changing any
request model and commit the regenerated file; the e2e suite fails if the
checked-in table drifts from the models.
"""

from __future__ import annotations

import json
import sys
from pathlib import Path

from aucpower.service import (
    BinormalBody,
    BinormalParams,
    McBody,
    PilotInlineBody,
    PreviewBody,
    ServiceSettings,
    SingleBody,
)

HEADER = """\
// Generated by tools/gen_constraints.py from the service's request models.
// Do not edit by hand; run `npm run gen` after changing the server schemas.

export interface FieldRule {
  kind: "number" | "integer" | "integer-list" | "boolean" | "string";
  required: boolean;
  min?: number;
  max?: number;
  exclusiveMin?: boolean;
  exclusiveMax?: boolean;
  minItems?: number;
  default?: number | boolean | string | null;
}

export type RuleSet = Record<string, FieldRule>;
"""


def _unwrap(prop: dict) -> dict:
    """Collapse `anyOf: [X, null]` optionals to X."""
    if "anyOf" in prop:
        members = [m for m in prop["anyOf"] if m.get("type") != "null"]
        if len(members) != 1:
            raise ValueError(f"cannot reduce anyOf in {prop!r}")
        merged = dict(members[0])
        for key in ("default",):
            if key in prop:
                merged[key] = prop[key]
        return merged
    return prop


def _field_rule(prop: dict, required: bool) -> dict:
    prop = _unwrap(prop)
    ptype = prop.get("type")
    rule: dict = {"required": required}
    if ptype == "array":
        items = prop.get("items", {})
        if items.get("type") != "integer":
            raise ValueError(f"unsupported array items in {prop!r}")
        rule["kind"] = "integer-list"
        if "minItems" in prop:
            rule["minItems"] = prop["minItems"]
    elif ptype in ("number", "integer", "boolean", "string"):
        rule["kind"] = ptype
    else:
        raise ValueError(f"unsupported property type {ptype!r}")
    if "minimum" in prop:
        rule["min"] = prop["minimum"]
    if "exclusiveMinimum" in prop:
        rule["min"] = prop["exclusiveMinimum"]
        rule["exclusiveMin"] = True
    if "maximum" in prop:
        rule["max"] = prop["maximum"]
    if "exclusiveMaximum" in prop:
        rule["max"] = prop["exclusiveMaximum"]
        rule["exclusiveMax"] = True
    if "default" in prop:
        rule["default"] = prop["default"]
    return rule


def _rules(model, include=None, exclude=()) -> dict:
    schema = model.model_json_schema()
    required = set(schema.get("required", ()))
    out = {}
    for name, prop in schema["properties"].items():
        if include is not None and name not in include:
            continue
        if name in exclude:
            continue
        out[name] = _field_rule(prop, name in required)
    return out


def _ts_value(value) -> str:
    return json.dumps(value)


def _ts_ruleset(name: str, rules: dict) -> str:
    lines = [f"  {name}: {{"]
    for field, rule in rules.items():
        parts = [f'kind: {_ts_value(rule["kind"])}', f'required: {_ts_value(rule["required"])}']
        for key in ("min", "max", "exclusiveMin", "exclusiveMax", "minItems", "default"):
            if key in rule:
                parts.append(f"{key}: {_ts_value(rule[key])}")
        lines.append(f"    {field}: {{ {', '.join(parts)} }},")
    lines.append("  },")
    return "\n".join(lines)


def main() -> None:
    eval_fields = ("n", "n_grid", "target_power", "n_min", "n_max")
    sections = {
        "single": _rules(SingleBody),
        "mc": _rules(McBody),
        "evaluate": _rules(BinormalBody, include=eval_fields),
        "binormalParams": _rules(BinormalParams),
        "preview": _rules(PreviewBody, exclude=("params",)),
        "pilot": _rules(PilotInlineBody, include=("prevalence",)),
    }
    caps = ServiceSettings()
    body = [HEADER]
    body.append("export const SERVER_RULES = {")
    for name, rules in sections.items():
        body.append(_ts_ruleset(name, rules))
    body.append("} as const satisfies Record<string, RuleSet>;")
    body.append("")
    body.append("export const SERVER_CAPS = {")
    body.append(f"  maxIterations: {caps.max_iterations},")
    body.append(f"  maxGridPoints: {caps.max_grid_points},")
    body.append(f"  maxEvalN: {caps.max_eval_n},")
    body.append(f"  maxUploadBytes: {caps.max_upload_bytes},")
    body.append(f"  maxInlineRows: {caps.max_inline_rows},")
    body.append("} as const;")
    body.append("")
    text = "\n".join(body)

    out = Path(__file__).resolve().parents[1] / "src" / "constraints.gen.ts"
    if "--check" in sys.argv:
        current = out.read_text() if out.exists() else ""
        if current != text:
            print("constraints.gen.ts is out of date; run `npm run gen`", file=sys.stderr)
            raise SystemExit(1)
        print("constraints.gen.ts is up to date")
        return
    out.write_text(text)
    print(f"wrote {out}")


if __name__ == "__main__":
    main()
