#!/usr/bin/env python3
"""Compile a FrameNet release (frame/*.xml + frRelation.xml) into the
line-delimited KB format read by perspective.

    import_framenet.py FRAMENET_DIR -o framenet.jsonl [--frames Killing,Death]
"""

import argparse
import json
import re
import sys
from pathlib import Path
import xml.etree.ElementTree as ET

NS = "{http://framenet.icsi.berkeley.edu}"
CORE = {"Core", "Core-Unexpressed"}

# FrameNet relation type -> compiled name. Anything else is skipped.
RELATIONS = {
    "Inheritance": "Inheritance",
    "Perspective_on": "Perspective_on",
    "Causative_of": "Causative_of",
    "Inchoative_of": "Inchoative_of",
    "Using": "Uses",
    "Subframe": "Subframe",
    "Precedes": "Precedes",
    "See_also": "See_also",
}

# For these, the compiled parent is the frame in the slot named here.
PARENT_SLOT = {"Causative_of": "Causative", "Inchoative_of": "Inchoative"}

TAG = re.compile(r"<[^>]+>")
EXAMPLE = re.compile(r"<ex>(.*?)</ex>", re.S)


def strip_markup(text):
    return re.sub(r"\s+", " ", TAG.sub("", text)).strip()


def parse_definition(raw):
    raw = raw or ""
    examples = [strip_markup(e) for e in EXAMPLE.findall(raw)]
    body = EXAMPLE.sub("", raw)
    return strip_markup(body), [e for e in examples if e]


def read_frame(path):
    root = ET.parse(path).getroot()
    if root.tag != NS + "frame":
        raise ValueError(f"{path}: not a frame document")
    definition, examples = parse_definition(root.findtext(NS + "definition"))
    core, non_core = [], []
    for fe in root.findall(NS + "FE"):
        (core if fe.get("coreType") in CORE else non_core).append(fe.get("name"))
    lus = [lu.get("name") for lu in root.findall(NS + "lexUnit")]
    return {
        "kind": "frame",
        "name": root.get("name"),
        "definition": definition,
        "core_roles": core,
        "non_core_roles": non_core,
        "lexical_units": lus,
        "examples": examples,
    }


def read_relations(path, warn):
    out = []
    for rtype in ET.parse(path).getroot().findall(NS + "frameRelationType"):
        name = rtype.get("name")
        if name not in RELATIONS:
            warn(f"skipping relation type {name}")
            continue
        swap = PARENT_SLOT.get(name) is not None and rtype.get("subFrameName") == PARENT_SLOT[name]
        for rel in rtype.findall(NS + "frameRelation"):
            sup, sub = rel.get("superFrameName"), rel.get("subFrameName")
            parent, child = (sub, sup) if swap else (sup, sub)
            out.append({"kind": "relation", "type": RELATIONS[name], "parent": parent, "child": child})
    return out


def compile_kb(fn_dir, keep=None, warn=lambda m: None):
    fn_dir = Path(fn_dir)
    frame_dir = fn_dir / "frame"
    if not frame_dir.is_dir():
        raise FileNotFoundError(f"{frame_dir} not found")
    frames = [read_frame(p) for p in sorted(frame_dir.glob("*.xml"))]
    if keep is not None:
        missing = sorted(set(keep) - {f["name"] for f in frames})
        if missing:
            raise ValueError("unknown frames: " + ", ".join(missing))
        frames = [f for f in frames if f["name"] in keep]
    frames.sort(key=lambda f: f["name"])
    names = {f["name"] for f in frames}
    records = list(frames)
    rel_path = fn_dir / "frRelation.xml"
    if rel_path.exists():
        rels = [r for r in read_relations(rel_path, warn) if r["parent"] in names and r["child"] in names]
        rels.sort(key=lambda r: (r["type"], r["parent"], r["child"]))
        records.extend(rels)
    else:
        warn(f"{rel_path} not found; no relations written")
    return records


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("framenet_dir")
    ap.add_argument("-o", "--output", required=True)
    ap.add_argument("--frames", help="comma-separated frame names to keep")
    args = ap.parse_args(argv)
    keep = None if not args.frames else {f.strip() for f in args.frames.split(",") if f.strip()}
    try:
        records = compile_kb(args.framenet_dir, keep, warn=lambda m: print("warning: " + m, file=sys.stderr))
    except (OSError, ValueError, ET.ParseError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    with open(args.output, "w", encoding="utf-8") as out:
        for r in records:
            out.write(json.dumps(r, ensure_ascii=False) + "\n")
    print(f"wrote {sum(r['kind'] == 'frame' for r in records)} frames", file=sys.stderr)
    return 0


if __name__ == "__main__":
    sys.exit(main())
