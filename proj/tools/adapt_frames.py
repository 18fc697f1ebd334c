#!/usr/bin/env python3
"""Convert frame-parser output into perspective annotation records.

Input is JSONL, one sentence per line, in the nested shape frame parsers
commonly emit:

    {"doc_id": "d1", "sent_id": "s1", "tokens": ["The", "man", "killed", "her"],
     "annotations": [{"label": "Killing", "span": [2, 2],
                      "children": [{"label": "Killer", "span": [0, 1]}]}]}

Spans are inclusive unless --exclusive-end is given. Frames not in --frames
(when given) are dropped. Output goes to stdout as JSONL for --annotations,
or as an /analyze request body with --request CONLLU.

    adapt_frames.py parser.jsonl > frames.jsonl
    adapt_frames.py parser.jsonl --request corpus.conllu > request.json
"""

import argparse
import json
import sys


class AdaptError(Exception):
    pass


def to_span(raw, inclusive, n_tokens, where):
    if not isinstance(raw, (list, tuple)) or len(raw) != 2:
        raise AdaptError(f"{where}: span must be [start, end]")
    start, end = int(raw[0]), int(raw[1]) + (1 if inclusive else 0)
    if start < 0 or end <= start or (n_tokens is not None and end > n_tokens):
        raise AdaptError(f"{where}: bad span {raw}")
    return {"start": start, "end": end}


def adapt_sentence(record, inclusive=True, keep=None, default_doc="doc0"):
    sent_id = record.get("sent_id")
    if sent_id is None:
        raise AdaptError("record without sent_id")
    doc_id = record.get("doc_id", default_doc)
    tokens = record.get("tokens")
    n = len(tokens) if isinstance(tokens, list) else None
    out = []
    for k, ann in enumerate(record.get("annotations", [])):
        frame = ann.get("label")
        if keep is not None and frame not in keep:
            continue
        where = f"{doc_id}/{sent_id} frame {k}"
        roles = [
            {"name": child["label"], **to_span(child.get("span"), inclusive, n, f"{where} role {child.get('label')}")}
            for child in ann.get("children", [])
        ]
        out.append({"doc_id": doc_id, "sent_id": sent_id, "frame": frame,
                    "trigger": to_span(ann.get("span"), inclusive, n, where), "roles": roles})
    return out


def adapt(lines, inclusive=True, keep=None):
    records = []
    for no, line in enumerate(lines, 1):
        if not line.strip():
            continue
        try:
            records.extend(adapt_sentence(json.loads(line), inclusive, keep))
        except json.JSONDecodeError as e:
            raise AdaptError(f"line {no}: {e}") from e
        except AdaptError as e:
            raise AdaptError(f"line {no}: {e}") from e
    return records


def main(argv=None):
    ap = argparse.ArgumentParser(description="Convert frame-parser output into annotation records.")
    ap.add_argument("input", help="parser output (JSONL), '-' for stdin")
    ap.add_argument("--exclusive-end", action="store_true", help="input span ends are exclusive")
    ap.add_argument("--frames", help="comma-separated frames to keep")
    ap.add_argument("--request", metavar="CONLLU", help="emit an /analyze body using this CoNLL-U file")
    args = ap.parse_args(argv)
    keep = None if not args.frames else {f.strip() for f in args.frames.split(",") if f.strip()}
    try:
        src = sys.stdin if args.input == "-" else open(args.input, encoding="utf-8")
        with src:
            records = adapt(src, not args.exclusive_end, keep)
        if args.request:
            with open(args.request, encoding="utf-8") as f:
                conllu = f.read()
            json.dump({"conllu": conllu, "annotations": records}, sys.stdout, ensure_ascii=False)
            sys.stdout.write("\n")
        else:
            for r in records:
                sys.stdout.write(json.dumps(r, ensure_ascii=False) + "\n")
    except (OSError, AdaptError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())
