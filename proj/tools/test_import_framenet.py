import json
import os
import subprocess
import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))
import import_framenet as fn  # noqa: E402

FIXTURE = Path(__file__).parent / "testdata" / "fn"


def test_frames_are_compiled():
    records = fn.compile_kb(FIXTURE)
    frames = {r["name"]: r for r in records if r["kind"] == "frame"}
    assert sorted(frames) == ["Death", "Event", "Killing"]
    k = frames["Killing"]
    assert k["core_roles"] == ["Killer", "Victim", "Cause"]
    assert k["non_core_roles"] == ["Place"]
    assert k["lexical_units"] == ["kill.v", "murder.n"]
    assert k["definition"] == "A Killer or Cause causes the death of the Victim."
    assert k["examples"] == ["John drowned Martha."]
    assert frames["Death"]["non_core_roles"] == ["Cause"]


def test_relations_keep_known_frames_and_orient_causatives():
    warnings = []
    records = fn.compile_kb(FIXTURE, warn=warnings.append)
    rels = [(r["type"], r["parent"], r["child"]) for r in records if r["kind"] == "relation"]
    assert rels == [("Causative_of", "Killing", "Death"), ("Inheritance", "Event", "Death")]
    assert any("Metaphor" in w for w in warnings)


def test_frame_subset():
    records = fn.compile_kb(FIXTURE, keep={"Killing", "Death"})
    assert [r["name"] for r in records if r["kind"] == "frame"] == ["Death", "Killing"]
    assert [r["type"] for r in records if r["kind"] == "relation"] == ["Causative_of"]
    with pytest.raises(ValueError):
        fn.compile_kb(FIXTURE, keep={"Nope"})


def test_cli_exit_codes(tmp_path):
    out = tmp_path / "kb.jsonl"
    assert fn.main([str(FIXTURE), "-o", str(out)]) == 0
    lines = [json.loads(line) for line in out.read_text().splitlines()]
    assert lines[0]["name"] == "Death"
    assert fn.main([str(tmp_path / "missing"), "-o", str(out)]) == 2


@pytest.mark.skipif("PERSPECTIVE_CLI" not in os.environ, reason="perspective binary not given")
def test_compiled_kb_loads(tmp_path):
    kb = tmp_path / "framenet_subset.jsonl"
    fn.main([str(FIXTURE), "-o", str(kb)])
    (tmp_path / "agentivity.tsv").write_text("Killing\tactive\nDeath\tnon_active\nEvent\tno_participant\n")
    (tmp_path / "role_mapping.tsv").write_text("Killing\tKiller\tVictim\tCause\n")
    r = subprocess.run(
        [os.environ["PERSPECTIVE_CLI"], "alternatives", "--frames", "Death", "--kb-dir", str(tmp_path)],
        capture_output=True, text=True)
    assert r.returncode == 0, r.stderr
    assert "Killing" in json.loads(r.stdout)["added"]
