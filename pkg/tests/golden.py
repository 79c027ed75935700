"""Golden pipeline run over the shipped synthetic archive.

``python tests/golden.py --update`` rewrites ``data/golden.sha256`` after an
intentional output change.
"""
from __future__ import annotations

import hashlib
import os
import sys
from pathlib import Path

from crisislens.cli import main

DATA = Path(__file__).parent / "data"
ARCHIVE = DATA / "archive_1000.ndjson"
LABELS = DATA / "labels.csv"
HASHES = DATA / "golden.sha256"
EPOCH = "1700000000"

STEPS = [
    ("ingest", ["ingest", "{archive}"]),
    ("sentiment", ["sentiment", "{archive}", "--sweep"]),
    ("shift_lang", ["shift", "{archive}", "--kind", "sentiment"]),
    ("shift_time", ["shift", "{archive}", "--kind", "jsd", "--before", "2017-09-19", "--after", "2017-09-20", "--lang", "es"]),
    ("build", ["graph", "build", "{archive}"]),
    ("metrics", ["graph", "metrics", "{archive}"]),
    ("communities", ["graph", "communities", "{archive}", "--seed", "7"]),
    ("filter", ["graph", "filter", "{archive}", "--seed", "7"]),
    ("ego", ["graph", "ego", "{archive}", "--drop-ego", "--seed", "7"]),
    ("timeseries", ["graph", "timeseries", "{archive}", "--labels", "{labels}"]),
]


def run(out: Path) -> dict[str, str]:
    """Run every step into ``out``; return sha256 per output file (manifests excluded)."""
    os.environ["SOURCE_DATE_EPOCH"] = EPOCH
    for name, argv in STEPS:
        argv = [a.format(archive=ARCHIVE, labels=LABELS) for a in argv]
        code = main(argv + ["--out", str(out / name)])
        if code != 0:
            raise RuntimeError(f"step {name} exited with {code}")
    return {
        p.relative_to(out).as_posix(): hashlib.sha256(p.read_bytes()).hexdigest()
        for p in sorted(out.rglob("*"))
        if p.is_file() and p.name != "run_manifest.json"
    }


def read_hashes() -> dict[str, str]:
    rows = (line.split("  ", 1) for line in HASHES.read_text(encoding="utf-8").splitlines() if line)
    return {name: digest for digest, name in rows}


def write_hashes(hashes: dict[str, str]) -> None:
    HASHES.write_text("".join(f"{d}  {n}\n" for n, d in sorted(hashes.items())), encoding="utf-8")


if __name__ == "__main__":
    import tempfile

    with tempfile.TemporaryDirectory() as tmp:
        hashes = run(Path(tmp))
    if "--update" in sys.argv:
        write_hashes(hashes)
        print(f"wrote {len(hashes)} hashes to {HASHES}")
    else:
        expected = read_hashes()
        bad = sorted(n for n in expected.keys() | hashes.keys() if expected.get(n) != hashes.get(n))
        print("\n".join(bad) or "all outputs match")
        sys.exit(1 if bad else 0)
