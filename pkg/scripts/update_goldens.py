#!/usr/bin/env python3
"""Regenerate the golden emission files under tests/golden/.

Run after an intentional change to the dataset or HTML emission format,
then review the diff before committing.
"""

from __future__ import annotations

import sys
from pathlib import Path

ROOT = Path(__file__).resolve().parents[1]
sys.path.insert(0, str(ROOT / "src"))
sys.path.insert(0, str(ROOT / "tests"))

from netviz.emit import emit_datasets, render_html  # noqa: E402
from fixture_networks import FIXTURES  # noqa: E402


def main() -> None:
    golden = ROOT / "tests" / "golden"
    golden.mkdir(parents=True, exist_ok=True)
    for name, build in FIXTURES.items():
        net, positions = build()
        datasets = emit_datasets(net, positions)
        (golden / f"{name}.datasets.json").write_text(
            datasets.to_json(pretty=True) + "\n", encoding="utf-8")
        (golden / f"{name}.html").write_text(
            render_html(net, positions=positions), encoding="utf-8")
        print(f"wrote goldens for {name}")


if __name__ == "__main__":
    main()
