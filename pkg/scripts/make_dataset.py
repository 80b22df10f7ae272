#!/usr/bin/env python3
"""Regenerate data/stormofswords.csv.

Synthetic character-relationship edge list with hub-heavy structure
(random recursive tree + preferential extra edges), deterministic via the
package generator so the file never drifts.
"""

from __future__ import annotations

import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parents[1] / "src"))

from netviz.rng import SplitMix64  # noqa: E402

NAMES = [
    "Aemon", "Aerys", "Alliser", "Arya", "Balon", "Barristan", "Benjen",
    "Beric", "Bran", "Brienne", "Bronn", "Brynden", "Catelyn", "Cersei",
    "Craster", "Daario", "Daenerys", "Davos", "Drogo", "Eddard", "Eddison",
    "Edmure", "Elia", "Gendry", "Gilly", "Gregor", "Hodor", "Hoster",
    "Irri", "Jaime", "Janos", "Jeor", "Joffrey", "Jojen", "Jon",
    "Jorah", "Kevan", "Lancel", "Loras", "Luwin", "Lysa", "Mace",
    "Margaery", "Meera", "Melisandre", "Missandei", "Myrcella", "Oberyn",
    "Olenna", "Osha", "Petyr", "Podrick", "Pycelle", "Qyburn", "Ramsay",
    "Renly", "Rhaegar", "Rickard", "Rickon", "Robb", "Robert", "Roose",
    "Samwell", "Sandor", "Sansa", "Shae", "Shireen", "Stannis", "Theon",
    "Thoros", "Tommen", "Tormund", "Tyrion", "Tywin", "Varys", "Viserys",
    "Walder", "Ygritte", "Yoren",
]

EDGE_TARGET = 120


def main() -> None:
    rng = SplitMix64(2020)
    n = len(NAMES)
    edges: list[tuple[int, int, int]] = []
    seen: set[tuple[int, int]] = set()
    pool: list[int] = [0]

    def weight() -> int:
        return 1 + int(99 * rng.next_float() ** 2.5)

    # Spanning tree with preferential attachment: hubs emerge naturally.
    for k in range(1, n):
        other = pool[int(rng.next_float() * len(pool))]
        edges.append((other, k, weight()))
        seen.add((min(other, k), max(other, k)))
        pool.extend([other, k])

    while len(edges) < EDGE_TARGET:
        a = pool[int(rng.next_float() * len(pool))]
        b = pool[int(rng.next_float() * len(pool))]
        if a == b or (min(a, b), max(a, b)) in seen:
            continue
        edges.append((a, b, weight()))
        seen.add((min(a, b), max(a, b)))
        pool.extend([a, b])

    out = Path(__file__).resolve().parents[1] / "data" / "stormofswords.csv"
    out.parent.mkdir(parents=True, exist_ok=True)
    lines = ["Source,Target,Weight"]
    lines += [f"{NAMES[a]},{NAMES[b]},{w}" for a, b, w in edges]
    out.write_text("\n".join(lines) + "\n", encoding="utf-8")
    print(f"wrote {out}: {n} names, {len(edges)} edges")


if __name__ == "__main__":
    main()
