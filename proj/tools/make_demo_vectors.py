#!/usr/bin/env python3
# Copyright 2026 The kgen Authors. All Rights Reserved.
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Regenerates data/demo/vectors.txt.

Vectors come from a truncated SVD of the PPMI co-occurrence matrix of the demo
corpora; each lexicon synonym is then pulled toward its source word so that the
dictionary pairs are also close in vector space.
"""
import argparse
import re
from pathlib import Path

import numpy as np

WORD = re.compile(r"[\w'\u0080-\uffff]+")


def words(line):
    out = []
    for w in WORD.findall(line.lower()):
        w = w.strip("'")
        if w:
            out.append(w)
    return out


def sentences(demo):
    for name in ("lm.txt", "stylized.txt", "neutral.txt"):
        for line in (demo / name).read_text().splitlines():
            yield words(line)
    for line in (demo / "dialog.tsv").read_text().splitlines():
        for part in line.split("\t"):
            yield words(part)
    for doc in sorted((demo / "knowledge").glob("*.txt")):
        for line in doc.read_text().splitlines():
            yield words(line)
    for line in (demo / "qa.tsv").read_text().splitlines():
        for part in line.split("\t"):
            yield words(part)


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--demo", type=Path, default=Path(__file__).resolve().parent.parent / "data" / "demo")
    ap.add_argument("--dim", type=int, default=24)
    ap.add_argument("--window", type=int, default=2)
    ap.add_argument("--pull", type=float, default=0.85)
    args = ap.parse_args()

    lexicon = []
    for line in (args.demo / "lexicon.tsv").read_text().splitlines():
        if "\t" in line:
            src, syns = line.split("\t", 1)
            lexicon += [(src.strip(), s.strip()) for s in syns.split(",") if s.strip()]

    sents = [s for s in sentences(args.demo) if s]
    vocab = sorted({w for s in sents for w in s} | {w for pair in lexicon for w in pair})
    index = {w: i for i, w in enumerate(vocab)}
    counts = np.zeros((len(vocab), len(vocab)))
    for s in sents:
        for i, w in enumerate(s):
            for j in range(max(0, i - args.window), min(len(s), i + args.window + 1)):
                if i != j:
                    counts[index[w], index[s[j]]] += 1.0
    counts += 0.01
    total = counts.sum()
    row = counts.sum(axis=1, keepdims=True)
    col = counts.sum(axis=0, keepdims=True)
    ppmi = np.maximum(np.log(counts * total / (row * col)), 0.0)
    u, s, _ = np.linalg.svd(ppmi)
    vecs = u[:, : args.dim] * np.sqrt(s[: args.dim])
    # fix the SVD sign ambiguity so output is reproducible across LAPACK builds
    vecs *= np.sign(vecs[np.abs(vecs).argmax(axis=0), range(args.dim)])
    vecs /= np.linalg.norm(vecs, axis=1, keepdims=True) + 1e-12

    for src, syn in lexicon:
        a, b = index[src], index[syn]
        vecs[b] = args.pull * vecs[a] + (1.0 - args.pull) * vecs[b]

    with open(args.demo / "vectors.txt", "w") as out:
        for w in vocab:
            out.write(w + " " + " ".join(f"{x:.6f}" for x in vecs[index[w]]) + "\n")


if __name__ == "__main__":
    main()
