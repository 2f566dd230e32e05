#!/usr/bin/env python3
# Converts a slash-tagged Penn Treebank sample (one sentence per line,
# "word/TAG" tokens) into the two-column vertical universal-tag format used by
# `nlicrash tag train`. Ambiguous tags such as "VBG|NN" resolve to the first
# alternative.
import argparse
import pathlib


def load_map(path):
    table = {}
    for line in pathlib.Path(path).read_text(encoding="utf-8").splitlines():
        if not line or line.startswith("# "):
            continue
        penn, universal = line.split("\t")
        table[penn] = universal
    return table


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--input", required=True)
    ap.add_argument("--map", required=True)
    ap.add_argument("--out-dir", required=True)
    ap.add_argument("--train", type=int, default=5000)
    ap.add_argument("--heldout", type=int, default=1000)
    args = ap.parse_args()

    table = load_map(args.map)
    sentences = []
    for line in pathlib.Path(args.input).read_text(encoding="utf-8").splitlines():
        line = line.strip()
        if not line:
            continue
        sent = []
        for item in line.split(" "):
            word, tag = item.rsplit("/", 1)
            tag = tag.split("|")[0]
            sent.append((word, table[tag]))
        sentences.append(sent)

    out = pathlib.Path(args.out_dir)
    out.mkdir(parents=True, exist_ok=True)
    splits = {
        "train.txt": sentences[: args.train],
        "heldout.txt": sentences[args.train : args.train + args.heldout],
    }
    for name, sents in splits.items():
        with open(out / name, "w", encoding="utf-8") as fh:
            for sent in sents:
                for word, tag in sent:
                    fh.write(f"{word}\t{tag}\n")
                fh.write("\n")


if __name__ == "__main__":
    main()
