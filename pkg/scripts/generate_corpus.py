"""Write a seeded random corpus as JSON lines, one graph per line."""

import argparse
import sys

from kgraphs.oracle import digraph_corpus, dump_jsonl, random_corpus


def main() -> None:
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--count", type=int, default=500)
    p.add_argument("--seed", type=int, default=2024)
    p.add_argument("--k", type=int, default=2, help="rank; 1 gives plain directed graphs")
    p.add_argument("--max-n", type=int, default=6)
    p.add_argument("--max-entry", type=int, default=2)
    p.add_argument("-o", "--output", help="file to write (default stdout)")
    a = p.parse_args()
    if a.k == 1:
        graphs = digraph_corpus(a.count, a.seed, a.max_n, a.max_entry)
    else:
        graphs = random_corpus(a.count, a.seed, a.k, a.max_n, a.max_entry)
    text = dump_jsonl(graphs)
    if a.output:
        with open(a.output, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


if __name__ == "__main__":
    main()
