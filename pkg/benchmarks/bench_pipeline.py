"""End-to-end throughput of `run` on a synthetic corpus, under both backends.

Each backend runs in a fresh interpreter because the flag is read at import.

    python3 benchmarks/bench_pipeline.py [--records 1000000]
"""

import argparse
import itertools
import json
import os
import subprocess
import sys
import tempfile
import time
from pathlib import Path

from gendered_terms.synth import SynthConfig, iter_records, make_vocabulary


def write_corpus(path, n_records, seed=9):
    cfg = SynthConfig.from_dict({
        "n_female_users": 30000, "n_male_users": 70000, "n_ungendered_users": 100000,
        "months": 6, "comments_per_user_per_month": 1.0,
        "subreddits": [{"name": f"sub{i:02d}", "female_weight": 1 + i % 3, "male_weight": 3 - i % 3}
                       for i in range(20)],
        "vocabulary": make_vocabulary(300, 0.005, 0.05, seed=seed),
        "seed": seed,
    })
    with open(path, "w", encoding="utf-8") as fh:
        for rec in itertools.islice(iter_records(cfg), n_records):
            fh.write(json.dumps(rec))
            fh.write("\n")


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--records", type=int, default=1_000_000)
    args = ap.parse_args(argv)

    with tempfile.TemporaryDirectory() as tmp:
        tmp = Path(tmp)
        corpus = tmp / "corpus.ndjson"
        t0 = time.perf_counter()
        write_corpus(corpus, args.records)
        print(f"generated {args.records:,} records in {time.perf_counter() - t0:.1f}s")
        for label, flag in (("numba", "0"), ("numpy", "1")):
            conf = tmp / f"{label}.json"
            conf.write_text(json.dumps({"inputs": [str(corpus)], "out": str(tmp / label)}))
            env = dict(os.environ, GENDERED_TERMS_DISABLE_NUMBA=flag)
            t0 = time.perf_counter()
            subprocess.run([sys.executable, "-m", "gendered_terms", "run", "--config", str(conf)],
                           env=env, check=True, stdout=subprocess.DEVNULL)
            print(f"{label:<6} run: {time.perf_counter() - t0:.1f}s")
        same = (tmp / "numba" / "assoc" / "runs.json").read_bytes() == (tmp / "numpy" / "assoc" / "runs.json").read_bytes()
        print(f"association output identical across backends: {same}")


if __name__ == "__main__":
    main()
