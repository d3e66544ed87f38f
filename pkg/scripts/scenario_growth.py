"""How the number of complete scenarios grows with the iteration bound.

    python3 scripts/scenario_growth.py [SPEC] [--max-bound N]
"""

import argparse
import time
from pathlib import Path

from lsawfp.scenarios import count_scenarios
from lsawfp.specfile import parse_spec, to_gmwf

DEFAULT = Path(__file__).resolve().parent.parent / "data" / "peer_review.lsawfp"


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("spec", nargs="?", default=str(DEFAULT))
    ap.add_argument("--max-bound", type=int, default=8)
    args = ap.parse_args()

    g = to_gmwf(parse_spec(Path(args.spec).read_text()))
    print(f"{'bound':>5}  {'scenarios':>10}  {'ms':>8}")
    for bound in range(args.max_bound + 1):
        start = time.perf_counter()
        n = count_scenarios(g, bound)
        print(f"{bound:>5}  {n:>10}  {1000 * (time.perf_counter() - start):>8.2f}")


if __name__ == "__main__":
    main()
