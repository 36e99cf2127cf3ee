"""Run the full 133Cs protocol and write every output under ./results/paper.

    python scripts/reproduce_paper.py [out_dir]
"""

import sys

from nmrjj.cli import main

if __name__ == "__main__":
    out = sys.argv[1] if len(sys.argv) > 1 else "results/paper"
    sys.exit(main(["reproduce-paper", "--out", out]))
