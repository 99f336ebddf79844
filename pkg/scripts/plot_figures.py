"""Write the figure CSVs and, when matplotlib is installed, render them to PNG.

    python3 scripts/plot_figures.py [OUT_DIR]
"""

import csv
import sys
from pathlib import Path

from qduopoly.figures import write_all

TITLES = {
    "fig0.csv": "classical vs refined |11> payoff, c = 3",
    "fig1.csv": "LDM best replies",
    "fig2.csv": "RSM best replies",
    "fig3.csv": "RSM equilibrium payoff vs gamma",
}


def read(path: Path):
    with open(path, newline="") as fh:
        rows = list(csv.reader(fh))
    header, body = rows[0], [[float(v) for v in r] for r in rows[1:]]
    return header, [list(col) for col in zip(*body)]


def main(argv: list[str]) -> int:
    out = Path(argv[1]) if len(argv) > 1 else Path("figures")
    paths = write_all(out)
    try:
        import matplotlib
        matplotlib.use("Agg")
        import matplotlib.pyplot as plt
    except ImportError:
        print("matplotlib not installed; wrote CSV only")
        return 0
    for path in paths:
        header, cols = read(path)
        fig, ax = plt.subplots(figsize=(5, 4))
        if path.name in ("fig1.csv", "fig2.csv"):
            # x1 = beta1(x2) and x2 = beta2(x1) in the (x1, x2) plane
            ax.plot(cols[1], cols[0], label="player 1")
            ax.plot(cols[0], cols[2], label="player 2")
            ax.set_xlabel("x1")
            ax.set_ylabel("x2")
        else:
            for name, col in zip(header[1:], cols[1:]):
                ax.plot(cols[0], col, label=name)
            ax.set_xlabel(header[0])
        ax.set_title(TITLES[path.name])
        ax.legend()
        fig.tight_layout()
        fig.savefig(path.with_suffix(".png"), dpi=120)
        plt.close(fig)
        print(path.with_suffix(".png"))
    return 0


if __name__ == "__main__":
    sys.exit(main(sys.argv))
