"""Map the relay placements where the certified sum-capacity result
applies under two-ray pathloss: scan a grid of candidate positions and
test the relay-decoding condition and the weak-interference certificate
at each point.
"""

import argparse

from zicr import DEFAULT_LAYOUT, relay_region


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--resolution", type=int, default=200)
    ap.add_argument(
        "--bounds", type=float, nargs=4, default=[-1.0, 3.0, -1.0, 3.0],
        metavar=("XMIN", "XMAX", "YMIN", "YMAX"),
    )
    ap.add_argument("--pathloss_exponent", type=float, default=4.0)
    ap.add_argument("--out", default="relay_region.csv")
    ap.add_argument("--plot", action="store_true")
    args = ap.parse_args()

    layout = DEFAULT_LAYOUT
    region = relay_region(
        layout,
        bounds=tuple(args.bounds),
        resolution=args.resolution,
        pathloss_exponent=args.pathloss_exponent,
    )
    with open(args.out, "w", encoding="utf-8") as fh:
        fh.write("x,y,inside\n")
        for i, x in enumerate(region.xs):
            for j, y in enumerate(region.ys):
                fh.write(f"{x:.15g},{y:.15g},{int(region.mask[i, j])}\n")
    centroid = region.centroid()
    print(f"wrote {region.mask.size} cells to {args.out}; {region.count} feasible")
    if centroid is not None:
        print(f"feasible-region centroid: ({centroid[0]:.4f}, {centroid[1]:.4f})")

    if args.plot:
        import matplotlib.pyplot as plt

        plt.imshow(
            region.mask.T,
            origin="lower",
            extent=args.bounds,
            cmap="Greens",
            alpha=0.7,
            aspect="equal",
        )
        nodes = (layout.tx1, layout.rx1, layout.tx2, layout.rx2)
        names = ("tx1", "rx1", "tx2", "rx2")
        for (px, py), name in zip(nodes, names):
            plt.plot(px, py, "k^")
            plt.annotate(name, (px, py), textcoords="offset points", xytext=(4, 4))
        plt.xlabel("x")
        plt.ylabel("y")
        plt.tight_layout()
        plt.savefig(args.out.rsplit(".", 1)[0] + ".png", dpi=150)
        print("plot saved")


if __name__ == "__main__":
    main()
