"""Figure rendering for the CLI report paths.

Every renderer writes a PNG next to the delimited output and returns the
path.  Matplotlib is imported lazily with the Agg backend so headless
runs never touch a display.
"""

from __future__ import annotations

RC = {
    "figure.figsize": (6.4, 4.0),
    "figure.dpi": 130,
    "axes.grid": True,
    "grid.alpha": 0.3,
    "axes.spines.top": False,
    "axes.spines.right": False,
    "font.size": 10,
}


def _pyplot():
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    plt.rcParams.update(RC)
    return plt


def render_catalog(xs, density, g_re, g_im, atoms, path, title):
    plt = _pyplot()
    fig, ax = plt.subplots()
    ax.plot(xs, density, label="density", lw=1.8)
    ax.plot(xs, g_re, "--", label="Re G", lw=1.0)
    ax.plot(xs, g_im, ":", label="Im G", lw=1.0)
    for loc, mass in atoms:
        ax.annotate(f"atom {mass:g}", (loc, 0.0), textcoords="offset points",
                    xytext=(3, 12), fontsize=8)
        ax.vlines(loc, 0.0, mass, colors="k", lw=2.0)
    ax.set_xlabel("x")
    ax.set_title(title)
    ax.legend(frameon=False)
    fig.tight_layout()
    fig.savefig(path)
    plt.close(fig)
    return path


def render_histogram(edges, counts, path, title, overlay=None):
    plt = _pyplot()
    fig, ax = plt.subplots()
    widths = [b - a for a, b in zip(edges[:-1], edges[1:])]
    total = sum(counts) or 1
    heights = [c / (total * w) for c, w in zip(counts, widths)]
    ax.bar(edges[:-1], heights, width=widths, align="edge",
           alpha=0.65, label="empirical")
    if overlay is not None:
        xs, ys = overlay
        ax.plot(xs, ys, "r-", lw=1.6, label="target density")
    ax.set_xlabel("eigenvalue")
    ax.set_ylabel("density")
    ax.set_title(title)
    ax.legend(frameon=False)
    fig.tight_layout()
    fig.savefig(path)
    plt.close(fig)
    return path


def render_radial(r, F, rho, path, title):
    plt = _pyplot()
    fig, ax = plt.subplots()
    ax.plot(r, F, label="F(r)", lw=1.8)
    finite = [(x, y) for x, y in zip(r, rho) if y == y and abs(y) < 1e12]
    if finite:
        ax.plot([x for x, _ in finite], [y for _, y in finite],
                "--", label="density", lw=1.2)
    ax.set_xlabel("radius")
    ax.set_title(title)
    ax.legend(frameon=False)
    fig.tight_layout()
    fig.savefig(path)
    plt.close(fig)
    return path


def render_repro(report, path):
    plt = _pyplot()
    names = [c.name for c in report.checks]
    ok = [1.0 if c.passed else 0.0 for c in report.checks]
    fig, ax = plt.subplots(figsize=(6.4, 0.32 * len(names) + 1.2))
    colors = ["#2a9d2a" if v else "#c23b22" for v in ok]
    ax.barh(range(len(names)), [1.0] * len(names), color=colors, alpha=0.8)
    ax.set_yticks(range(len(names)))
    ax.set_yticklabels(names, fontsize=7)
    ax.set_xticks([])
    ax.invert_yaxis()
    ax.set_title(f"suite {report.suite}: "
                 f"{'pass' if report.passed else 'FAIL'}")
    fig.tight_layout()
    fig.savefig(path)
    plt.close(fig)
    return path
