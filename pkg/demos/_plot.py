"""Shared helper: save a figure if matplotlib is around, otherwise skip."""
import os


def save(fig_fn, name):
    try:
        import matplotlib
        matplotlib.use("Agg")
        import matplotlib.pyplot as plt
    except ImportError:
        print("(matplotlib not installed, skipping %s)" % name)
        return
    fig = fig_fn(plt)
    out = os.path.join(os.path.dirname(os.path.abspath(__file__)), name)
    fig.savefig(out, dpi=120, bbox_inches="tight")
    plt.close(fig)
    print("wrote", out)
