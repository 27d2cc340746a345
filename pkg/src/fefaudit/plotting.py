"""Render sweep results to an image file.

matplotlib is imported lazily and forced onto the Agg backend so the CLI
works headless; nothing here opens a window.
"""

from __future__ import annotations

from collections.abc import Sequence

# Columns drawn as curves, in legend order.  fef_lower is drawn with markers
# since it is the certified floor the bounds are judged against.
_CURVE_STYLE = {
    "theorem1_bound": dict(color="tab:blue", linestyle="-"),
    "paper_example3_form": dict(color="tab:cyan", linestyle=":"),
    "hoelder_sum_bound": dict(color="tab:orange", linestyle="--"),
    "lm_bound": dict(color="tab:green", linestyle="-."),
    "spectral_bound": dict(color="tab:red", linestyle="--"),
    "fef_lower": dict(color="black", linestyle="-", marker=".", markersize=4),
}


def render_sweep(
    rows: Sequence[dict[str, float]],
    param_name: str,
    family: str,
    path: str,
) -> None:
    """Plot every bound column present in `rows` against the swept parameter."""
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    xs = [row["param"] for row in rows]
    fig, ax = plt.subplots(figsize=(7.0, 4.5))
    for column, style in _CURVE_STYLE.items():
        if rows and column in rows[0]:
            ax.plot(xs, [row[column] for row in rows], label=column, **style)
    ax.set_xlabel(param_name)
    ax.set_ylabel("fraction")
    ax.set_title(f"{family}: bounds vs certified lower estimate")
    ax.legend(fontsize=8)
    ax.grid(True, alpha=0.3)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
