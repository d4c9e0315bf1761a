"""Figure rendering for the survey report path.

Figures are informational companions to the delimited output; they are not
part of the golden-file contract (PNG bytes drift across matplotlib
versions) so nothing here participates in determinism checks.
"""

from __future__ import annotations


def render_survey_figure(summary: list[dict], path: str) -> None:
    """Plot max nice order against the cyclic modulus and save to ``path``."""
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    ns = []
    maxima = []
    for entry in summary:
        spec = entry["groupSpec"]
        ns.append(int(spec[2:-1]))
        maxima.append(entry["maxNiceOrder"])
    fig, ax = plt.subplots(figsize=(6, 4))
    ax.plot(ns, maxima, marker="o", color="tab:blue")
    ax.set_xlabel("modulus n of Z/n")
    ax.set_ylabel("max nice order")
    ax.set_title("Extremal nice order under the weak-order cap")
    ax.grid(True, alpha=0.3)
    ax.set_xticks(ns)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
