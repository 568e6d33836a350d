"""Figure rendering for report output, file-based only.

The Agg backend keeps this usable on headless machines; every function
takes an output path and returns it.  Values arrive as floats because
the exact invariants (genera, rational j-values) are plotted for
orientation, not re-derived from the picture.
"""

from __future__ import annotations

import matplotlib

matplotlib.use('Agg')

import matplotlib.pyplot as plt  # noqa: E402  backend must be set first

BAR_COLOR = '#4878a8'


def separation_figure(names: list, values: list, label: str,
                      title: str, path: str) -> str:
    """Horizontal bar chart of one separating invariant per
    representative."""
    if len(names) != len(values) or not names:
        raise ValueError('need one value per representative')
    height = 0.45 * len(names) + 1.5
    fig, ax = plt.subplots(figsize=(6.4, height))
    ax.barh(range(len(names)), values, color=BAR_COLOR)
    ax.set_yticks(range(len(names)))
    ax.set_yticklabels(names)
    ax.invert_yaxis()
    ax.set_xlabel(label)
    ax.set_title(title)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return path


def orbit_figure(sizes: list, title: str, path: str) -> str:
    """Bar chart of orbit sizes from a lattice isometry report."""
    if not sizes:
        raise ValueError('no orbits to draw')
    fig, ax = plt.subplots(figsize=(6.4, 3.2))
    ax.bar(range(len(sizes)), sizes, color=BAR_COLOR)
    ax.set_xticks(range(len(sizes)))
    ax.set_xticklabels([str(i + 1) for i in range(len(sizes))])
    ax.set_xlabel('orbit')
    ax.set_ylabel('size')
    ax.set_title(title)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return path
