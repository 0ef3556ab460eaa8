"""Figure rendering for sweep output (consumes SweepRow records, e.g. read back from CSV)."""

from __future__ import annotations

from pathlib import Path
from typing import Sequence

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

from .sweep import SweepRow  # noqa: E402


def plot_sweep(rows: Sequence[SweepRow], path, width: float = 6.0, height: float = 4.0, dpi: int = 150) -> Path:
    """Normalized sum capacity vs. alpha, with and without secrecy, plus the WoCJ rate."""
    alpha = [r.alpha for r in rows]
    fig, ax = plt.subplots(figsize=(width, height))
    ax.plot(alpha, [r.nonsecure_sum_norm for r in rows], "k--", lw=1.2, label="without secrecy")
    ax.plot(alpha, [r.secure_sum_norm for r in rows], "b-", lw=1.8, label="with secrecy")
    ax.plot(alpha, [r.wocj_sum_norm for r in rows], "r:", lw=1.8, label="without cooperative jamming")
    ax.axvline(2 / 3, color="0.6", lw=0.8)
    ax.set_xlabel(r"$\alpha = m_c / m_d$")
    ax.set_ylabel(r"$C_{\mathrm{sum}} / m_d$")
    ax.set_xlim(min(alpha), max(alpha))
    ax.set_ylim(bottom=0)
    ax.legend(frameon=False, fontsize=9)
    fig.tight_layout()
    path = Path(path)
    fig.savefig(path, dpi=dpi)
    plt.close(fig)
    return path
