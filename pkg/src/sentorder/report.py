"""Report rendering: JSON + per-story CSV + plain-text table, with matplotlib
figures saved next to them.

Everything written here must be byte-identical across runs for the same
inputs: no timestamps, insertion-ordered JSON keys, repr'd floats, and PNGs
saved through Agg with the Software metadata stripped.
"""

from __future__ import annotations

import json
from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt

from .metrics import MetricReport

_PNG_META = {"Software": None}  # drop the matplotlib version stamp


def write_report_json(report: MetricReport, config: dict, path: str | Path) -> None:
    payload = report.to_json_dict()
    payload["config"] = config
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(payload, fh, indent=2, ensure_ascii=False)
        fh.write("\n")


def render_table(report: MetricReport, config: dict) -> str:
    lines = []
    header = " ".join(f"{k}={v}" for k, v in config.items() if v is not None)
    lines.append(header)
    lines.append("-" * max(24, len(header)))
    rows = [
        ("stories", str(report.count)),
        ("mean_tau", _fmt(report.mean_tau)),
        ("pmr", _fmt(report.pmr)),
        ("mean_pairwise_accuracy", _fmt(report.mean_pairwise_accuracy)),
    ]
    width = max(len(name) for name, _ in rows)
    for name, value in rows:
        lines.append(f"{name:<{width}}  {value}")
    return "\n".join(lines) + "\n"


def _fmt(x) -> str:
    return "n/a" if x is None else f"{x:.4f}"


def write_table(report: MetricReport, config: dict, path: str | Path) -> str:
    text = render_table(report, config)
    Path(path).write_text(text, encoding="utf-8")
    return text


def render_tau_histogram(report: MetricReport, path: str | Path) -> bool:
    """Histogram of per-story tau over fixed [-1, 1] bins; returns False when
    no story has a defined tau (nothing is drawn)."""
    taus = [r.tau for r in report.per_story if r.tau is not None]
    if not taus:
        return False
    fig, ax = plt.subplots(figsize=(6, 4))
    ax.hist(taus, bins=20, range=(-1.0, 1.0), color="#4878d0", edgecolor="black")
    ax.axvline(report.mean_tau, color="#d65f5f", linestyle="--", label=f"mean {report.mean_tau:.4f}")
    ax.set_xlabel("Kendall tau")
    ax.set_ylabel("stories")
    ax.set_title("Per-story tau distribution")
    ax.legend()
    fig.tight_layout()
    fig.savefig(path, dpi=120, metadata=_PNG_META)
    plt.close(fig)
    return True


def write_comparison_csv(rows: list[dict], path: str | Path) -> None:
    cols = ["label", "mean_tau", "pmr", "mean_pairwise_accuracy", "count"]
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(",".join(cols) + "\n")
        for row in rows:
            fh.write(
                ",".join(
                    "" if row[c] is None else (repr(row[c]) if isinstance(row[c], float) else str(row[c]))
                    for c in cols
                )
                + "\n"
            )


def render_comparison_table(rows: list[dict]) -> str:
    headers = ["configuration", "mean_tau", "pmr", "pairwise", "count"]
    body = [
        [
            row["label"],
            _fmt(row["mean_tau"]),
            _fmt(row["pmr"]),
            _fmt(row["mean_pairwise_accuracy"]),
            str(row["count"]),
        ]
        for row in rows
    ]
    widths = [max(len(h), *(len(r[i]) for r in body)) if body else len(h) for i, h in enumerate(headers)]
    lines = [
        "  ".join(h.ljust(widths[i]) for i, h in enumerate(headers)),
        "  ".join("-" * widths[i] for i in range(len(headers))),
    ]
    for r in body:
        lines.append("  ".join(r[i].ljust(widths[i]) for i in range(len(headers))))
    return "\n".join(lines) + "\n"


def render_comparison_chart(rows: list[dict], path: str | Path) -> bool:
    """Grouped bars of mean_tau / pmr / pairwise accuracy per configuration."""
    if not rows:
        return False
    labels = [row["label"] for row in rows]
    metrics = [
        ("mean_tau", "#4878d0"),
        ("pmr", "#ee854a"),
        ("mean_pairwise_accuracy", "#6acc64"),
    ]
    x = range(len(rows))
    width = 0.27
    fig, ax = plt.subplots(figsize=(max(6, 1.8 * len(rows)), 4))
    for k, (name, color) in enumerate(metrics):
        vals = [row[name] if row[name] is not None else 0.0 for row in rows]
        offset = (k - 1) * width
        ax.bar([xi + offset for xi in x], vals, width=width, label=name, color=color)
    ax.set_xticks(list(x))
    ax.set_xticklabels(labels, rotation=20, ha="right")
    ax.set_ylabel("score")
    ax.set_title("Configuration comparison")
    ax.legend()
    fig.tight_layout()
    fig.savefig(path, dpi=120, metadata=_PNG_META)
    plt.close(fig)
    return True
