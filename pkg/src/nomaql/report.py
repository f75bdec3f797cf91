"""Figure rendering for sweep results.

Renders matplotlib figures to files next to the delimited output; nothing
here opens a window (the Agg backend is forced). The generic entry point
is :func:`plot_metric`; :func:`render_repro` maps each canned experiment
name to its figure set.
"""

from __future__ import annotations

from pathlib import Path
from typing import Mapping

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402  (backend must be set first)

from .montecarlo import SweepResult  # noqa: E402

_MARKERS = ("o", "s", "^", "v", "D", "x", "*", "P")

_AXIS_LABELS = {
    "loading_factor": "loading factor (devices per slot)",
    "n_power_levels": "power levels",
    "learning_rate": "learning rate",
    "sic_error_factor": "SIC residual factor",
    "protocol": "protocol",
}

_METRIC_LABELS = {
    "throughput": "throughput (packets / slot / frame)",
    "latency": "latency (frames)",
}


def _axis_value(point, axis: str):
    if axis == "loading_factor":
        return point.params.n_devices / point.params.n_slots
    if axis == "protocol":
        return point.params.protocol.value
    return getattr(point.params, axis)


def _metric_value(point, metric: str) -> tuple[float, float]:
    s = point.stats
    if metric == "throughput":
        return s.throughput_mean, s.throughput_ci95
    if metric == "latency":
        return s.latency_mean, s.latency_ci95
    raise ValueError(f"unknown metric {metric!r}")


def series_from(result: SweepResult, x_axis: str, series_axis: str | None,
                metric: str) -> dict:
    """Group a sweep into plottable series: label -> (x, mean, ci) arrays."""
    series: dict = {}
    for point in result.points:
        label = (_axis_value(point, series_axis)
                 if series_axis else "all points")
        x = _axis_value(point, x_axis)
        mean, ci = _metric_value(point, metric)
        series.setdefault(label, []).append((x, mean, ci))
    return {label: sorted(rows) for label, rows in series.items()}


def _new_axes(ax=None):
    if ax is not None:
        return ax.figure, ax
    fig, ax = plt.subplots(figsize=(6.0, 4.2))
    return fig, ax


def _draw_series(ax, series: Mapping, series_axis: str | None) -> None:
    for i, (label, rows) in enumerate(series.items()):
        xs = [r[0] for r in rows]
        ys = [r[1] for r in rows]
        cis = [r[2] for r in rows]
        name = (f"{_AXIS_LABELS.get(series_axis, series_axis)} = {label}"
                if series_axis and series_axis != "protocol" else str(label))
        ax.errorbar(xs, ys, yerr=cis, marker=_MARKERS[i % len(_MARKERS)],
                    markersize=4.5, capsize=2.5, linewidth=1.2, label=name)
    ax.grid(True, alpha=0.35)
    ax.legend(fontsize=8)


def plot_metric(result: SweepResult, metric: str, x_axis: str,
                series_axis: str | None, path, *, logy: bool = False,
                title: str | None = None) -> Path:
    """One metric-vs-axis figure with 95% CI bars, written to ``path``."""
    fig, ax = _new_axes()
    _draw_series(ax, series_from(result, x_axis, series_axis, metric),
                 series_axis)
    ax.set_xlabel(_AXIS_LABELS.get(x_axis, x_axis))
    ax.set_ylabel(_METRIC_LABELS.get(metric, metric))
    if logy:
        ax.set_yscale("log")
    if title:
        ax.set_title(title)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return Path(path)


def plot_traces(results: Mapping[str, SweepResult], path,
                conv_label: str | None = None) -> Path:
    """Mean per-frame traces: one interference panel per sweep label,
    plus a convergence-factor panel for ``conv_label`` (default: last)."""
    labels = list(results)
    conv_label = conv_label or labels[-1]
    n_panels = len(labels) + 1
    fig, axes = plt.subplots(1, n_panels, figsize=(4.6 * n_panels, 3.8))
    for ax, label in zip(axes, labels):
        for point in results[label].points:
            over = ", ".join(
                f"{k.replace('_', ' ')}={getattr(v, 'value', v)}"
                for k, v in point.overrides.items())
            ax.plot(point.stats.interference_trace_mean, linewidth=1.0,
                    label=over or "base")
        ax.set_yscale("log")
        ax.set_xlabel("frame")
        ax.set_ylabel("mean interference (W)")
        ax.set_title(label)
        ax.grid(True, alpha=0.35)
        ax.legend(fontsize=7)
    ax = axes[-1]
    for point in results[conv_label].points:
        over = ", ".join(
            f"{k.replace('_', ' ')}={getattr(v, 'value', v)}"
            for k, v in point.overrides.items())
        ax.plot(point.stats.convergence_trace_mean, linewidth=1.0,
                label=over or "base")
    ax.set_xlabel("frame")
    ax.set_ylabel("mean convergence factor")
    ax.set_title(f"convergence ({conv_label})")
    ax.grid(True, alpha=0.35)
    ax.legend(fontsize=7)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return Path(path)


def plot_beta_panels(result: SweepResult, path) -> Path:
    """Throughput vs load, one panel per SIC residual, lines per protocol."""
    betas = sorted({p.params.sic_error_factor for p in result.points})
    fig, axes = plt.subplots(1, len(betas), figsize=(4.6 * len(betas), 3.8),
                             sharey=True)
    axes = [axes] if len(betas) == 1 else list(axes)
    for ax, beta in zip(axes, betas):
        sub = [p for p in result.points
               if p.params.sic_error_factor == beta]
        series: dict = {}
        for point in sub:
            series.setdefault(point.params.protocol.value, []).append(
                (point.params.n_devices / point.params.n_slots,
                 point.stats.throughput_mean, point.stats.throughput_ci95))
        _draw_series(ax, {k: sorted(v) for k, v in series.items()}, "protocol")
        ax.set_title(f"SIC residual = {beta:g}")
        ax.set_xlabel(_AXIS_LABELS["loading_factor"])
    axes[0].set_ylabel(_METRIC_LABELS["throughput"])
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return Path(path)


def render_repro(name: str, results: Mapping[str, SweepResult],
                 outdir) -> list[Path]:
    """Render the figure(s) of one canned experiment into ``outdir``."""
    outdir = Path(outdir)
    main = results.get("main")
    if name == "fig4":
        return [plot_metric(main, "throughput", "loading_factor",
                            "n_power_levels", outdir / "fig4_throughput.png")]
    if name == "fig5":
        return [plot_metric(main, "latency", "loading_factor",
                            "n_power_levels", outdir / "fig5_latency.png",
                            logy=True)]
    if name == "fig6":
        return [plot_traces(results, outdir / "fig6_traces.png",
                            conv_label="L100")]
    if name == "fig7":
        return [plot_metric(main, "throughput", "loading_factor", "protocol",
                            outdir / "fig7_throughput.png"),
                plot_metric(main, "latency", "loading_factor", "protocol",
                            outdir / "fig7_latency.png", logy=True)]
    if name == "fig8":
        return [plot_beta_panels(main, outdir / "fig8_throughput.png")]
    if name == "fig9":
        return [plot_metric(main, "latency", "learning_rate",
                            "n_power_levels", outdir / "fig9_latency.png")]
    raise ValueError(f"unknown repro name {name!r}")
