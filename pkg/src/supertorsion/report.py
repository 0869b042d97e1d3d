"""Serialization of results (JSON / CSV) and optional figures."""

from __future__ import annotations

import csv
import io
import json

from .scurve import INF


def elt_json(x):
    """Finite field element as an int (prime field) or coefficient list."""
    co = x.coeffs()
    return co[0] if len(co) == 1 else co


def point_json(P):
    if P is INF:
        return "inf"
    return {"x": elt_json(P.x), "y": elt_json(P.y)}


def dumps(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True)


SPLIT_COLUMNS = ["p", "q", "Q", "level", "eta_witness_i", "eta_witness_j"]


def split_csv(rows: list[dict]) -> str:
    buf = io.StringIO()
    w = csv.DictWriter(buf, fieldnames=SPLIT_COLUMNS, extrasaction="ignore", lineterminator="\n")
    w.writeheader()
    for r in rows:
        w.writerow({k: ("" if r.get(k) is None else r.get(k)) for k in SPLIT_COLUMNS})
    return buf.getvalue()


def rows_csv(rows: list[dict]) -> str:
    if not rows:
        return ""
    buf = io.StringIO()
    w = csv.DictWriter(buf, fieldnames=list(rows[0]), lineterminator="\n")
    w.writeheader()
    for r in rows:
        w.writerow(r)
    return buf.getvalue()


def _pyplot():
    import matplotlib
    matplotlib.use("Agg")
    import matplotlib.pyplot as plt
    return plt


def plot_split_levels(rows: list[dict], path: str) -> str:
    """Bar chart of split level against field order, one bar per row."""
    plt = _pyplot()
    fig, ax = plt.subplots(figsize=(6, 3.5))
    labels = [f"p={r['p']}\nQ={r['Q']}" for r in rows]
    ax.bar(range(len(rows)), [r["level"] for r in rows], color="#4a7ab5")
    ax.set_xticks(range(len(rows)))
    ax.set_xticklabels(labels, fontsize=8)
    ax.set_ylabel("split level k")
    ax.set_title(f"(1 - zeta_p)^k-torsion split level, q = {rows[0]['q']}" if rows else "")
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)
    return path


def plot_audit_degrees(report_json: dict, path: str) -> str:
    """Histogram of the field degree of each audit candidate."""
    plt = _pyplot()
    deg = report_json["degrees"]
    keys = sorted(deg, key=int)
    fig, ax = plt.subplots(figsize=(5, 3.5))
    ax.bar(keys, [deg[k] for k in keys], color="#6a9955")
    ax.set_xlabel(f"degree over F_{report_json['ell']}")
    ax.set_ylabel("candidates")
    ax.set_title(f"{report_json['plan']}: {report_json['candidates']} candidates, "
                 f"{len(report_json['offenders'])} offenders")
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)
    return path


def plot_descent_classes(rows: list[dict], path: str) -> str:
    """Scatter of (x-T) class-vector sums per point, which must all be 0 mod n."""
    plt = _pyplot()
    fig, ax = plt.subplots(figsize=(5, 3.5))
    ax.scatter(range(len(rows)), [r["sum_mod_n"] for r in rows], s=6)
    ax.set_xlabel("point index")
    ax.set_ylabel("sum of classes mod n")
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)
    return path
