#!/usr/bin/env python3
"""Example: draw sentence-length box plots and toxicity histograms from a
report.json written by `storycmp analyze`. Needs matplotlib.

    python3 tools/plot_report.py report/report.json plots/
"""

import json
import os
import sys

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402


def main(report_path, out_dir):
    with open(report_path, encoding="utf-8") as f:
        report = json.load(f)
    os.makedirs(out_dir, exist_ok=True)

    if "sentence_length" in report:
        entries = report["sentence_length"]
        fig, ax = plt.subplots()
        ax.boxplot([e["values_retained"] for e in entries], showfliers=False)
        ax.set_xticklabels([e["corpus"] for e in entries])
        ax.set_ylabel("words per sentence")
        fig.savefig(os.path.join(out_dir, "sentence_length.png"), dpi=120)

    if "toxicity" in report:
        labels = [f"{b / 10:.1f}" for b in range(1, 10)]
        for category in report["toxicity"][0]["bins"]:
            fig, ax = plt.subplots()
            for entry in report["toxicity"]:
                # The first bin dominates for ordinary prose; leave it out.
                ax.plot(labels, entry["bins"][category][1:], marker="o", label=entry["corpus"])
            ax.set_title(category)
            ax.set_xlabel("score bin (lower edge)")
            ax.set_ylabel("% of sentences")
            ax.legend()
            fig.savefig(os.path.join(out_dir, f"toxicity_{category}.png"), dpi=120)


if __name__ == "__main__":
    if len(sys.argv) != 3:
        sys.exit(__doc__)
    main(sys.argv[1], sys.argv[2])
