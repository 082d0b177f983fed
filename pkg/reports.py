"""
Reports - fixed-layout text shared by the CLI and the HTTP routes
"""

from typing import List

from defining_graph import DefiningGraph, order_report
from whitehead_norms import DescentResult
from whitehead_partitions import WhiteheadPartition


def graph_info_text(g: DefiningGraph) -> str:
    report = order_report(g)

    def ordered(vs) -> str:
        return " ".join(v for v in g.vertices if v in vs) or "-"

    lines = [f"vertices: {' '.join(g.vertices)}"]
    lines.append("edges: " + (" ".join(f"{u}-{v}" for u, v in g.sorted_edges()) or "-"))
    for v in g.vertices:
        lines.append(f"link {v}: {ordered(g.link(v))}")
    lines.append(f"principal: {ordered(report.principal)}")
    lines.append(f"maximal: {ordered(report.maximal)}")
    for members, abelian in zip(report.classes, report.abelian):
        kind = "abelian" if abelian or len(members) == 1 else "nonabelian"
        lines.append(f"class: {' '.join(members)} ({kind})")
    return "\n".join(lines) + "\n"


def partitions_text(found: List[WhiteheadPartition]) -> str:
    lines = [p.text() for p in found]
    lines.append(f"count: {len(found)}")
    return "\n".join(lines) + "\n"


def minimize_text(result: DescentResult) -> str:
    lines = [f"initial: {result.initial_prefix}"]
    for number, step in enumerate(result.steps, start=1):
        lines.append(f"step {number}: {step.pair.text()} dW={step.delta_w} {step.prefix}")
    lines.append(f"steps: {len(result.steps)}")
    lines.append(f"final: {result.final_prefix}")
    lines.append("marking:")
    lines.append(result.final.marking.text().rstrip("\n"))
    return "\n".join(lines) + "\n"
