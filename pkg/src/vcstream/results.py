"""Result records shared by kernels and solvers."""

from __future__ import annotations

from dataclasses import dataclass

from .graph import Graph
from .streams import StreamEvent


@dataclass(frozen=True)
class SolveOutcome:
    """Verdict plus the instrumentation record of the run that produced it."""

    feasible: bool
    solution: tuple[int, ...]
    passes: int
    peak_words: int

    @property
    def verdict(self) -> str:
        return "YES" if self.feasible else "NO"


@dataclass(frozen=True)
class KernelOutput:
    """Kept vertex set and the emitted kernel edge stream."""

    kept_vertices: tuple[int, ...]
    edges: tuple[tuple[int, int], ...]
    events: tuple[StreamEvent, ...]
    passes: int
    peak_words: int

    def kernel_graph(self) -> tuple[Graph, tuple[int, ...]]:
        """Kernel as a dense graph, with the original ids of its vertices."""
        old = tuple(sorted(self.kept_vertices))
        index = {v: i for i, v in enumerate(old)}
        return Graph(len(old), [(index[u], index[v]) for u, v in self.edges]), old
