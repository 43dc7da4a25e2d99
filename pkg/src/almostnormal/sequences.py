"""Width sequences, plateaus and the size order.

A sequence of surfaces is represented by the widths of its terms only, so
"all terms isotopic" on a plateau is approximated by equal widths.
"""
from __future__ import annotations

from dataclasses import dataclass

from .surface import Width


@dataclass(frozen=True)
class WidthSequence:
    terms: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "terms", tuple(w if isinstance(w, Width) else Width(w) for w in self.terms))

    def __len__(self):
        return len(self.terms)

    @classmethod
    def parse(cls, text: str) -> WidthSequence:
        """One width per line (``chi_neg,weight`` pairs joined by ``;`` or ``empty``)."""
        return cls(tuple(Width.parse(line) for line in text.splitlines() if line.strip() and not line.lstrip().startswith("#")))


@dataclass(frozen=True, order=True)
class SequenceSize:
    """Non-increasing tuple of plateau widths, repetitions included."""

    widths: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "widths", tuple(sorted(self.widths, reverse=True)))

    def __str__(self):
        return "[" + " ".join(f"({w})" for w in self.widths) + "]"


def _runs(terms) -> list:
    runs, i = [], 0
    while i < len(terms):
        j = i
        while j + 1 < len(terms) and terms[j + 1] == terms[i]:
            j += 1
        runs.append((i, j))
        i = j + 1
    return runs


def plateaus(ws) -> list:
    """Maximal runs of equal widths strictly above both neighbouring terms.

    Returns inclusive ``(start, end)`` index pairs.  Runs touching either end
    of the sequence have a missing flank and are never plateaus.
    """
    terms = ws.terms if isinstance(ws, WidthSequence) else WidthSequence(tuple(ws)).terms
    out = []
    for i, j in _runs(terms):
        if i > 0 and j < len(terms) - 1 and terms[i] > terms[i - 1] and terms[j] > terms[j + 1]:
            out.append((i, j))
    return out


def thick_levels(ws) -> list:
    return [k for i, j in plateaus(ws) for k in range(i, j + 1)]


def size(ws) -> SequenceSize:
    terms = ws.terms if isinstance(ws, WidthSequence) else WidthSequence(tuple(ws)).terms
    return SequenceSize(tuple(terms[k] for k in thick_levels(terms)))


def compare_size(a: SequenceSize, b: SequenceSize) -> int:
    return (a > b) - (a < b)
