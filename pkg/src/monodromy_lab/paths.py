"""Polyline paths in the complex plane."""

from __future__ import annotations

import cmath
import json
import math
from dataclasses import dataclass

__all__ = ["Path"]

#: maximum turning angle per chord when discretizing loops (degrees)
MAX_CHORD_DEG = 20.0


@dataclass(frozen=True)
class Path:
    """An ordered polyline. Constructors: segment() and loop()."""

    vertices: tuple

    def __post_init__(self):
        v = tuple(complex(p) for p in self.vertices)
        if len(v) < 2:
            raise ValueError("a path needs at least two vertices")
        for p, q in zip(v[:-1], v[1:]):
            if p == q:
                raise ValueError("consecutive path vertices must be distinct")
        object.__setattr__(self, "vertices", v)

    @staticmethod
    def segment(a: complex, b: complex) -> "Path":
        return Path((complex(a), complex(b)))

    @staticmethod
    def loop(alpha: complex, base: complex, turns: int,
             max_chord_deg: float = MAX_CHORD_DEG) -> "Path":
        """base -> |turns| full circles of radius |base-alpha| around alpha -> base.

        Positive turns are counterclockwise; the circle is discretized into
        chords subtending at most max_chord_deg degrees.
        """
        alpha = complex(alpha)
        base = complex(base)
        if turns == 0:
            raise ValueError("turns must be a nonzero integer")
        r = abs(base - alpha)
        if r == 0:
            raise ValueError("base must differ from the loop center")
        phase0 = cmath.phase(base - alpha)
        n_chords = max(int(math.ceil(360.0 / max_chord_deg)), 3)
        sign = 1 if turns > 0 else -1
        pts = [base]
        for k in range(abs(turns)):
            for j in range(1, n_chords + 1):
                ang = phase0 + sign * 2.0 * math.pi * (k + j / n_chords)
                pts.append(alpha + r * cmath.exp(1j * ang))
        pts[-1] = base  # close exactly
        return Path(tuple(pts))

    @property
    def length(self) -> float:
        return sum(abs(q - p) for p, q in zip(self.vertices[:-1], self.vertices[1:]))

    def winding_number(self, point: complex) -> int:
        """Winding of the (closed) polyline around point by discrete argument
        summation."""
        point = complex(point)
        total = 0.0
        for p, q in zip(self.vertices[:-1], self.vertices[1:]):
            total += cmath.phase((q - point) / (p - point))
        return int(round(total / (2.0 * math.pi)))

    def min_distance(self, point: complex) -> float:
        """Distance from point to the polyline."""
        point = complex(point)
        best = math.inf
        for p, q in zip(self.vertices[:-1], self.vertices[1:]):
            d = q - p
            t = ((point - p) * d.conjugate()).real / abs(d) ** 2
            t = min(max(t, 0.0), 1.0)
            best = min(best, abs(point - (p + t * d)))
        return best

    def reversed(self) -> "Path":
        return Path(tuple(reversed(self.vertices)))

    def to_json(self) -> str:
        return json.dumps([[p.real, p.imag] for p in self.vertices])

    @staticmethod
    def from_json(text: str) -> "Path":
        data = json.loads(text)
        return Path(tuple(complex(re, im) for re, im in data))
