from dataclasses import dataclass, field
from typing import List


@dataclass(frozen=True)
class Point:
    x: float
    y: float

    def __add__(self, other):
        return Point(self.x + other.x, self.y + other.y)

    def scale(self, k: float) -> "Point":
        return Point(self.x * k, self.y * k)


@dataclass
class Polyline:
    points: List[Point] = field(default_factory=list)
    closed: bool = False

    def length(self) -> float:
        pts = self.points + (self.points[:1] if self.closed else [])
        total = 0.0
        for a, b in zip(pts, pts[1:]):
            total += ((a.x - b.x) ** 2 + (a.y - b.y) ** 2) ** 0.5
        return total


square = Polyline([Point(0, 0), Point(1, 0), Point(1, 1), Point(0, 1)], closed=True)
print(square.length(), Point(1, 2) + Point(3, 4))
