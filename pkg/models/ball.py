"""Word-metric balls and functions on them.

`Ball` keeps exact BFS distances for its members and the outer boundary (the vertices
at distance radius+1, each adjacent to a member). `BallFunction` is a table of values on
members and boundary, either exact rationals or floats.
"""

from dataclasses import dataclass, field

from exceptions import GroupError


@dataclass(frozen=True)
class Ball:
    center: object
    radius: int
    distances: dict = field(repr=False)  # member -> distance to center, BFS order
    boundary: tuple = field(repr=False)

    @property
    def members(self):
        return list(self.distances)

    def __len__(self):
        return len(self.distances)

    def __contains__(self, x):
        return x in self.distances

    def closure(self):
        """Members followed by boundary, both in BFS order."""
        return self.members + list(self.boundary)

    def within(self, r):
        return [x for x, d in self.distances.items() if d <= r]

    def to_dict(self):
        return {
            'center': self.center.to_dict(),
            'radius': self.radius,
            'volume': len(self),
            'boundary_size': len(self.boundary),
        }


@dataclass
class BallFunction:
    ball: Ball
    values: dict
    exact: bool = False

    def __post_init__(self):
        missing = [x for x in self.ball.closure() if x not in self.values]
        if missing:
            raise GroupError(f"ball function undefined at {len(missing)} vertices, e.g. {missing[0]!r}")

    @classmethod
    def from_callable(cls, ball, fn, exact=True):
        return cls(ball, {x: fn(x) for x in ball.closure()}, exact)

    def __getitem__(self, x):
        return self.values[x]

    def __contains__(self, x):
        return x in self.values

    def restrict(self, points):
        return [self.values[x] for x in points]

    def boundary_range(self):
        vals = self.restrict(self.ball.boundary)
        return min(vals), max(vals)

    def to_dict(self):
        return {x.encode(): str(v) if self.exact else float(v) for x, v in self.values.items()}
