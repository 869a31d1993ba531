import numpy as np

DEFAULT_BOX = {
    "r": (0.5, 3.0),
    "theta": (0.1, 1.4),
    "z": (-1.0, 1.0),
    "u": (-1.0, 1.0),
}
COORDINATES = ("r", "theta", "z", "u")


def make_samples(box, count, seed):
    rng = np.random.default_rng(seed)
    columns = []
    for name in COORDINATES:
        low, high = box[name]
        columns.append(rng.uniform(low, high, count))
    return np.stack(columns, axis=1)


class SampleBoxLoader:
    """Seeded sample points of the box r x theta x z x u; row i is the
    point (r, theta, z, u)."""

    def __init__(self, count, seed=0, box=None):
        self.box = dict(DEFAULT_BOX)
        if box:
            self.box.update(box)
        for name in COORDINATES:
            low, high = self.box[name]
            if not low <= high:
                raise ValueError("empty range for %s: %s" % (name, self.box[name]))
        if self.box["r"][0] <= 0:
            raise ValueError("sample box must stay in r > 0")
        self.seed = seed
        self.points = make_samples(self.box, count, seed)

    def __getitem__(self, index):
        return self.points[index]

    def __len__(self):
        return len(self.points)

    def asArray(self):
        return self.points.copy()
