"""Binary indexed tree with range add and point query."""


class RangeAddFenwick:
    """Counts over positions 0..n-1 supporting interval increments.

    Stores the difference array in a Fenwick tree, so ``add_range`` and ``point``
    are both O(log n).
    """

    def __init__(self, n: int) -> None:
        self.n = n
        self._tree = [0] * (n + 1)

    def _add(self, i: int, delta: int) -> None:
        i += 1
        tree = self._tree
        while i <= self.n:
            tree[i] += delta
            i += i & -i

    def add_range(self, lo: int, hi: int, delta: int = 1) -> None:
        """Add delta to every position in [lo, hi]."""
        self._add(lo, delta)
        if hi + 1 < self.n:
            self._add(hi + 1, -delta)

    def point(self, i: int) -> int:
        """Current value at position i."""
        i += 1
        total = 0
        tree = self._tree
        while i > 0:
            total += tree[i]
            i -= i & -i
        return total
