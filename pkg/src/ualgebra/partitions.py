"""Partitions of {0..n-1} in a canonical least-representative form."""

from __future__ import annotations

from dataclasses import dataclass

from .errors import ParseError, SizeMismatch


def _normalize(parent: list[int]) -> tuple[int, ...]:
    # path-compress, then relabel every class by its least element
    def find(x: int) -> int:
        root = x
        while parent[root] != root:
            root = parent[root]
        while parent[x] != root:
            parent[x], x = root, parent[x]
        return root

    least: dict[int, int] = {}
    for i in range(len(parent)):
        r = find(i)
        if r not in least or i < least[r]:
            least[r] = i
    return tuple(least[find(i)] for i in range(len(parent)))


@dataclass(frozen=True)
class Partition:
    """Equivalence relation; `rep[i]` is the least element of i's block."""

    rep: tuple[int, ...]

    @property
    def n(self) -> int:
        return len(self.rep)

    @classmethod
    def identity(cls, n: int) -> "Partition":
        return cls(tuple(range(n)))

    @classmethod
    def total(cls, n: int) -> "Partition":
        return cls((0,) * n) if n else cls(())

    @classmethod
    def from_pairs(cls, n: int, pairs) -> "Partition":
        parent = list(range(n))

        def find(x: int) -> int:
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for a, b in pairs:
            ra, rb = find(a), find(b)
            if ra != rb:
                parent[max(ra, rb)] = min(ra, rb)
        return cls(_normalize(parent))

    @classmethod
    def from_blocks(cls, n: int, blocks) -> "Partition":
        rep = [-1] * n
        for block in blocks:
            least = min(block)
            for x in block:
                if rep[x] != -1:
                    raise SizeMismatch(f"element {x} occurs in two blocks")
                rep[x] = least
        if any(r == -1 for r in rep):
            raise SizeMismatch("blocks do not cover the carrier")
        return cls(tuple(rep))

    def same(self, a: int, b: int) -> bool:
        return self.rep[a] == self.rep[b]

    def block_of(self, a: int) -> tuple[int, ...]:
        r = self.rep[a]
        return tuple(i for i in range(self.n) if self.rep[i] == r)

    def blocks(self) -> list[tuple[int, ...]]:
        by_rep: dict[int, list[int]] = {}
        for i, r in enumerate(self.rep):
            by_rep.setdefault(r, []).append(i)
        return [tuple(by_rep[r]) for r in sorted(by_rep)]

    def block_count(self) -> int:
        return len(set(self.rep))

    def refines(self, other: "Partition") -> bool:
        """True when every block of self lies inside a block of other."""
        if self.n != other.n:
            raise SizeMismatch("partitions over different carriers")
        return all(other.rep[i] == other.rep[self.rep[i]] for i in range(self.n))

    def join(self, other: "Partition") -> "Partition":
        if self.n != other.n:
            raise SizeMismatch("partitions over different carriers")
        pairs = [(i, self.rep[i]) for i in range(self.n)]
        pairs += [(i, other.rep[i]) for i in range(self.n)]
        return Partition.from_pairs(self.n, pairs)

    def meet(self, other: "Partition") -> "Partition":
        if self.n != other.n:
            raise SizeMismatch("partitions over different carriers")
        keys: dict[tuple[int, int], int] = {}
        rep = []
        for i in range(self.n):
            key = (self.rep[i], other.rep[i])
            rep.append(keys.setdefault(key, i))
        return Partition(tuple(rep))

    def __str__(self) -> str:
        return "{" + ",".join("{" + ",".join(map(str, b)) + "}" for b in self.blocks()) + "}"


def parse_partition(text: str, n: int) -> Partition:
    """Parse the `{{0,2},{1,3}}` form back into a Partition over {0..n-1}."""
    s = "".join(text.split())
    if not (s.startswith("{") and s.endswith("}")):
        raise ParseError("partition must be wrapped in braces", line=1, column=1)
    body = s[1:-1]
    blocks: list[list[int]] = []
    i = 0
    while i < len(body):
        if body[i] == ",":
            i += 1
            continue
        if body[i] != "{":
            raise ParseError("expected '{' opening a block", line=1, column=i + 2)
        j = body.find("}", i)
        if j < 0:
            raise ParseError("unterminated block", line=1, column=i + 2)
        inner = body[i + 1 : j]
        try:
            block = [int(p) for p in inner.split(",") if p != ""]
        except ValueError:
            raise ParseError("block entries must be integers", line=1, column=i + 2) from None
        if not block:
            raise ParseError("empty block", line=1, column=i + 2)
        if any(x < 0 or x >= n for x in block):
            raise ParseError(f"block entry out of range 0..{n - 1}", line=1, column=i + 2)
        blocks.append(block)
        i = j + 1
    return Partition.from_blocks(n, blocks)


def all_set_partitions(n: int):
    """Yield every partition of {0..n-1} (restricted-growth enumeration)."""
    if n == 0:
        yield Partition(())
        return
    # restricted growth strings: code[0] = 0 and code[i] <= max(code[:i]) + 1
    code = [0] * n

    def rec(i: int, top: int):
        if i == n:
            blocks: dict[int, list[int]] = {}
            for idx, c in enumerate(code):
                blocks.setdefault(c, []).append(idx)
            yield Partition.from_blocks(n, blocks.values())
            return
        for c in range(top + 2):
            code[i] = c
            yield from rec(i + 1, max(top, c))

    yield from rec(1, 0)
