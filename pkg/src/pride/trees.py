"""Ordered labeled dependency trees and their edit distance.

Structural similarity compares the dependency trees of an original
instruction and a paraphrase. Nodes carry a composite (POS, deprel) label,
children are ordered by source-token index, and distance is the classic
Zhang-Shasha ordered tree edit distance with unit costs: insertion 1,
deletion 1, relabeling 1 iff the composites differ.
"""

from __future__ import annotations

from dataclasses import dataclass

Label = tuple[str, str]


@dataclass(frozen=True)
class DependencyTree:
    """Immutable rooted ordered tree.

    ``labels[i]`` is the label of node ``i``; ``children[i]`` lists node
    ``i``'s children left to right. Node ids are arbitrary but must be
    dense 0..n-1 with exactly one root.
    """

    labels: tuple[Label, ...]
    children: tuple[tuple[int, ...], ...]
    root: int

    def __post_init__(self):
        n = len(self.labels)
        if n == 0:
            raise ValueError("a dependency tree needs at least one node")
        if len(self.children) != n:
            raise ValueError("labels and children lists disagree in length")
        if not 0 <= self.root < n:
            raise ValueError(f"root {self.root} out of range for {n} nodes")
        seen = [False] * n
        stack = [self.root]
        while stack:
            node = stack.pop()
            if seen[node]:
                raise ValueError("children links contain a cycle")
            seen[node] = True
            stack.extend(self.children[node])
        if not all(seen):
            raise ValueError("children links do not span all nodes")

    @property
    def size(self) -> int:
        return len(self.labels)

    @classmethod
    def from_parent_links(cls, labels: list[Label],
                          parents: list[int | None],
                          order: list[int] | None = None) -> "DependencyTree":
        """Build a tree from per-node parent ids.

        ``parents[i]`` is node i's parent or None for the root. ``order``
        gives each node's sort key for sibling ordering (defaults to the
        node id itself, which matches token order when ids follow tokens).
        """
        n = len(labels)
        if len(parents) != n:
            raise ValueError("labels and parents lists disagree in length")
        roots = [i for i, p in enumerate(parents) if p is None]
        if len(roots) != 1:
            raise ValueError(f"expected exactly one root, found {len(roots)}")
        key = order if order is not None else list(range(n))
        kids: list[list[int]] = [[] for _ in range(n)]
        for i, p in enumerate(parents):
            if p is None:
                continue
            if not 0 <= p < n:
                raise ValueError(f"parent id {p} out of range")
            kids[p].append(i)
        for c in kids:
            c.sort(key=lambda i: key[i])
        return cls(labels=tuple(labels),
                   children=tuple(tuple(c) for c in kids),
                   root=roots[0])


def _zs_arrays(tree: DependencyTree) -> tuple[list[Label], list[int], list[int]]:
    """Postorder labels, leftmost-leaf-descendant indices, and keyroots."""
    post: list[int] = []

    def walk(node: int):
        for child in tree.children[node]:
            walk(child)
        post.append(node)

    walk(tree.root)
    pos = {node: i for i, node in enumerate(post)}

    lmd = [0] * len(post)
    for i, node in enumerate(post):
        cur = node
        while tree.children[cur]:
            cur = tree.children[cur][0]
        lmd[i] = pos[cur]

    # keyroots: nodes that are not the leftmost child of their parent,
    # i.e. the largest postorder index for each distinct lmd value
    keyroots = sorted({lmd[i]: i for i in range(len(post))}.values())
    labels = [tree.labels[node] for node in post]
    return labels, lmd, keyroots


def tree_edit_distance(a: DependencyTree, b: DependencyTree) -> int:
    """Minimum unit-cost edit script turning ``a`` into ``b``.

    Zhang-Shasha dynamic program over postorder-numbered subforests.
    Symmetric because all three operations cost 1 and relabeling is an
    equality test on the composite labels.
    """
    la, lmda, kra = _zs_arrays(a)
    lb, lmdb, krb = _zs_arrays(b)
    m, n = len(la), len(lb)
    td = [[0] * n for _ in range(m)]

    for i in kra:
        for j in krb:
            # forest distance over the subforests rooted at keyroots i, j
            li, lj = lmda[i], lmdb[j]
            w, h = i - li + 2, j - lj + 2
            fd = [[0] * h for _ in range(w)]
            for di in range(1, w):
                fd[di][0] = fd[di - 1][0] + 1
            for dj in range(1, h):
                fd[0][dj] = fd[0][dj - 1] + 1
            for di in range(1, w):
                ai = li + di - 1
                for dj in range(1, h):
                    bj = lj + dj - 1
                    if lmda[ai] == li and lmdb[bj] == lj:
                        cost = 0 if la[ai] == lb[bj] else 1
                        fd[di][dj] = min(fd[di - 1][dj] + 1,
                                         fd[di][dj - 1] + 1,
                                         fd[di - 1][dj - 1] + cost)
                        td[ai][bj] = fd[di][dj]
                    else:
                        fd[di][dj] = min(fd[di - 1][dj] + 1,
                                         fd[di][dj - 1] + 1,
                                         fd[lmda[ai] - li][lmdb[bj] - lj]
                                         + td[ai][bj])

    return td[m - 1][n - 1]


def structural_similarity(a: DependencyTree, b: DependencyTree) -> float:
    """S_T = 1 - TED(a, b) / (|a| + |b|).

    Always in [0, 1]: deleting all of ``a`` and inserting all of ``b`` is a
    valid script, so TED never exceeds |a| + |b|.
    """
    return 1.0 - tree_edit_distance(a, b) / (a.size + b.size)
