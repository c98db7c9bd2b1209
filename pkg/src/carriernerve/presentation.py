"""Edge-path group presentations and a bounded Tietze simplifier.

Words are lists of nonzero ints; ``-x`` is the inverse of generator ``x``.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass

from .complex import SimplicialComplex, vertex_key

TIETZE_BUDGET = 10_000


@dataclass
class Presentation:
    generators: list[int]
    relators: list[list[int]]

    def is_trivial(self) -> bool:
        return not self.generators


def free_reduce(word: list[int]) -> list[int]:
    out: list[int] = []
    for x in word:
        if out and out[-1] == -x:
            out.pop()
        else:
            out.append(x)
    return out


def cyclic_reduce(word: list[int]) -> list[int]:
    w = free_reduce(word)
    i, j = 0, len(w) - 1
    while i < j and w[i] == -w[j]:
        i += 1
        j -= 1
    return w[i : j + 1]


def invert(word: list[int]) -> list[int]:
    return [-x for x in reversed(word)]


def edge_path_presentation(K: SimplicialComplex, base=None) -> Presentation:
    """Presentation of the edge-path group of the component of ``base``.

    A breadth-first spanning tree (neighbors in canonical order) kills tree
    edges; each remaining edge ``u < v`` is a generator and each triangle
    ``a < b < c`` contributes ``e(a,b) e(b,c) e(a,c)^-1``.
    """
    if K.is_empty:
        return Presentation([], [])
    if base is None:
        base = K.vertices[0]
    edges = K.faces_by_dim[1] if K.dim >= 1 else ()
    nbrs: dict = {v: [] for v in K.vertices}
    for a, b in edges:
        nbrs[a].append(b)
        nbrs[b].append(a)
    seen = {base}
    tree = set()
    queue = deque([base])
    while queue:
        v = queue.popleft()
        for w in sorted(nbrs[v], key=vertex_key):
            if w not in seen:
                seen.add(w)
                tree.add(frozenset((v, w)))
                queue.append(w)
    gen_of: dict = {}
    for e in edges:
        if set(e) <= seen and frozenset(e) not in tree:
            gen_of[e] = len(gen_of) + 1

    def letter(a, b) -> list[int]:
        g = gen_of.get((a, b))
        return [g] if g else []

    relators = []
    if K.dim >= 2:
        for a, b, c in K.faces_by_dim[2]:
            if a in seen:
                relators.append(letter(a, b) + letter(b, c) + invert(letter(a, c)))
    return Presentation(sorted(gen_of.values()), relators)


def _substitute(word: list[int], x: int, replacement: list[int]) -> list[int]:
    inv = invert(replacement)
    out: list[int] = []
    for y in word:
        if y == x:
            out.extend(replacement)
        elif y == -x:
            out.extend(inv)
        else:
            out.append(y)
    return free_reduce(out)


def tietze_simplify(pres: Presentation, budget: int = TIETZE_BUDGET) -> tuple[Presentation, int, bool]:
    """Deterministically shrink a presentation.

    Rule order per round: cancel (free and cyclic reduction, dropping empty
    and duplicate relators), then eliminate a generator that occurs exactly
    once in the shortest relator offering one, substituting it everywhere
    and reducing lengths again.  Returns the result, the number of rewrite
    steps used, and whether the budget ran out.
    """
    gens = list(pres.generators)
    rels = [list(r) for r in pres.relators]
    steps = 0
    while True:
        reduced = []
        seen = set()
        for r in rels:
            r = cyclic_reduce(r)
            key = tuple(r)
            if r and key not in seen:
                seen.add(key)
                reduced.append(r)
        rels = reduced
        steps += 1
        if not gens or steps >= budget:
            break
        choice = None
        for idx in sorted(range(len(rels)), key=lambda i: (len(rels[i]), rels[i])):
            r = rels[idx]
            counts: dict[int, int] = {}
            for y in r:
                counts[abs(y)] = counts.get(abs(y), 0) + 1
            once = sorted(g for g, c in counts.items() if c == 1)
            if once:
                choice = (idx, once[0])
                break
        if choice is None:
            break
        idx, x = choice
        r = rels.pop(idx)
        pos = next(i for i, y in enumerate(r) if abs(y) == x)
        u, w = r[:pos], r[pos + 1 :]
        # u x^e w = 1
        replacement = invert(u) + invert(w) if r[pos] > 0 else w + u
        replacement = free_reduce(replacement)
        rels = [_substitute(q, x, replacement) for q in rels]
        gens.remove(x)
        steps += 1
    return Presentation(gens, rels), steps, steps >= budget and bool(gens)
