"""Seeded samplers for the random graph and random group models.

Every sampler is a pure function of (parameters, Seed); distinct stream_ids
give independent, order-free streams for parallel sweeps.  Reproducibility is
promised within this artifact only.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import words as W
from .delta import Presentation
from .errors import InputError, ResourceCapError
from .multigraph import EdgeKey, MultiGraph, edge_key
from .words import Word


@dataclass(frozen=True)
class Seed:
    value: int
    stream_id: int = 0

    def rng(self) -> np.random.Generator:
        ss = np.random.SeedSequence(self.value, spawn_key=(self.stream_id,))
        return np.random.Generator(np.random.PCG64(ss))

    def __str__(self) -> str:
        return f"{self.value}:{self.stream_id}"


@dataclass(frozen=True)
class LaxParams:
    k: int
    d: float
    f: int

    def __post_init__(self):
        if self.f < 0 or self.f >= self.k:
            raise InputError("need 0 <= f(k) < k")
        if self.k - self.f < 3:
            raise InputError("need k - f(k) >= 3")


def _pair_labels(prefix: str, m: int) -> list[str]:
    width = len(str(m))
    return [f"{prefix}{i:0{width}d}" for i in range(1, m + 1)]


def sample_gnp(m: int, p: float, seed: Seed) -> MultiGraph:
    """Erdos-Renyi G(m, p): each of the C(m,2) pairs independently, no loops."""
    if m < 1 or not 0.0 <= p <= 1.0:
        raise InputError("need m >= 1 and p in [0, 1]")
    labels = _pair_labels("u", m)
    rng = seed.rng()
    edges: dict[EdgeKey, int] = {}
    if m > 1:
        draws = rng.random(m * (m - 1) // 2)
        idx = 0
        for i in range(m):
            for j in range(i + 1, m):
                if draws[idx] < p:
                    edges[edge_key(labels[i], labels[j])] = 1
                idx += 1
    return MultiGraph(labels, edges)


def sample_bipartite_gnp(m1: int, m2: int, p: float, seed: Seed) -> MultiGraph:
    """Erdos-Renyi bipartite G(m1, m2, p), partitioned output."""
    if m1 < 1 or m2 < 1 or not 0.0 <= p <= 1.0:
        raise InputError("need m1, m2 >= 1 and p in [0, 1]")
    left = _pair_labels("u", m1)
    right = _pair_labels("v", m2)
    rng = seed.rng()
    mask = rng.random((m1, m2)) < p
    edges = {
        edge_key(left[i], right[j]): 1
        for i in range(m1)
        for j in range(m2)
        if mask[i, j]
    }
    return MultiGraph(left + right, edges, partition=(left, right))


def _word_universe(n: int, l: int, cap: int) -> tuple[list[Word], list[str], list[int]]:
    ws = W.enumerate_reduced(n, l, cap=cap)
    labels = [W.word_to_label(w) for w in ws]
    classes = [W.class_index(w, n) for w in ws]
    return ws, labels, classes


def sample_red(
    n: int, l: int, p: float, seed: Seed, cap: int = W.ENUMERATION_CAP
) -> MultiGraph:
    """Reduced random graph on W_l.

    Each unordered cross-class pair gets two independent Bernoulli(p) draws
    (one per direction), each success adding 1 to the multiplicity; same-class
    pairs are forbidden.  Max multiplicity 2.
    """
    g, _ = _red_with_rng(n, l, p, seed.rng(), cap)
    return g


def _red_with_rng(
    n: int, l: int, p: float, rng: np.random.Generator, cap: int
) -> tuple[MultiGraph, tuple[list[str], list[int]]]:
    if not 0.0 <= p <= 1.0:
        raise InputError("need p in [0, 1]")
    _, labels, classes = _word_universe(n, l, cap)
    m = len(labels)
    edges: dict[EdgeKey, int] = {}
    for i in range(m):
        for j in range(i + 1, m):
            if classes[i] == classes[j]:
                continue
            mult = int(rng.random() < p) + int(rng.random() < p)
            if mult:
                edges[edge_key(labels[i], labels[j])] = mult
    return MultiGraph(labels, edges), (labels, classes)


def sample_bred(
    n: int,
    l: int,
    p: float,
    seed: Seed,
    cap: int = W.ENUMERATION_CAP,
    allow_short: bool = False,
) -> MultiGraph:
    """Reduced random bipartite graph, V1 = W_l, V2 = W_{l+1}.

    The pair (v, w) is forbidden when w lies in the class-index block of v's
    class (the concatenation constraint inherited from cyclic reduction);
    all other cross pairs appear independently with probability p.
    """
    g, _ = _bred_with_rng(n, l, p, seed.rng(), cap, allow_short)
    return g


def _bred_with_rng(
    n: int,
    l: int,
    p: float,
    rng: np.random.Generator,
    cap: int,
    allow_short: bool,
) -> tuple[MultiGraph, tuple[list[str], list[int], list[str], list[int]]]:
    if not 0.0 <= p <= 1.0:
        raise InputError("need p in [0, 1]")
    if l < 3 and not allow_short:
        raise InputError("the model is declared for l >= 3 (pass allow_short to override)")
    _, labels1, classes1 = _word_universe(n, l, cap)
    _, labels2, classes2 = _word_universe(n, l + 1, cap)
    edges: dict[EdgeKey, int] = {}
    for i, v in enumerate(labels1):
        for j, w in enumerate(labels2):
            if classes1[i] == classes2[j]:
                continue
            if rng.random() < p:
                edges[edge_key(v, w)] = 1
    graph = MultiGraph(labels1 + labels2, edges, partition=(labels1, labels2))
    return graph, (labels1, classes1, labels2, classes2)


def coupled_red_extension(
    n: int, l: int, p: float, seed: Seed, cap: int = W.ENUMERATION_CAP
) -> tuple[MultiGraph, MultiGraph]:
    """(G, G') with G ~ the reduced model and G' ~ G(|W_l|, 2p - p^2), G <= G'.

    G' is built per the coupling: within-class graphs with edge probability
    2p - p^2 are added, then duplicate edges are collapsed.
    """
    rng = seed.rng()
    g, (labels, classes) = _red_with_rng(n, l, p, rng, cap)
    q = 2 * p - p * p
    edges = {key: 1 for key in g.edges}
    m = len(labels)
    for i in range(m):
        for j in range(i + 1, m):
            if classes[i] != classes[j]:
                continue
            if rng.random() < q:
                edges[edge_key(labels[i], labels[j])] = 1
    return g, MultiGraph(labels, edges)


def coupled_bred_extension(
    n: int,
    l: int,
    p: float,
    seed: Seed,
    cap: int = W.ENUMERATION_CAP,
    allow_short: bool = False,
) -> tuple[MultiGraph, MultiGraph]:
    """(G, G') with G ~ the bipartite reduced model, G' the full bipartite
    Erdos-Renyi extension obtained by filling the forbidden blocks."""
    rng = seed.rng()
    g, (labels1, classes1, labels2, classes2) = _bred_with_rng(
        n, l, p, rng, cap, allow_short
    )
    edges = g.edges
    for i, v in enumerate(labels1):
        for j, w in enumerate(labels2):
            if classes1[i] != classes2[j]:
                continue
            if rng.random() < p:
                edges[edge_key(v, w)] = 1
    gp = MultiGraph(labels1 + labels2, edges, partition=(labels1, labels2))
    return g, gp


def strict_model_size(n: int, k: int, d: float) -> int:
    """floor((2n-1)^(kd)), with a tiny guard against float round-down."""
    return int(math.floor((2 * n - 1) ** (k * d) + 1e-9))


def _uniform_subset(
    universe: list[Word], size: int, rng: np.random.Generator
) -> tuple[Word, ...]:
    if size > len(universe):
        raise InputError(
            f"requested {size} relators but the universe has {len(universe)}"
        )
    idx = sorted(rng.choice(len(universe), size=size, replace=False))
    return tuple(universe[i] for i in idx)


def sample_gamma_strict(
    n: int, k: int, d: float, seed: Seed, cap: int = W.ENUMERATION_CAP
) -> Presentation:
    """Strict model: a uniform size-floor((2n-1)^(kd)) subset of C(n, k)."""
    if n < 2 or k < 3 or not 0.0 < d < 1.0:
        raise InputError("need n >= 2, k >= 3, d in (0, 1)")
    universe = W.enumerate_cyclically_reduced(n, k, cap=cap)
    relators = _uniform_subset(universe, strict_model_size(n, k, d), seed.rng())
    return Presentation(n, relators, k)


def sample_gamma_p(
    n: int, k: int, p: float, seed: Seed, cap: int = W.ENUMERATION_CAP
) -> Presentation:
    """Bernoulli model: each word of C(n, k) kept independently with prob p."""
    if n < 2 or k < 3 or not 0.0 <= p <= 1.0:
        raise InputError("need n >= 2, k >= 3, p in [0, 1]")
    universe = W.enumerate_cyclically_reduced(n, k, cap=cap)
    mask = seed.rng().random(len(universe)) < p
    return Presentation(n, tuple(w for w, keep in zip(universe, mask) if keep), k)


def sample_gamma_lax(
    n: int, params: LaxParams, seed: Seed, cap: int = W.ENUMERATION_CAP
) -> Presentation:
    """Lax model: uniform subset drawn from all lengths in [k-f, k+f]."""
    if n < 2:
        raise InputError("need n >= 2")
    universe: list[Word] = []
    total = sum(
        W.word_count(n, l) for l in range(params.k - params.f, params.k + params.f + 1)
    )
    if total > cap:
        raise ResourceCapError(f"lax universe bound {total} exceeds cap {cap}")
    for l in range(params.k - params.f, params.k + params.f + 1):
        universe.extend(W.enumerate_cyclically_reduced(n, l, cap=cap))
    size = strict_model_size(n, params.k, params.d)
    relators = _uniform_subset(universe, size, seed.rng())
    return Presentation(n, relators, None)
