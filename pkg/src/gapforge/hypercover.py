"""Probabilistic covering bookkeeping, nibble simulation, rainbow matchings, random sifting.

Edge models are explicit, so inclusion and codegree probabilities are exact and
the hypothesis report carries no sampling error.
"""
from __future__ import annotations

import json
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .primes import primes_upto

CHUNK_TRIALS = 1000


# ---------------------------------------------------------------------------
# Edge models


@dataclass(frozen=True)
class RandomEdge:
    """A random subset of range(n_vertices).

    Either an explicit distribution ``support`` of (subset, probability) pairs, with
    the leftover mass on the empty set, or independent per-vertex inclusion
    probabilities ``bernoulli``.
    """

    support: tuple[tuple[tuple[int, ...], float], ...] = ()
    bernoulli: tuple[tuple[int, float], ...] = ()

    def __post_init__(self):
        if self.support and self.bernoulli:
            raise ValueError("edge is either explicit or bernoulli, not both")
        tot = sum(p for _, p in self.support)
        if tot > 1 + 1e-12 or any(p < 0 for _, p in self.support):
            raise ValueError("support probabilities must be >= 0 and sum to <= 1")
        if any(not 0 <= q <= 1 for _, q in self.bernoulli):
            raise ValueError("inclusion probabilities must lie in [0, 1]")

    @property
    def max_size(self) -> int:
        if self.bernoulli:
            return sum(1 for _, q in self.bernoulli if q > 0)
        return max((len(s) for s, p in self.support if p > 0), default=0)

    def inclusion(self, n: int) -> np.ndarray:
        out = np.zeros(n)
        for v, q in self.bernoulli:
            out[v] += q
        for s, p in self.support:
            for v in s:
                out[v] += p
        return out

    def codegree(self, n: int) -> np.ndarray:
        """Matrix of P(v1, v2 in e), diagonal zeroed."""
        out = np.zeros((n, n))
        if self.bernoulli:
            q = np.zeros(n)
            for v, p in self.bernoulli:
                q[v] = p
            out = np.outer(q, q)
        for s, p in self.support:
            idx = np.array(s, dtype=int)
            if len(idx) > 1:
                out[np.ix_(idx, idx)] += p
        np.fill_diagonal(out, 0.0)
        return out


@dataclass(frozen=True)
class LayeredEdgeModel:
    n_vertices: int
    layers: tuple[tuple[RandomEdge, ...], ...]

    def __post_init__(self):
        for layer in self.layers:
            for e in layer:
                for s, _ in e.support:
                    if len(set(s)) != len(s) or any(not 0 <= v < self.n_vertices for v in s):
                        raise ValueError(f"bad subset {s}")
                for v, _ in e.bernoulli:
                    if not 0 <= v < self.n_vertices:
                        raise ValueError(f"vertex {v} out of range")

    @property
    def m(self) -> int:
        return len(self.layers)

    @classmethod
    def uniform(cls, n_vertices: int, layer_sizes, q) -> "LayeredEdgeModel":
        """Each edge of layer j includes every vertex independently with probability q[j]."""
        qs = [q] * len(layer_sizes) if np.isscalar(q) else list(q)
        layers = []
        for size, qj in zip(layer_sizes, qs):
            e = RandomEdge(bernoulli=tuple((v, float(qj)) for v in range(n_vertices)))
            layers.append((e,) * size)
        return cls(n_vertices, tuple(layers))

    def degrees(self) -> np.ndarray:
        """d_{I_j}(v), shape (m, n)."""
        d = np.zeros((self.m, self.n_vertices))
        for j, layer in enumerate(self.layers):
            for e in layer:
                d[j] += e.inclusion(self.n_vertices)
        return d

    def to_json(self) -> dict:
        return {
            "n_vertices": self.n_vertices,
            "layers": [[_edge_json(e) for e in layer] for layer in self.layers],
        }

    @classmethod
    def from_json(cls, obj: dict) -> "LayeredEdgeModel":
        n = int(obj["n_vertices"])
        layers = []
        for layer in obj["layers"]:
            edges = []
            for e in layer:
                if "bernoulli" in e:
                    b = e["bernoulli"]
                    if isinstance(b, (int, float)):
                        b = {str(v): b for v in range(n)}
                    edges.append(RandomEdge(bernoulli=tuple((int(v), float(q)) for v, q in b.items())))
                else:
                    edges.append(RandomEdge(support=tuple((tuple(s), float(p)) for s, p in e["support"])))
            layers.append(tuple(edges))
        return cls(n, tuple(layers))

    @classmethod
    def load(cls, path) -> "LayeredEdgeModel":
        with open(path) as fh:
            return cls.from_json(json.load(fh))


def _edge_json(e: RandomEdge) -> dict:
    if e.bernoulli:
        return {"bernoulli": {str(v): q for v, q in e.bernoulli}}
    return {"support": [[list(s), p] for s, p in e.support]}


# ---------------------------------------------------------------------------
# The P_j recursion


@dataclass(frozen=True)
class DegreeProfile:
    degrees: np.ndarray  # (m, n)
    P: np.ndarray  # (m + 1, n), P[0] = 1

    @property
    def min_P(self) -> float:
        return float(self.P.min())


def pj_recursion(degrees) -> DegreeProfile:
    """P_0 = 1, P_{j+1} = P_j exp(-d_{j+1} / P_j)."""
    d = np.atleast_2d(np.asarray(degrees, dtype=float))
    if (d < 0).any():
        raise ValueError("degrees must be non-negative")
    P = np.ones((d.shape[0] + 1, d.shape[1]))
    with np.errstate(divide="ignore", invalid="ignore"):
        for j in range(d.shape[0]):
            P[j + 1] = np.where(P[j] > 0, P[j] * np.exp(-d[j] / P[j]), 0.0)
    return DegreeProfile(d, P)


# ---------------------------------------------------------------------------
# Hypothesis report


@dataclass(frozen=True)
class Check:
    name: str
    passed: bool
    margin: float  # bound minus measured (log scale for the smallness bound)


@dataclass
class HypothesisReport:
    checks: list[Check]
    profile: DegreeProfile | None

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def as_dict(self) -> dict:
        return {c.name: {"passed": c.passed, "margin": c.margin} for c in self.checks}


def smallness_log_bound(kappa: float, D: float, A: float, m: int, C0: float = 1.0) -> float:
    """log of (kappa^A / (C0 exp(AD)))^(10^(m+2))."""
    return 10.0 ** (m + 2) * (A * math.log(kappa) - math.log(C0) - A * D)


def check_hypotheses(model: LayeredEdgeModel, delta: float, kappa: float, D: float, A: float,
                     m: int | None = None, r: int | None = None, C0: float = 1.0) -> HypothesisReport:
    m = model.m if m is None else m
    n = model.n_vertices
    checks = []
    log_delta = math.log(delta) if delta > 0 else -math.inf
    lb = smallness_log_bound(kappa, D, A, m, C0)
    checks.append(Check("smallness", log_delta <= lb, lb - log_delta))

    sizes = [e.max_size for layer in model.layers for e in layer]
    if r is not None:
        big = max(sizes, default=0)
        checks.append(Check("edge_size", big <= r, r - big))

    sparse_margin = math.inf
    codeg_margin = math.inf
    for layer in model.layers:
        if not layer:
            continue
        cap = delta / math.sqrt(len(layer))
        incl = max(float(e.inclusion(n).max()) for e in layer)
        sparse_margin = min(sparse_margin, cap - incl)
        cod = sum(e.codegree(n) for e in layer)
        codeg_margin = min(codeg_margin, delta - float(np.max(cod)) if n > 1 else delta)
    checks.append(Check("sparsity", sparse_margin >= 0, sparse_margin))
    checks.append(Check("codegree", codeg_margin >= 0, codeg_margin))

    prof = pj_recursion(model.degrees()) if model.m else None
    if prof is not None:
        deg_margin = float(np.min(D * prof.P[:-1] - prof.degrees))
        kap_margin = prof.min_P - kappa
    else:
        deg_margin = kap_margin = math.inf
    checks.append(Check("degree_bound", deg_margin >= 0, deg_margin))
    checks.append(Check("kappa_floor", kap_margin >= 0, kap_margin))
    return HypothesisReport(checks, prof)


# ---------------------------------------------------------------------------
# Nibble simulation


@dataclass
class NibbleResult:
    predicted: np.ndarray  # mean over vertices of P_j(v), j = 0..J
    empirical: np.ndarray  # mean surviving fraction after j layers
    stderr: np.ndarray
    vertex_survival: np.ndarray  # (n,) frequency each vertex survives all J layers
    trials: int
    reference: float  # 5^-m reporting line

    def as_rows(self):
        return [{"layer": j, "predicted": float(self.predicted[j]), "empirical": float(self.empirical[j]),
                 "stderr": float(self.stderr[j])} for j in range(len(self.predicted))]


def _edge_plan(model: LayeredEdgeModel, P: np.ndarray):
    """Per layer: kill probability of bernoulli edges per vertex and thinned explicit edges.

    Explicit subsets are padded with the sentinel vertex n; the last row of each
    table is the empty outcome.
    """
    n = model.n_vertices
    plan = []
    for j, layer in enumerate(model.layers):
        Pprev = P[j]
        log_keep = np.zeros(n)
        explicit = []
        for e in layer:
            if e.bernoulli:
                for v, q in e.bernoulli:
                    a = min(1.0, q / Pprev[v])
                    log_keep[v] += math.log1p(-a) if a < 1 else -math.inf
            elif e.support:
                subsets, probs = [], []
                for s, p in e.support:
                    w = p / float(np.prod(Pprev[list(s)])) if s else 0.0
                    if w > 0:
                        subsets.append(s)
                        probs.append(w)
                if sum(probs) > 1 + 1e-12:
                    raise ValueError(f"layer {j + 1}: thinned edge mass {sum(probs):.4f} exceeds 1")
                if not subsets:
                    continue
                width = max(len(s) for s in subsets)
                table = np.full((len(subsets) + 1, width), n, dtype=np.int64)
                for i, s in enumerate(subsets):
                    table[i, :len(s)] = s
                explicit.append((table, np.cumsum(probs)))
        plan.append((np.exp(log_keep), explicit))
    return plan


def _run_chunk(args):
    plan, n, trials, seed = args
    rng = np.random.default_rng(seed)
    alive = np.ones((trials, n + 1), dtype=bool)  # last column is the sentinel
    frac = [alive[:, :n].mean(axis=1)]
    rows = np.arange(trials)[:, None]
    for keep, explicit in plan:
        start = alive.copy()  # a layer acts on the survivors of earlier layers
        alive[:, :n] &= rng.random((trials, n)) < keep[None, :]
        for table, cum in explicit:
            pick = np.searchsorted(cum, rng.random(trials), side="right")
            verts = table[pick]
            hit = start[rows, verts].all(axis=1) & (pick < len(cum))
            alive[rows[hit], verts[hit]] = False
            alive[:, n] = True
        frac.append(alive[:, :n].mean(axis=1))
    return np.array(frac), alive[:, :n].sum(axis=0)


def nibble_simulate(model: LayeredEdgeModel, m: int | None, trials: int, seed: int,
                    jobs: int = 1) -> NibbleResult:
    """Random-greedy thinning through the first m layers.

    Given the survivors U of layers < j, an edge of layer j takes the value S
    with probability P(e = S) / P_{j-1}(S) when S lies in U (bernoulli edges: each
    survivor v with probability q_v / P_{j-1}(v)), otherwise it is empty. Chunks of
    trials get their own seed streams, so results do not depend on ``jobs``.
    """
    m = model.m if m is None else m
    sub = LayeredEdgeModel(model.n_vertices, model.layers[:m])
    prof = pj_recursion(sub.degrees()) if m else pj_recursion(np.zeros((0, sub.n_vertices)))
    plan = _edge_plan(sub, prof.P)
    n_chunks = max(1, math.ceil(trials / CHUNK_TRIALS))
    seeds = np.random.SeedSequence(seed).spawn(n_chunks)
    sizes = [min(CHUNK_TRIALS, trials - i * CHUNK_TRIALS) for i in range(n_chunks)]
    work = [(plan, sub.n_vertices, sz, sd) for sz, sd in zip(sizes, seeds) if sz > 0]
    if jobs > 1:
        with ThreadPoolExecutor(jobs) as ex:
            parts = list(ex.map(_run_chunk, work))
    else:
        parts = [_run_chunk(w) for w in work]
    frac = np.concatenate([p[0] for p in parts], axis=1)  # (m+1, trials)
    counts = sum(p[1] for p in parts)
    t = frac.shape[1]
    se = frac.std(axis=1, ddof=1) / math.sqrt(t) if t > 1 else np.zeros(len(frac))
    return NibbleResult(prof.P.mean(axis=1), frac.mean(axis=1), se, counts / t, t, 5.0 ** (-m))


# ---------------------------------------------------------------------------
# Colored graphs


@dataclass(frozen=True)
class ColoredGraph:
    n_vertices: int
    edges: tuple[tuple[int, int], ...]
    colors: tuple[int, ...]  # 1..N
    N: int

    def __post_init__(self):
        if len(self.edges) != len(self.colors):
            raise ValueError("one color per edge")
        for (u, v), c in zip(self.edges, self.colors):
            if u == v:
                raise ValueError("self-loop")
            if not (0 <= u < self.n_vertices and 0 <= v < self.n_vertices):
                raise ValueError("vertex out of range")
            if not 1 <= c <= self.N:
                raise ValueError(f"color {c} outside 1..{self.N}")

    def to_json(self) -> dict:
        return {"n_vertices": self.n_vertices, "N": self.N,
                "edges": [[u, v, c] for (u, v), c in zip(self.edges, self.colors)]}

    @classmethod
    def from_json(cls, obj: dict) -> "ColoredGraph":
        es = obj["edges"]
        return cls(int(obj["n_vertices"]), tuple((int(u), int(v)) for u, v, _ in es),
                   tuple(int(c) for *_, c in es), int(obj["N"]))


def color_block(c: int, N: int, K: int) -> int:
    """Block index i in 1..K with (i-1)N/K < c <= iN/K."""
    return -(-c * K // N)


@dataclass
class Matching:
    edges: list[int]  # indices into the graph's edge list
    block_sizes: list[int]

    @property
    def size(self) -> int:
        return len(self.edges)


def greedy_color_matching(g: ColoredGraph, K: int = 1) -> Matching:
    """Block by block, add edges (by color, then index) whose vertices and color are still free."""
    if K < 1:
        raise ValueError("K must be >= 1")
    used_v: set[int] = set()
    used_c: set[int] = set()
    chosen, sizes = [], []
    order = sorted(range(len(g.edges)), key=lambda i: (color_block(g.colors[i], g.N, K), g.colors[i], i))
    current, count = 1, 0
    for i in order:
        b = color_block(g.colors[i], g.N, K)
        while b > current:
            sizes.append(count)
            current, count = current + 1, 0
        u, v = g.edges[i]
        c = g.colors[i]
        if u in used_v or v in used_v or c in used_c:
            continue
        used_v.update((u, v))
        used_c.add(c)
        chosen.append(i)
        count += 1
    sizes.append(count)
    sizes += [0] * (K - len(sizes))
    return Matching(chosen, sizes)


def matching_is_valid(g: ColoredGraph, match: Matching) -> bool:
    verts, cols = set(), set()
    for i in match.edges:
        u, v = g.edges[i]
        if u in verts or v in verts or g.colors[i] in cols:
            return False
        verts.update((u, v))
        cols.add(g.colors[i])
    return True


def blocks_are_maximal(g: ColoredGraph, match: Matching, K: int) -> bool:
    """No edge could be added to its own block given everything chosen up to that block."""
    chosen = set(match.edges)
    for blk in range(1, K + 1):
        upto = [i for i in match.edges if color_block(g.colors[i], g.N, K) <= blk]
        verts = {v for i in upto for v in g.edges[i]}
        cols = {g.colors[i] for i in upto}
        for i, (u, v) in enumerate(g.edges):
            if i in chosen or color_block(g.colors[i], g.N, K) != blk:
                continue
            if u not in verts and v not in verts and g.colors[i] not in cols:
                return False
    return True


def uniform_colored_graph(N: int, K: int, c: int, T: int, seed: int) -> tuple[ColoredGraph, int]:
    """A K-uniform N-colored multigraph on cN vertices; returns (graph, S).

    Each block is the union of T/K random perfect matchings, so every vertex meets
    exactly T/K edges per block; the block's edges are dealt to its N/K colors so
    every color gets exactly S = cT/2 edges.
    """
    V = c * N
    if N % K or T % K or V % 2 or (c * T) % 2:
        raise ValueError("need K | N, K | T, cN even and cT even")
    rng = np.random.default_rng(seed)
    S = c * T // 2
    per = N // K
    edges, colors = [], []
    for blk in range(K):
        blk_edges = []
        for _ in range(T // K):
            perm = rng.permutation(V)
            blk_edges += [(int(perm[2 * i]), int(perm[2 * i + 1])) for i in range(V // 2)]
        order = rng.permutation(len(blk_edges))
        for pos, idx in enumerate(order):
            edges.append(blk_edges[idx])
            colors.append(blk * per + pos % per + 1)
    return ColoredGraph(V, tuple(edges), tuple(colors), N), S


def matching_lower_bound(N: int, c: float, K: int) -> float:
    """(cN/4)(1 - exp(-4/c + 8/(c^2 K)))."""
    return c * N / 4 * (1 - math.exp(-4 / c + 8 / (c * c * K)))


# ---------------------------------------------------------------------------
# Random sifting


@dataclass
class SiftStats:
    sigma: float
    expected: float  # sigma * |Q|
    mean: float
    var: float
    stderr: float
    singleton: float  # mean over Q of per-element survival frequency
    singleton_se: float
    tuples: list[dict] = field(default_factory=list)


def random_sift_sim(x_small: int, trials: int, seed: int, primes=None, Q=None,
                    tuples=None) -> SiftStats:
    """Draw a_s uniformly mod s for each s in the family; count survivors in Q.

    Defaults: the primes <= x_small and Q = (0, x_small]. ``tuples`` lists
    t-tuples (t <= 3) whose joint survival is compared with the exact product
    prod(1 - nu_s/s) and with sigma^t.
    """
    if x_small > 10**4:
        raise ValueError("x_small must be <= 10^4")
    S = list(primes) if primes is not None else list(primes_upto(x_small))
    Q = np.asarray(list(Q) if Q is not None else range(1, x_small + 1), dtype=np.int64)
    rng = np.random.default_rng(seed)
    sigma = math.prod(1 - 1 / s for s in S)
    alive = np.ones((trials, len(Q)), dtype=bool)
    for s in S:
        a = rng.integers(0, s, size=trials)
        alive &= (Q[None, :] % s) != a[:, None]
    counts = alive.sum(axis=1)
    per_el = alive.mean(axis=0)
    out = SiftStats(sigma, sigma * len(Q), float(counts.mean()), float(counts.var(ddof=1)) if trials > 1 else 0.0,
                    float(counts.std(ddof=1) / math.sqrt(trials)) if trials > 1 else 0.0,
                    float(per_el.mean()), float(alive.mean(axis=1).std(ddof=1) / math.sqrt(trials)) if trials > 1 else 0.0)
    index = {int(q): i for i, q in enumerate(Q)}
    for tup in tuples or ():
        if len(tup) > 3 or len(set(tup)) != len(tup):
            raise ValueError("tuples must have at most 3 distinct elements")
        cols = [index[int(n)] for n in tup]
        joint = alive[:, cols].all(axis=1)
        freq = float(joint.mean())
        exact = math.prod(1 - len({n % s for n in tup}) / s for s in S)
        out.tuples.append({"tuple": list(tup), "empirical": freq,
                           "stderr": math.sqrt(max(freq * (1 - freq), 1e-300) / trials),
                           "exact": exact, "sigma_t": sigma ** len(tup)})
    return out
