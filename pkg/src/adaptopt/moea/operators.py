"""Variation operators per sub-encoding kind.

Binary vectors use uniform crossover and per-gene bit flips, real vectors use
simulated binary crossover and polynomial mutation (clamped to bounds), and
permutations use order crossover and swap mutation. The crossover decision is
made once per parent pair and shared by all sub-encodings of the genotype.
All randomness comes from the single generator passed in.
"""

from __future__ import annotations

from random import Random

from ..problem import EncodingKind, Genotype, MultiEncodingSpec, SubEncodingSpec

SBX_DISTRIBUTION_INDEX = 15.0
PM_DISTRIBUTION_INDEX = 20.0


def random_genotype(spec: MultiEncodingSpec, rng: Random) -> Genotype:
    subs = []
    for sub in spec.subs:
        if sub.kind is EncodingKind.BINARY:
            subs.append(tuple(rng.randrange(2) for _ in range(sub.length)))
        elif sub.kind is EncodingKind.REAL:
            subs.append(tuple(rng.uniform(low, high) for low, high in sub.bounds))
        else:
            perm = list(range(sub.length))
            rng.shuffle(perm)
            subs.append(tuple(perm))
    return tuple(subs)


def crossover(
    spec: MultiEncodingSpec, a: Genotype, b: Genotype, rate: float, rng: Random
) -> tuple[Genotype, Genotype]:
    """Recombine two parents; with probability ``1 - rate`` they pass through."""
    if rng.random() >= rate:
        return a, b
    out_a, out_b = [], []
    for sub, va, vb in zip(spec.subs, a, b):
        if sub.kind is EncodingKind.BINARY:
            ca, cb = _uniform_crossover(va, vb, rng)
        elif sub.kind is EncodingKind.REAL:
            ca, cb = _sbx_crossover(va, vb, sub, rng)
        else:
            ca, cb = _order_crossover(va, vb, rng), _order_crossover(vb, va, rng)
        out_a.append(ca)
        out_b.append(cb)
    return tuple(out_a), tuple(out_b)


def mutate(
    spec: MultiEncodingSpec, genotype: Genotype, rate_per_gene: float | None, rng: Random
) -> Genotype:
    """Mutate each sub-value; ``None`` selects the 1/length default per sub."""
    out = []
    for sub, value in zip(spec.subs, genotype):
        rate = rate_per_gene if rate_per_gene is not None else 1.0 / sub.length
        if sub.kind is EncodingKind.BINARY:
            out.append(tuple(1 - g if rng.random() < rate else g for g in value))
        elif sub.kind is EncodingKind.REAL:
            out.append(_polynomial_mutation(value, sub, rate, rng))
        else:
            out.append(_swap_mutation(value, rate, rng))
    return tuple(out)


def _uniform_crossover(a: tuple, b: tuple, rng: Random) -> tuple[tuple, tuple]:
    ca, cb = [], []
    for x, y in zip(a, b):
        if rng.random() < 0.5:
            ca.append(x)
            cb.append(y)
        else:
            ca.append(y)
            cb.append(x)
    return tuple(ca), tuple(cb)


def _sbx_crossover(
    a: tuple, b: tuple, sub: SubEncodingSpec, rng: Random
) -> tuple[tuple, tuple]:
    eta = SBX_DISTRIBUTION_INDEX
    ca, cb = [], []
    for x, y, (low, high) in zip(a, b, sub.bounds):
        if rng.random() >= 0.5 or x == y:
            ca.append(x)
            cb.append(y)
            continue
        u = rng.random()
        if u <= 0.5:
            beta = (2.0 * u) ** (1.0 / (eta + 1.0))
        else:
            beta = (1.0 / (2.0 * (1.0 - u))) ** (1.0 / (eta + 1.0))
        c1 = 0.5 * ((1.0 + beta) * x + (1.0 - beta) * y)
        c2 = 0.5 * ((1.0 - beta) * x + (1.0 + beta) * y)
        ca.append(min(max(c1, low), high))
        cb.append(min(max(c2, low), high))
    return tuple(ca), tuple(cb)


def _polynomial_mutation(
    value: tuple, sub: SubEncodingSpec, rate: float, rng: Random
) -> tuple:
    eta = PM_DISTRIBUTION_INDEX
    out = []
    for x, (low, high) in zip(value, sub.bounds):
        if rng.random() >= rate:
            out.append(x)
            continue
        span = high - low
        u = rng.random()
        if u < 0.5:
            rel = (x - low) / span
            delta = (2.0 * u + (1.0 - 2.0 * u) * (1.0 - rel) ** (eta + 1.0)) ** (
                1.0 / (eta + 1.0)
            ) - 1.0
        else:
            rel = (high - x) / span
            delta = 1.0 - (
                2.0 * (1.0 - u) + 2.0 * (u - 0.5) * (1.0 - rel) ** (eta + 1.0)
            ) ** (1.0 / (eta + 1.0))
        out.append(min(max(x + delta * span, low), high))
    return tuple(out)


def _order_crossover(a: tuple, b: tuple, rng: Random) -> tuple:
    """Classic OX: keep a slice of the first parent, fill from the second."""
    k = len(a)
    if k == 1:
        return a
    i = rng.randrange(k)
    j = rng.randrange(k)
    if i > j:
        i, j = j, i
    kept = set(a[i : j + 1])
    filler = [g for g in b if g not in kept]
    child = list(a)
    pos = 0
    for idx in range(k):
        if idx < i or idx > j:
            child[idx] = filler[pos]
            pos += 1
    return tuple(child)


def _swap_mutation(value: tuple, rate: float, rng: Random) -> tuple:
    k = len(value)
    if k < 2:
        return value
    out = list(value)
    for i in range(k):
        if rng.random() < rate:
            j = rng.randrange(k)
            out[i], out[j] = out[j], out[i]
    return tuple(out)
