"""Seeded instance generation.

Reproducibility contract: instances are a pure function of
(distribution, n, p_max, seed, instance index). The only randomness source
is the Mersenne Twister behind random.Random, consumed exclusively through
getrandbits, and every sampler on top of it is spelled out here — so a
corpus regenerates byte-identically on any platform or Python version.

Per-instance seeds come from the SplitMix64 output function: instance i of a
run seeded with s uses mix64(s + (i+1) * 0x9E3779B97F4A7C15), all mod 2^64.

Samplers (X is the raw draw; processing times are max(1, X)):
  uniform       X ~ {1..p_max}, rejection sampling on the minimal bit width
  geometric     X = floor(ln U / ln(1-p)), p = 2/(p_max+2)   (failure count)
  negbinomial   X = sum of r=5 geometric draws, p = r/(r + p_max/2)
  poisson       lambda = p_max/2; product-of-uniforms for lambda < 10,
                transformed rejection (PTRS) otherwise
"""

from __future__ import annotations

import hashlib
import json
import math
import random
from dataclasses import asdict, dataclass
from pathlib import Path

from .core import Instance, format_instance

DISTRIBUTIONS = ("uniform", "geometric", "negbinomial", "poisson")

_MASK64 = (1 << 64) - 1
_GOLDEN = 0x9E3779B97F4A7C15


def _mix64(z: int) -> int:
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9 & _MASK64
    z = (z ^ (z >> 27)) * 0x94D049BB133111EB & _MASK64
    return z ^ (z >> 31)


def derive_seed(seed: int, index: int) -> int:
    """SplitMix64 output stream: element `index` of the stream seeded at `seed`."""
    return _mix64((seed + (index + 1) * _GOLDEN) & _MASK64)


@dataclass(frozen=True)
class GenSpec:
    """What to generate: distribution, size, scale, seed, and how many."""

    dist: str
    n: int
    p_max: int
    seed: int = 0
    count: int = 1

    def __post_init__(self):
        if self.dist not in DISTRIBUTIONS + ("worstcase", "demo18"):
            raise ValueError(f"unknown distribution: {self.dist!r}")
        if self.n < 1 or self.p_max < 1:
            raise ValueError(f"need n >= 1 and p_max >= 1, got n={self.n}, p_max={self.p_max}")
        if self.count < 1:
            raise ValueError(f"count must be >= 1, got {self.count}")


def _unit_open(rng: random.Random) -> float:
    # uniform on (0, 1), never exactly 0 or 1
    return (rng.getrandbits(53) + 0.5) / (1 << 53)


def _uniform_int(rng: random.Random, lo: int, hi: int) -> int:
    """Uniform integer in [lo, hi] by rejection on the minimal bit width."""
    span = hi - lo + 1
    if span == 1:
        return lo
    bits = (span - 1).bit_length()
    while True:
        v = rng.getrandbits(bits)
        if v < span:
            return lo + v


def _geometric(rng: random.Random, p: float) -> int:
    """Failures before the first success, by CDF inversion."""
    return int(math.log(_unit_open(rng)) / math.log1p(-p))


def _negbinomial(rng: random.Random, r: int, p: float) -> int:
    return sum(_geometric(rng, p) for _ in range(r))


def _poisson_small(rng: random.Random, lam: float) -> int:
    limit = math.exp(-lam)
    k = 0
    prod = _unit_open(rng)
    while prod > limit:
        k += 1
        prod *= _unit_open(rng)
    return k


def _poisson_ptrs(rng: random.Random, lam: float) -> int:
    """Transformed rejection with squeeze, valid for lam >= 10."""
    b = 0.931 + 2.53 * math.sqrt(lam)
    a = -0.059 + 0.02483 * b
    inv_alpha = 1.1239 + 1.1328 / (b - 3.4)
    v_r = 0.9277 - 3.6224 / (b - 2.0)
    log_lam = math.log(lam)
    while True:
        u = _unit_open(rng) - 0.5
        v = _unit_open(rng)
        us = 0.5 - abs(u)
        k = math.floor((2.0 * a / us + b) * u + lam + 0.43)
        if us >= 0.07 and v <= v_r:
            return int(k)
        if k < 0 or (us < 0.013 and v > us):
            continue
        if (math.log(v) + math.log(inv_alpha) - math.log(a / (us * us) + b)
                <= k * log_lam - lam - math.lgamma(k + 1.0)):
            return int(k)


def _poisson(rng: random.Random, lam: float) -> int:
    if lam < 10.0:
        return _poisson_small(rng, lam)
    return _poisson_ptrs(rng, lam)


def _draw(rng: random.Random, dist: str, p_max: int) -> int:
    if dist == "uniform":
        return _uniform_int(rng, 1, p_max)
    if dist == "geometric":
        x = _geometric(rng, 2.0 / (p_max + 2.0))
    elif dist == "negbinomial":
        mu = p_max / 2.0
        x = _negbinomial(rng, 5, 5.0 / (5.0 + mu))
    elif dist == "poisson":
        x = _poisson(rng, p_max / 2.0)
    else:
        raise ValueError(f"unknown distribution: {dist!r}")
    return max(1, x)


def gen_instance(spec: GenSpec, index: int = 0) -> Instance:
    """Instance `index` of the run described by spec (pure function)."""
    if spec.dist == "worstcase":
        return gen_worstcase(spec.n)
    if spec.dist == "demo18":
        return demo_instance()
    rng = random.Random(derive_seed(spec.seed, index))
    p1, p2 = [], []
    for _ in range(spec.n):
        p1.append(_draw(rng, spec.dist, spec.p_max))
        p2.append(_draw(rng, spec.dist, spec.p_max))
    return Instance(tuple(p1), tuple(p2))


def gen_uniform(spec: GenSpec, index: int = 0) -> Instance:
    assert spec.dist == "uniform"
    return gen_instance(spec, index)


def gen_geometric(spec: GenSpec, index: int = 0) -> Instance:
    assert spec.dist == "geometric"
    return gen_instance(spec, index)


def gen_negbinomial(spec: GenSpec, index: int = 0) -> Instance:
    assert spec.dist == "negbinomial"
    return gen_instance(spec, index)


def gen_poisson(spec: GenSpec, index: int = 0) -> Instance:
    assert spec.dist == "poisson"
    return gen_instance(spec, index)


def gen_worstcase(n: int) -> Instance:
    """The 2n-job adversarial family that defeats every partial-sort shortcut.

    Jobs 1..n are (j, j+1), jobs n+1..2n are (2n-j+2, 2n-j+1): both halves
    sit exactly on the boundary of the prefix conditions, so a full sort of
    each half is genuinely necessary and the optimum is unique.
    """
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    p1 = [j for j in range(1, n + 1)] + [2 * n - j + 2 for j in range(n + 1, 2 * n + 1)]
    p2 = [j + 1 for j in range(1, n + 1)] + [2 * n - j + 1 for j in range(n + 1, 2 * n + 1)]
    return Instance(tuple(p1), tuple(p2))


def demo_instance() -> Instance:
    """Embedded 18-job demonstration instance with balanced machine loads
    (both machine sums are 121); its critical prefix and suffix each have
    size 2, leaving two 7-job blocks completely order-free."""
    return Instance(
        (1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 9, 8, 8, 8, 7, 7, 9, 10),
        (8, 9, 7, 8, 9, 7, 9, 10, 10, 9, 7, 7, 6, 5, 4, 3, 2, 1),
    )


def write_corpus(spec: GenSpec, out_dir) -> Path:
    """Write spec.count instance files plus a manifest with SHA-256 hashes.

    Returns the manifest path. File i is inst_<i>.txt, 4-digit zero padded.
    """
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    files = []
    for i in range(spec.count):
        inst = gen_instance(spec, i)
        text = format_instance(inst)
        name = f"inst_{i:04d}.txt"
        (out / name).write_text(text, encoding="ascii")
        files.append({"name": name, "sha256": hashlib.sha256(text.encode("ascii")).hexdigest()})
    manifest = {"spec": asdict(spec), "files": files}
    manifest_path = out / "manifest.json"
    manifest_path.write_text(json.dumps(manifest, indent=2) + "\n", encoding="ascii")
    return manifest_path
