"""Random-linear-network-coding channel acting on generating multisets.

The transmitter sends a generating multiset of a multispace; the channel
multiplies the tuple of sent vectors by a random matrix T over GF(q).
Modes:

  full-rank       square T of full rank: the multispace is preserved
  deletion        full-rank mix, then s of the mixed vectors are dropped:
                  the received multispace sits at distance exactly s below
  rank-deficient  square T of rank m - s: distance at most 2s, with the
                  underlying space contained in the sent one and the rank
                  preserved
  compound        deletion followed by rank deficiency; distances are
                  reported without assertion (no proven compound bound)

Every trial draws its own PRNG substream (PCG64 seeded through
SeedSequence(seed).spawn), so results are independent of scheduling and
reproducible from (config, seed) alone.
"""

import csv
import json
from dataclasses import dataclass

import numpy as np

from .errors import BoundViolation, ConfigInvalid, ShapeMismatch
from .fields import FieldCtx
from .lattice import Multispace, VectorMultiset, distance, mspan
from .linalg import FqMatrix, matmul_arrays, rref_array

MODES = ("full-rank", "deletion", "rank-deficient", "compound")


@dataclass(frozen=True)
class ChannelConfig:
    mode: str
    trials: int
    s: int = 0
    seed: int = 0
    random_generator: bool = False

    def validate(self):
        if self.mode not in MODES:
            raise ConfigInvalid(f"unknown mode {self.mode!r}; pick one of {MODES}")
        if self.trials < 0:
            raise ConfigInvalid("trials must be nonnegative")
        if self.s < 0:
            raise ConfigInvalid("error weight s must be nonnegative")
        if self.mode == "full-rank" and self.s:
            raise ConfigInvalid("full-rank mode takes no error weight")

    def check_rank(self, m: int):
        need = {"full-rank": 0, "deletion": self.s, "rank-deficient": self.s, "compound": 2 * self.s}[self.mode]
        if m < need:
            raise ConfigInvalid(f"mode {self.mode} with s={self.s} needs rank >= {need}, got {m}")


@dataclass
class TrialRecord:
    index: int
    sent: Multispace
    received: Multispace
    t_rank: int
    distance: int
    bound: int | None
    bound_satisfied: bool


@dataclass
class ChannelSummary:
    trials: int
    violations: int
    max_distance: int
    histogram: dict[int, int]

    def to_dict(self) -> dict:
        return {
            "trials": self.trials,
            "violations": self.violations,
            "max_distance": self.max_distance,
            "histogram": {str(k): v for k, v in sorted(self.histogram.items())},
        }


@dataclass
class ChannelRun:
    records: list[TrialRecord]
    summary: ChannelSummary


# ---------------------------------------------------------------------------
# Transforms and random matrices
# ---------------------------------------------------------------------------

def apply_transform(b: VectorMultiset, T: FqMatrix) -> VectorMultiset:
    """b'_j = sum_i T[i][j] b_i; output has one vector per column of T."""
    b.ctx.check_same(T.ctx)
    if T.rows != len(b):
        raise ShapeMismatch(f"T has {T.rows} rows but the multiset has {len(b)} vectors")
    out = matmul_arrays(b.ctx, T.array.T, b.matrix)
    return VectorMultiset(b.ctx, b.n, out)


def random_matrix(ctx: FieldCtx, rows: int, cols: int, rng) -> FqMatrix:
    return FqMatrix(ctx, rng.integers(0, ctx.q, size=(rows, cols), dtype=np.int64))


def random_full_rank(ctx: FieldCtx, m: int, rng, max_tries: int = 1000) -> FqMatrix:
    """Uniform invertible m x m matrix by rejection (success rate > 0.288)."""
    for _ in range(max_tries):
        cand = random_matrix(ctx, m, m, rng)
        if rref_array(ctx, cand.array)[1] == m:
            return cand
    raise RuntimeError("rejection sampling failed to find a full-rank matrix")


def random_rank(ctx: FieldCtx, rows: int, cols: int, r: int, rng, max_tries: int = 1000) -> FqMatrix:
    """Random rows x cols matrix of exact rank r, as a full-rank A (rows x r) times B (r x cols)."""
    if r > min(rows, cols) or r < 0:
        raise ConfigInvalid(f"rank {r} impossible for a {rows}x{cols} matrix")
    if r == 0:
        return FqMatrix.zeros(ctx, rows, cols)
    a = None
    for _ in range(max_tries):
        cand = random_matrix(ctx, rows, r, rng)
        if rref_array(ctx, cand.array)[1] == r:
            a = cand
            break
    b = None
    for _ in range(max_tries):
        cand = random_matrix(ctx, r, cols, rng)
        if rref_array(ctx, cand.array)[1] == r:
            b = cand
            break
    if a is None or b is None:
        raise RuntimeError("rejection sampling failed to find full-rank factors")
    out = a @ b
    assert rref_array(ctx, out.array)[1] == r  # by construction, but verify
    return out


# ---------------------------------------------------------------------------
# Trials
# ---------------------------------------------------------------------------

def _effective_transform(ctx: FieldCtx, m: int, cfg: ChannelConfig, rng) -> FqMatrix:
    """Draw the channel matrix for one trial."""
    s = cfg.s
    if cfg.mode == "full-rank":
        return random_full_rank(ctx, m, rng)
    if cfg.mode == "deletion":
        mix = random_full_rank(ctx, m, rng)
        keep = np.sort(rng.permutation(m)[: m - s])
        return FqMatrix(ctx, mix.array[:, keep])
    if cfg.mode == "rank-deficient":
        return random_rank(ctx, m, m, m - s, rng)
    # compound: delete s, then a rank-deficient square stage on the survivors
    mix = random_full_rank(ctx, m, rng)
    keep = np.sort(rng.permutation(m)[: m - s])
    stage1 = FqMatrix(ctx, mix.array[:, keep])
    stage2 = random_rank(ctx, m - s, m - s, m - 2 * s, rng)
    return stage1 @ stage2


def _bound_for(cfg: ChannelConfig) -> int | None:
    return {"full-rank": 0, "deletion": cfg.s, "rank-deficient": 2 * cfg.s, "compound": None}[cfg.mode]


def _trial_ok(cfg: ChannelConfig, sent: Multispace, received: Multispace, d: int) -> bool:
    if cfg.mode == "full-rank":
        return received == sent
    if cfg.mode == "deletion":
        return d == cfg.s  # distance is exactly s, not merely bounded
    if cfg.mode == "rank-deficient":
        return (
            d <= 2 * cfg.s
            and received.rank == sent.rank
            and received.underlying <= sent.underlying
        )
    return True  # compound: observational only


def run_trials(target, cfg: ChannelConfig) -> ChannelRun:
    """Push generating multisets of one multispace through the channel.

    target is either the Multispace (its canonical basis-plus-zeros
    generator is used) or an explicit generating VectorMultiset.
    """
    cfg.validate()
    if isinstance(target, VectorMultiset):
        gen0 = target
        sent = mspan(gen0)
    elif isinstance(target, Multispace):
        sent = target
        gen0 = target.generating_multiset()
    else:
        raise TypeError("target must be a Multispace or VectorMultiset")
    ctx = sent.ctx
    m = len(gen0)
    cfg.check_rank(m)
    records = []
    violations = 0
    hist: dict[int, int] = {}
    max_d = 0
    for idx, ss in enumerate(np.random.SeedSequence(cfg.seed).spawn(cfg.trials)):
        rng = np.random.default_rng(ss)
        gen = gen0
        if cfg.random_generator:
            gen = apply_transform(gen0, random_full_rank(ctx, m, rng))
        t_eff = _effective_transform(ctx, m, cfg, rng)
        received = mspan(apply_transform(gen, t_eff))
        d = distance(sent, received)
        ok = _trial_ok(cfg, sent, received, d)
        records.append(
            TrialRecord(
                index=idx,
                sent=sent,
                received=received,
                t_rank=rref_array(ctx, t_eff.array)[1],
                distance=d,
                bound=_bound_for(cfg),
                bound_satisfied=ok,
            )
        )
        violations += not ok
        hist[d] = hist.get(d, 0) + 1
        max_d = max(max_d, d)
    return ChannelRun(records, ChannelSummary(cfg.trials, violations, max_d, hist))


@dataclass
class EndToEndSummary:
    trials: int
    violations: int
    max_distance: int
    histogram: dict[int, int]
    block_errors: int
    block_error_rate: float

    def to_dict(self) -> dict:
        return {
            "trials": self.trials,
            "violations": self.violations,
            "max_distance": self.max_distance,
            "histogram": {str(k): v for k, v in sorted(self.histogram.items())},
            "block_errors": self.block_errors,
            "block_error_rate": self.block_error_rate,
        }


def end_to_end(code, cfg: ChannelConfig) -> EndToEndSummary:
    """Sample codewords, run the channel, decode, and count block errors.

    A violation is recorded when a trial breaks its channel bound, or
    when decoding fails although the bound guarantees unique decoding
    (bound < min_distance / 2).
    """
    from .codes import decode

    cfg.validate()
    if len(code) == 0:
        raise ConfigInvalid("end-to-end run needs a nonempty code")
    ctx = code.ctx
    bound = _bound_for(cfg)
    violations = 0
    block_errors = 0
    hist: dict[int, int] = {}
    max_d = 0
    for ss in np.random.SeedSequence(cfg.seed).spawn(cfg.trials):
        rng = np.random.default_rng(ss)
        w = code.codewords[int(rng.integers(len(code)))]
        m = w.rank
        cfg.check_rank(m)
        gen = w.generating_multiset()
        if cfg.random_generator:
            gen = apply_transform(gen, random_full_rank(ctx, m, rng))
        t_eff = _effective_transform(ctx, m, cfg, rng)
        received = mspan(apply_transform(gen, t_eff))
        d = distance(w, received)
        hist[d] = hist.get(d, 0) + 1
        max_d = max(max_d, d)
        if not _trial_ok(cfg, w, received, d):
            violations += 1
        decoded, _ = decode(code, received)
        if decoded != w:
            block_errors += 1
            if bound is not None and bound < code.min_distance / 2:
                violations += 1  # unique decoding was guaranteed
    rate = block_errors / cfg.trials if cfg.trials else 0.0
    return EndToEndSummary(cfg.trials, violations, max_d, hist, block_errors, rate)


# ---------------------------------------------------------------------------
# Serialization of trial logs
# ---------------------------------------------------------------------------

def write_trial_csv(records: list[TrialRecord], fileobj):
    """One CSV row per trial; multispaces embedded as JSON strings."""
    writer = csv.writer(fileobj)
    writer.writerow(
        ["index", "sent", "received", "t_rank", "distance", "bound", "bound_satisfied"]
    )
    for r in records:
        writer.writerow(
            [
                r.index,
                json.dumps(r.sent.to_dict()),
                json.dumps(r.received.to_dict()),
                r.t_rank,
                r.distance,
                "" if r.bound is None else r.bound,
                int(r.bound_satisfied),
            ]
        )


def raise_on_violation(summary) -> None:
    """Turn a nonzero violation count into a BoundViolation error."""
    if summary.violations:
        raise BoundViolation(f"{summary.violations} trials violated a proven bound")
